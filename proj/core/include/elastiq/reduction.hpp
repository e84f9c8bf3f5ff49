#ifndef ELASTIQ_REDUCTION_HPP
#define ELASTIQ_REDUCTION_HPP

#include <functional>
#include <map>
#include <vector>

#include "elastiq/fields.hpp"
#include "elastiq/kinematics.hpp"
#include "elastiq/spinor.hpp"
#include "elastiq/types.hpp"

namespace elastiq {

// ---- frame change ----

// Matrix (delta_ij - du^j/dx^i) mapping primed-derivative components:
// d/dx^i = sum_j M_ij d/dx'^j.
Mat3 coordinate_pullback(const Mat3& grad_x);

/// Gamma matrices in the primed (material) frame together with the inverse
/// metric their anticommutators represent: {g'^mu, g'^nu} = 2 I g^{mu nu}.
struct CurvedGammaSet {
  CMat2 gammas[3];
  Mat3 metric_inv;

  const CMat2& operator[](int mu) const { return gammas[mu]; }
};

// g'^mu = g^mu - sum_a (du^mu/dx^a) g^a; checks the anticommutator table
// against the kinematics inverse metric of the same gradient.
CurvedGammaSet curved_gammas(const GammaTriple& g, const Mat3& grad_x);

// Conjugated set gtilde^mu = S^-1 g'^mu S (same inverse metric).
CurvedGammaSet conjugate_gammas(const CurvedGammaSet& cg, const CMat2& S);

using SpinorFrameField = std::function<CMat2(const Point3&)>;

struct SpinFrame {
  CMat2 S;
  CMat2 Gamma[3];  // Gamma_mu = (d'_mu S^-1) S
};

// Spin connection of a frame field by central differences; derivatives are
// primed (material) derivatives obtained through the displacement gradient.
SpinFrame spin_connection(const SpinorFrameField& S_field,
                          const DisplacementField& u, const Point3& p, double h);

// Residual of d'γ~^mu + γ~^b Gamma'^mu_{b nu} - Gamma_nu γ~^mu + γ~^mu Gamma_nu
// for all (mu, nu); O(h^2) for displacement-derived frames.
std::vector<std::vector<CMat2>> auxiliary_identity_residual(
    const SpinorFrameField& S_field, const DisplacementField& u, const Point3& p,
    double h);

// gamma_perp = (g'^1 g'^2 - g^{12} I) / sqrt(.); anticommutes with g'^1, g'^2
// and squares to the identity.
CMat2 gamma_perp(const CurvedGammaSet& cg);

// ---- Kaluza-Klein blocks ----

/// Sign of the compact slot in the ansatz: Timelike means g~_33 = -Phi^2,
/// Spacelike means g~_33 = +Phi^2 (the form an elastic metric with signature
/// (-,+,+) actually admits).
enum class CompactSlot { Timelike, Spacelike };

struct KKDecomposition {
  Mat2 g2;      // 2D base metric (indices 1,2)
  Vec2 A;       // covariant vector potential A_alpha
  double Phi;   // scalar, > 0
  CompactSlot slot = CompactSlot::Timelike;
};

// g~_ab = g_ab -+ Phi^2 A_a A_b, g~_a3 = -+ Phi^2 A_a, g~_33 = -+ Phi^2.
Mat3 kk_compose(const KKDecomposition& kk);

// Timelike ansatz exactly as printed; SignatureError if g~_33 >= 0. Verifies
// the inverse blocks g~^{ab} = g^{ab}, g~^{a3} = -A^a, g~^{33} = -Phi^-2 + A.A
// by direct 3x3 inversion.
KKDecomposition kk_decompose(const MetricTensor3& g3);

// Spacelike variant: Phi = sqrt(+g~_33), A_a = +g~_a3 / Phi^2. This is the
// branch an elastic J^T eta J metric admits; inverse blocks g~^{a3} = -A^a and
// g~^{33} = +Phi^-2 + A.A are verified the same way.
KKDecomposition kk_decompose_spacelike(const MetricTensor3& g3);

struct SingleModeFields {
  Mat2 g2_inverse;  // g^{mu nu}, mu,nu = 1,2
  Vec2 A_upper;     // A^mu as printed (equals the g~^{mu 3} block; the
                    // ansatz-consistent potential is its negative)
};

// Explicit zero-mode formulas; ModeLeakage if the gradient has x3 content.
SingleModeFields single_mode_fields(const Mat3& u0_grad);

// ---- reduced field diagnostics ----

struct KKFields {
  std::function<Mat2(const Vec2&)> g2;
  std::function<Vec2(const Vec2&)> A;
  std::function<double(const Vec2&)> phi;
  CompactSlot slot = CompactSlot::Timelike;
};

struct ReducedFieldReport {
  Mat2 F;                 // F_ab = d_a A_b - d_b A_a
  Vec2 maxwell_residual;  // F^l_{a;l} + 3 Phi^-1 Phi^l F_{la}
  Mat2 einstein_residual; // G^{ab} - 8 pi (T_em + T_s)
  Mat2 T_em;
  Mat2 T_s;
  double ricci3_norm = 0.0;  // 3D Ricci of the recomposed metric field
};

ReducedFieldReport reduced_field_diagnostics(const KKFields& kk, const Vec2& p,
                                             double h);

// gamma~3 - (sum_a gamma~^a A_a + gamma_perp Phi^-1). Also checks the square
// of the decomposition against g^{33} from the gamma set's own metric.
CMat2 gamma3_decomposition_check(const CurvedGammaSet& cg,
                                 const KKDecomposition& kk);

// Max deviation of (sum_a gamma~^a A_a + gamma_perp Phi^-1)^2 from g^{33} I.
double gamma3_squared_residual(const CurvedGammaSet& cg, const KKDecomposition& kk);

// ---- mode-coupled Dirac system ----

using CMat2Field = std::function<CMat2(const Vec2&)>;
using CVec2Field = std::function<CVec2(const Vec2&)>;
using ComplexField = std::function<Complex(const Vec2&)>;

/// Fourier data of the reduced Dirac system, truncated to |k| <= Q. Index
/// k in [-Q, Q] maps to offset k + Q in each vector.
struct ReducedDiracModes {
  int Q = 0;
  std::vector<std::array<CMat2Field, 2>> gamma2;   // gamma''^mu_k, mu = 1,2
  std::vector<std::array<ComplexField, 2>> A;      // A_{mu,k}
  std::vector<std::array<CMat2Field, 3>> Gamma;    // Gamma_{mu,k}, mu = 1,2,3
  std::vector<ComplexField> phi_inv;               // Phi^-1_k
  std::vector<CVec2Field> psi;                     // Psi'_q

  static ReducedDiracModes empty(int Q);
};

// Residual of the m-th mode-coupling equation at a 2D point; spinor
// derivatives by central differences with step h.
CVec2 assemble_reduced_dirac(const ReducedDiracModes& modes, int m,
                             const Vec2& p, double h);

// ---- primed-frame Fourier components (compact direction only) ----

// u'_{m'} = sum_k u_{m'-k} (delta_{k,0} + i (m'-k) u_k.e3), second order.
std::map<int, CVec3> transform_mode_basis(
    const std::vector<std::pair<int, CVec3>>& modes);

}  // namespace elastiq

#endif
