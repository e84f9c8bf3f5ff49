#ifndef ELASTIQ_QUANTIZATION_HPP
#define ELASTIQ_QUANTIZATION_HPP

#include <string>
#include <vector>

#include "elastiq/types.hpp"

namespace elastiq {

using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat12 = Eigen::Matrix<double, 12, 12>;
using CMat12 = Eigen::Matrix<std::complex<double>, 12, 12>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

/// Per-wavevector blocks of the quadratic boson Hamiltonian H_q = Q+ A Q
/// with A = [[T,S],[S,T]] over the intermediate ladder vector
/// Q = (a_q, a_-q, a_q+, a_-q+) (three field components each).
struct ModeHamiltonian {
  double q2;
  int q3;
  LameParameters lam;
  Mat6 T;
  Mat6 S;

  Mat12 A() const;
};

struct SpectrumRow {
  double q2;
  int q3;
  double E_plus;
  double E_zero;
  double E_minus;
  bool stable = true;
};

/// Canonical diagonalization output. `transform` is the real symplectic
/// matrix V with Q = V B, B = (b_1..b_6, b_1+..b_6+); `energies` are the
/// mode energies |w_i| sorted ascending and `coefficients` the signed
/// diagonal entries of V^T A V (negative for negative-Krein branches).
struct BogoliubovResult {
  Vec6 energies;
  Vec6 coefficients;
  Mat12 transform;
  double symplectic_residual = 0.0;
};

struct CanonicalStructureReport {
  double symplectic_residual;
  double offdiagonal_leakage;
  double hamiltonian_reconstruction_residual;
};

// ---- construction ----

ModeHamiltonian assemble_mode_hamiltonian(const LameParameters& lam, double q2,
                                          int q3);

SpectrumRow closed_form_energies(const LameParameters& lam, double q2, int q3);

BogoliubovResult bogoliubov_diagonalize(const ModeHamiltonian& h);

CanonicalStructureReport verify_canonical_structure(const BogoliubovResult& r,
                                                    const ModeHamiltonian& h);

std::vector<SpectrumRow> dispersion_sweep(const LameParameters& lam,
                                          const std::vector<double>& q2_grid,
                                          const std::vector<int>& q3_list);

/// CSV with header q2,q3,E_minus,E_zero,E_plus,stable; one row per grid pair.
std::string dispersion_csv(const std::vector<SpectrumRow>& rows);

// ---- helper surfaces used by the structural checks and tests ----

// Canonical commutator matrix of the ladder basis: [[0,I],[-I,0]].
Mat12 ladder_commutator_matrix();

// Bosonic metric diag(I,-I); the dynamical matrix is K A.
Mat12 bosonic_metric();

// Coefficient matrix C of the Fourier-mode Hamiltonian as a quadratic form
// over the field vector X = (P_q, u_q, P_-q, u_-q), transcribed term by term
// from the symmetric q/-q expansion. Independent of the T/S assembly.
CMat12 mode_hamiltonian_field_coefficients(const LameParameters& lam, double q2,
                                           int q3);

// Fixed map X = W Q from intermediate ladder operators to field operators.
CMat12 field_from_ladder_map();

}  // namespace elastiq

#endif
