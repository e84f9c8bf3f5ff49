#ifndef ELASTIQ_ELASTODYNAMICS_HPP
#define ELASTIQ_ELASTODYNAMICS_HPP

#include <utility>

#include "elastiq/fields.hpp"
#include "elastiq/kinematics.hpp"
#include "elastiq/types.hpp"

namespace elastiq {

/// Lowered-index gradient u_{mu nu} together with the momenta (P1,P2,P3).
struct CanonicalState {
  Mat3 grad;
  Vec3 momenta;
};

// L = (l+2m)(e11^2+e22^2+e33^2) + 2l(e22 e33 - e11 e22 - e11 e33)
//   + 4m(e23^2 - e12^2 - e13^2)
double lagrangian_density(const StrainTensor& eps, const LameParameters& lam);

// P1 = -2l(e11-e22-e33) - 4m e11,  P2 = 4m e12,  P3 = 4m e13, with the
// infinitesimal strain of the lowered-index gradient.
Vec3 canonical_momenta(const Mat3& grad_lowered, const LameParameters& lam);

double hamiltonian_density(const CanonicalState& state, const LameParameters& lam);

// residual^rho = (2l+2m) d sigma/dx_rho + 2m lap(u^rho),
// lap = -d1^2 + d2^2 + d3^2, d/dx_rho = eta^{rho nu} d_nu.
CVec3 field_equation_residual(const DisplacementField& u,
                              const LameParameters& lam, const Point3& p);

// (div of the field-equation residual, (2l+4m) lap(sigma)); the two agree
// identically for every field.
std::pair<Complex, Complex> dilatation_wave_identity(const DisplacementField& u,
                                                     const LameParameters& lam,
                                                     const Point3& p);

}  // namespace elastiq

#endif
