#include "elastiq/elastodynamics.hpp"

#include <cmath>

namespace elastiq {

double lagrangian_density(const StrainTensor& eps, const LameParameters& lam) {
  const Mat3& e = eps.eps;
  return (lam.lambda + 2.0 * lam.mu) *
             (e(0, 0) * e(0, 0) + e(1, 1) * e(1, 1) + e(2, 2) * e(2, 2)) +
         2.0 * lam.lambda *
             (e(1, 1) * e(2, 2) - e(0, 0) * e(1, 1) - e(0, 0) * e(2, 2)) +
         4.0 * lam.mu * (e(1, 2) * e(1, 2) - e(0, 1) * e(0, 1) - e(0, 2) * e(0, 2));
}

Vec3 canonical_momenta(const Mat3& grad_lowered, const LameParameters& lam) {
  if (!grad_lowered.allFinite())
    throw DomainError("canonical_momenta: nonfinite gradient");
  const Mat3 e = 0.5 * (grad_lowered + grad_lowered.transpose());
  Vec3 p;
  p[0] = -2.0 * lam.lambda * (e(0, 0) - e(1, 1) - e(2, 2)) - 4.0 * lam.mu * e(0, 0);
  p[1] = 4.0 * lam.mu * e(0, 1);
  p[2] = 4.0 * lam.mu * e(0, 2);
  return p;
}

double hamiltonian_density(const CanonicalState& state, const LameParameters& lam) {
  const Mat3& u = state.grad;
  const double P1 = state.momenta[0], P2 = state.momenta[1], P3 = state.momenta[2];
  const double L = lam.lambda + 2.0 * lam.mu;
  const double u22 = u(1, 1), u33 = u(2, 2);
  return 3.0 * P1 * P1 / (4.0 * L) + (P2 * P2 + P3 * P3) / (4.0 * lam.mu) -
         lam.lambda * (u22 + u33) * P1 / L - P2 * u(0, 1) - P3 * u(0, 2) +
         lam.mu * std::pow(u(1, 2) + u(2, 1), 2) -
         lam.lambda * lam.lambda * std::pow(u22 + u33, 2) / L +
         2.0 * lam.lambda * u22 * u33 + L * (u22 * u22 + u33 * u33);
}

namespace {

// Per-mode residual amplitude of the field equations on a exp(i q.x).
CVec3 mode_residual(const Vec3& q, const CVec3& a, const LameParameters& lam) {
  const Mat3 eta = minkowski3();
  const Complex div_amp = Complex(0.0, 1.0) * (q[0] * a[0] + q[1] * a[1] + q[2] * a[2]);
  const double box = -q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
  CVec3 out;
  for (int rho = 0; rho < 3; ++rho) {
    Complex grad_sigma = 0.0;  // eta^{rho nu} (i q_nu) sigma
    for (int nu = 0; nu < 3; ++nu)
      grad_sigma += eta(rho, nu) * Complex(0.0, q[nu]) * div_amp;
    out[rho] = (2.0 * lam.lambda + 2.0 * lam.mu) * grad_sigma +
               2.0 * lam.mu * (-box) * a[rho];
  }
  return out;
}

}  // namespace

CVec3 field_equation_residual(const DisplacementField& u,
                              const LameParameters& lam, const Point3& p) {
  CVec3 out = CVec3::Zero();
  for (const auto& m : u.modes()) {
    const Complex phase = std::exp(Complex(0.0, m.q.dot(p.x)));
    out += mode_residual(m.q, m.amplitude, lam) * phase;
  }
  return out;
}

std::pair<Complex, Complex> dilatation_wave_identity(const DisplacementField& u,
                                                     const LameParameters& lam,
                                                     const Point3& p) {
  Complex lhs = 0.0, rhs = 0.0;
  for (const auto& m : u.modes()) {
    const Complex phase = std::exp(Complex(0.0, m.q.dot(p.x)));
    const CVec3 res = mode_residual(m.q, m.amplitude, lam);
    for (int rho = 0; rho < 3; ++rho)
      lhs += Complex(0.0, m.q[rho]) * res[rho] * phase;
    const Complex sigma_amp =
        Complex(0.0, 1.0) * (m.q[0] * m.amplitude[0] + m.q[1] * m.amplitude[1] +
                             m.q[2] * m.amplitude[2]);
    const double box = -m.q[0] * m.q[0] + m.q[1] * m.q[1] + m.q[2] * m.q[2];
    rhs += (2.0 * lam.lambda + 4.0 * lam.mu) * (-box) * sigma_amp * phase;
  }
  return {lhs, rhs};
}

}  // namespace elastiq
