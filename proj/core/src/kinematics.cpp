#include "elastiq/kinematics.hpp"

#include <cmath>

namespace elastiq {

namespace {

Mat3 strain_impl(const Mat3& grad, double quad_sign) {
  const Mat3 eta = minkowski3();
  Mat3 eps = Mat3::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      double v = 0.0;
      for (int k = 0; k < 3; ++k) {
        v += eta(i, k) * grad(k, j) + eta(j, k) * grad(k, i);
        for (int l = 0; l < 3; ++l)
          v += quad_sign * eta(k, l) * grad(k, i) * grad(l, j);
      }
      eps(i, j) = 0.5 * v;
      eps(j, i) = eps(i, j);
    }
  }
  return eps;
}

}  // namespace

StrainTensor strain_lagrangian(const Mat3& grad_a) {
  if (!grad_a.allFinite()) throw DomainError("strain_lagrangian: nonfinite gradient");
  return {strain_impl(grad_a, +1.0), Perspective::Lagrangian};
}

StrainTensor strain_eulerian(const Mat3& grad_x) {
  if (!grad_x.allFinite()) throw DomainError("strain_eulerian: nonfinite gradient");
  return {strain_impl(grad_x, -1.0), Perspective::Eulerian};
}

MetricTensor3 metric_from_displacement(const Mat3& grad_a) {
  const Mat3 eta = minkowski3();
  const Mat3 J = Mat3::Identity() + grad_a;
  if (std::abs(J.determinant()) < 1e-12)
    throw SingularJacobian("metric_from_displacement: |det J| below 1e-12");
  Mat3 g = J.transpose() * eta * J;
  g = 0.5 * (g + g.transpose());
  // g = eta + 2 eps is the defining identity; rounding is the only slack.
  const Mat3 check = eta + 2.0 * strain_lagrangian(grad_a).eps;
  if ((g - check).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff()))
    throw StructureViolation("metric_from_displacement: J^T eta J != eta + 2 eps");
  return {g};
}

MetricTensor3 inverse_metric_from_displacement(const Mat3& grad_x) {
  if (!grad_x.allFinite())
    throw DomainError("inverse_metric_from_displacement: nonfinite gradient");
  const Mat3 eta = minkowski3();
  Mat3 g = eta;
  for (int mu = 0; mu < 3; ++mu) {
    for (int nu = 0; nu < 3; ++nu) {
      double v = 0.0;
      for (int a = 0; a < 3; ++a) {
        v += -eta(nu, a) * grad_x(mu, a) - eta(mu, a) * grad_x(nu, a);
        for (int b = 0; b < 3; ++b)
          v += eta(a, b) * grad_x(mu, a) * grad_x(nu, b);
      }
      g(mu, nu) += v;
    }
  }
  return {0.5 * (g + Mat3(g.transpose()))};
}

double dilatation(const Mat3& grad_x) {
  if (!grad_x.allFinite()) throw DomainError("dilatation: nonfinite gradient");
  return grad_x.trace();
}

}  // namespace elastiq
