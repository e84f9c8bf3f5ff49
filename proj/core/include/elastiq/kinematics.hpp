#ifndef ELASTIQ_KINEMATICS_HPP
#define ELASTIQ_KINEMATICS_HPP

#include "elastiq/types.hpp"

namespace elastiq {

enum class Perspective { Lagrangian, Eulerian };

struct StrainTensor {
  Mat3 eps;
  Perspective perspective;
};

struct MetricTensor3 {
  Mat3 g;
};

// eps_ij = 1/2 (eta_ik du^k/da^j + eta_jk du^k/da^i + eta_kl du^k/da^i du^l/da^j)
StrainTensor strain_lagrangian(const Mat3& grad_a);

// Same with the quadratic term negated; derivatives are w.r.t. fixed-space x.
StrainTensor strain_eulerian(const Mat3& grad_x);

// g = J^T eta J with J = I + du/da. Also checks g == eta + 2 eps exactly.
MetricTensor3 metric_from_displacement(const Mat3& grad_a);

// g^{mu nu} written directly in terms of du/dx (contravariant components).
MetricTensor3 inverse_metric_from_displacement(const Mat3& grad_x);

// Dilatation sigma: the plain divergence sum_k du^k/dx^k, equal to the
// lowered-index combination -u_11 + u_22 + u_33.
double dilatation(const Mat3& grad_x);

}  // namespace elastiq

#endif
