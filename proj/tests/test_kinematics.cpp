#include <doctest.h>

#include <random>

#include "elastiq/kinematics.hpp"

using namespace elastiq;

namespace {

Mat3 gradient_with(int i, int j, double v) {
  Mat3 g = Mat3::Zero();
  g(i, j) = v;
  return g;
}

}  // namespace

TEST_CASE("zero gradient gives zero strain and the flat metric") {
  CHECK(strain_lagrangian(Mat3::Zero()).eps.norm() == 0.0);
  CHECK(strain_eulerian(Mat3::Zero()).eps.norm() == 0.0);
  CHECK((metric_from_displacement(Mat3::Zero()).g - minkowski3()).norm() == 0.0);
  CHECK((inverse_metric_from_displacement(Mat3::Zero()).g - minkowski3()).norm() ==
        0.0);
}

TEST_CASE("uniform stretch strain values") {
  // du^1/da^1 = 0.1: eps_11 = (-0.1 - 0.1 - 0.01)/2 = -0.105
  const Mat3 eL = strain_lagrangian(gradient_with(0, 0, 0.1)).eps;
  CHECK(eL(0, 0) == doctest::Approx(-0.105).epsilon(1e-14));
  // Eulerian flips the quadratic term: (-0.2 + 0.01)/2 = -0.095
  const Mat3 eE = strain_eulerian(gradient_with(0, 0, 0.1)).eps;
  CHECK(eE(0, 0) == doctest::Approx(-0.095).epsilon(1e-14));
}

TEST_CASE("pure shear strain values") {
  // du^2/da^3 = s: eps_23 = s/2, eps_33 = s^2/2
  const double s = 0.3;
  const Mat3 e = strain_lagrangian(gradient_with(1, 2, s)).eps;
  CHECK(e(1, 2) == doctest::Approx(s / 2).epsilon(1e-14));
  CHECK(e(2, 2) == doctest::Approx(s * s / 2).epsilon(1e-14));
  CHECK(e(1, 1) == 0.0);
}

TEST_CASE("metric of a uniform stretch") {
  const Mat3 g = metric_from_displacement(gradient_with(0, 0, 0.1)).g;
  CHECK(g(0, 0) == doctest::Approx(-1.21).epsilon(1e-14));
  CHECK(g(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g(2, 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(g(0, 1)) < 1e-15);
}

TEST_CASE("inverse metric of the matched deformation") {
  // u^1 = eps a^1 in material form becomes du^1/dx^1 = eps/(1+eps)
  const double eps = 0.1;
  const Mat3 gi =
      inverse_metric_from_displacement(gradient_with(0, 0, eps / (1 + eps))).g;
  CHECK(gi(0, 0) == doctest::Approx(-100.0 / 121.0).epsilon(1e-13));
  // exact inverse of the metric entry -1.21
  CHECK(gi(0, 0) * (-1.21) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("metric times inverse metric is the identity for random deformations") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(-0.05, 0.05);
  for (int s = 0; s < 100; ++s) {
    Mat3 G;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) G(i, j) = uni(rng);
    const Mat3 g = metric_from_displacement(G).g;
    const Mat3 J = Mat3::Identity() + G;
    const Mat3 grad_x = Mat3::Identity() - J.inverse();
    const Mat3 gi = inverse_metric_from_displacement(grad_x).g;
    CHECK((g * gi - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("Jacobian identity holds for random gradients") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> uni(-0.05, 0.05);
  for (int s = 0; s < 100; ++s) {
    Mat3 G;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) G(i, j) = uni(rng);
    const Mat3 g = metric_from_displacement(G).g;
    const Mat3 check = minkowski3() + 2.0 * strain_lagrangian(G).eps;
    CHECK((g - check).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("Lagrangian and Eulerian strains agree at first order") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Mat3 G;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) G(i, j) = uni(rng);
  double prev_ratio = 0.0;
  for (double t : {1e-2, 5e-3, 2.5e-3}) {
    const double diff =
        (strain_lagrangian(t * G).eps - strain_eulerian(t * G).eps).norm();
    const double ratio = diff / (t * t);
    if (prev_ratio != 0.0)
      CHECK(ratio == doctest::Approx(prev_ratio).epsilon(0.05));
    prev_ratio = ratio;
  }
}

TEST_CASE("lowered-index strain transcription agrees with the eta form") {
  // eps_ij = (du_i/da^j + du_j/da^i + du_l/da^i du^l/da^j)/2 with u_l = eta u^k
  // is the same tensor written with pre-contracted indices.
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> uni(-0.3, 0.3);
  const Mat3 eta = minkowski3();
  for (int s = 0; s < 50; ++s) {
    Mat3 G;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) G(i, j) = uni(rng);
    const Mat3 lowered = eta * G;  // du_i/da^j
    Mat3 eps;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double quad = 0.0;
        for (int l = 0; l < 3; ++l) quad += lowered(l, i) * G(l, j);
        eps(i, j) = 0.5 * (lowered(i, j) + lowered(j, i) + quad);
      }
    CHECK((eps - strain_lagrangian(G).eps).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("dilatation is the plain divergence") {
  CHECK(dilatation(Mat3::Zero()) == 0.0);
  CHECK(dilatation(gradient_with(0, 0, 0.3)) == doctest::Approx(0.3));
  Mat3 g = Mat3::Zero();
  g(1, 1) = 0.1;
  g(2, 2) = 0.2;
  CHECK(dilatation(g) == doctest::Approx(0.3));
}

TEST_CASE("singular Jacobian is rejected") {
  Mat3 G = Mat3::Zero();
  G(0, 0) = -1.0;  // J = diag(0,1,1)
  CHECK_THROWS_AS(metric_from_displacement(G), SingularJacobian);
}
