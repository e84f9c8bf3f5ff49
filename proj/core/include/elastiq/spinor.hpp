#ifndef ELASTIQ_SPINOR_HPP
#define ELASTIQ_SPINOR_HPP

#include <vector>

#include "elastiq/types.hpp"

namespace elastiq {

/// The three 2x2 gamma matrices of the (-,+,+) Clifford algebra,
/// {g^mu, g^nu} = 2 I eta^{mu nu}.
struct GammaTriple {
  CMat2 g1, g2, g3;

  static GammaTriple standard();
  const CMat2& operator[](int mu) const;
};

/// Two-component Cartan spinor parameterizing an isotropic vector.
struct CartanSpinor {
  Complex xi0;
  Complex xi1;
};

// (xi0^2 + xi1^2, xi0^2 - xi1^2, -2 xi0 xi1); always isotropic.
CVec3 cartan_embed(const CartanSpinor& s);

// xi0 = sqrt((q1+q2)/2), xi1 = -sgn(q3) sqrt((q1-q2)/2); requires q1 >= |q2|.
// No mass-shell validation: usable off shell for residual probes.
CartanSpinor cartan_spinor_for(const Vec3& q);

// As above plus the mass-shell check -q1^2 + q2^2 + q3^2 = 0 (tol 1e-10).
CartanSpinor spinor_from_momentum(const Vec3& q);

/// Finite sum of exponential terms c e^{alpha x}; duplicate exponents merge.
class ExponentialSum {
 public:
  struct Term {
    Complex coefficient;
    Complex exponent;
  };

  ExponentialSum() = default;
  explicit ExponentialSum(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  Complex evaluate(Complex x) const;

 private:
  std::vector<Term> terms_;
};

// D^{1/2}: each term (c, alpha) -> (c sqrt(alpha), alpha), principal branch.
ExponentialSum semiderivative(const ExponentialSum& f);

// Exact first derivative, the square of the semiderivative.
ExponentialSum derivative(const ExponentialSum& f);

// X(q) xi with X = sum_mu (i q_mu) g^mu; zero on shell with the branch
// convention above, nonzero off shell.
CVec2 dirac_residual_3d(const GammaTriple& g, const Vec3& q);

// (sum_{mu=1,2} i g'^mu (i q_mu) - q3) xi with g'^mu = g^3 g^mu and
// q1 = +sqrt(q2^2+q3^2). Also enforces {g'^mu, g'^nu} = 2 I diag(1,-1).
CVec2 reduced_dirac_residual_2d(double q2, int q3);

// (sum i q_nu g^nu)(sum i q_mu g^mu) + (-q1^2+q2^2+q3^2) I; identically zero.
CMat2 dirac_factorization_check(const GammaTriple& g, const Vec3& q);

// Max anticommutator deviation from 2 I eta^{mu nu} over all pairs.
double gamma_anticommutator_residual(const GammaTriple& g);

}  // namespace elastiq

#endif
