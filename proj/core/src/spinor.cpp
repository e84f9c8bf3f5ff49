#include "elastiq/spinor.hpp"

#include <algorithm>
#include <cmath>

namespace elastiq {

GammaTriple GammaTriple::standard() {
  GammaTriple g;
  g.g1 << 0, 1, -1, 0;
  g.g2 << 0, 1, 1, 0;
  g.g3 << 1, 0, 0, -1;
  return g;
}

const CMat2& GammaTriple::operator[](int mu) const {
  switch (mu) {
    case 0: return g1;
    case 1: return g2;
    case 2: return g3;
  }
  throw DomainError("GammaTriple: index out of range");
}

double gamma_anticommutator_residual(const GammaTriple& g) {
  const Mat3 eta = minkowski3();
  double worst = 0.0;
  for (int mu = 0; mu < 3; ++mu)
    for (int nu = 0; nu < 3; ++nu) {
      const CMat2 anti = g[mu] * g[nu] + g[nu] * g[mu];
      const CMat2 want = 2.0 * eta(mu, nu) * CMat2::Identity();
      worst = std::max(worst, (anti - want).cwiseAbs().maxCoeff());
    }
  return worst;
}

CVec3 cartan_embed(const CartanSpinor& s) {
  return CVec3(s.xi0 * s.xi0 + s.xi1 * s.xi1, s.xi0 * s.xi0 - s.xi1 * s.xi1,
               -2.0 * s.xi0 * s.xi1);
}

CartanSpinor cartan_spinor_for(const Vec3& q) {
  if (q[0] < std::abs(q[1]))
    throw DomainError("cartan_spinor_for: requires q1 >= |q2|");
  const double sgn_q3 = q[2] < 0.0 ? -1.0 : 1.0;
  CartanSpinor s;
  s.xi0 = std::sqrt((q[0] + q[1]) / 2.0);
  s.xi1 = -sgn_q3 * std::sqrt((q[0] - q[1]) / 2.0);
  return s;
}

CartanSpinor spinor_from_momentum(const Vec3& q) {
  if (q[0] < std::abs(q[1]))
    throw DomainError("spinor_from_momentum: requires q1 >= |q2|");
  const double shell = -q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
  if (std::abs(shell) > 1e-10 * std::max(1.0, q.squaredNorm()))
    throw OffShell("spinor_from_momentum: mass-shell residual " +
                   std::to_string(shell));
  return cartan_spinor_for(q);
}

ExponentialSum::ExponentialSum(std::vector<Term> terms) {
  for (const auto& t : terms) {
    bool merged = false;
    for (auto& u : terms_) {
      if (std::abs(u.exponent - t.exponent) < 1e-14) {
        u.coefficient += t.coefficient;
        merged = true;
        break;
      }
    }
    if (!merged) terms_.push_back(t);
  }
}

Complex ExponentialSum::evaluate(Complex x) const {
  Complex v = 0.0;
  for (const auto& t : terms_) v += t.coefficient * std::exp(t.exponent * x);
  return v;
}

ExponentialSum semiderivative(const ExponentialSum& f) {
  std::vector<ExponentialSum::Term> out;
  out.reserve(f.terms().size());
  for (const auto& t : f.terms())
    out.push_back({t.coefficient * std::sqrt(t.exponent), t.exponent});
  return ExponentialSum(std::move(out));
}

ExponentialSum derivative(const ExponentialSum& f) {
  std::vector<ExponentialSum::Term> out;
  out.reserve(f.terms().size());
  for (const auto& t : f.terms())
    out.push_back({t.coefficient * t.exponent, t.exponent});
  return ExponentialSum(std::move(out));
}

CVec2 dirac_residual_3d(const GammaTriple& g, const Vec3& q) {
  const CartanSpinor s = cartan_spinor_for(q);
  CMat2 X = CMat2::Zero();
  for (int mu = 0; mu < 3; ++mu) X += Complex(0.0, q[mu]) * g[mu];
  return X * CVec2(s.xi0, s.xi1);
}

CVec2 reduced_dirac_residual_2d(double q2, int q3) {
  const GammaTriple g = GammaTriple::standard();
  const CMat2 gp1 = g.g3 * g.g1;
  const CMat2 gp2 = g.g3 * g.g2;

  // {g'^mu, g'^nu} = 2 I diag(1,-1), exactly.
  const Mat2 etap = minkowski2_prime();
  const CMat2 gp[2] = {gp1, gp2};
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu) {
      const CMat2 anti = gp[mu] * gp[nu] + gp[nu] * gp[mu];
      if ((anti - 2.0 * etap(mu, nu) * CMat2::Identity()).cwiseAbs().maxCoeff() !=
          0.0)
        throw StructureViolation("reduced_dirac_residual_2d: gamma' metric broken");
    }

  const double q1 = std::sqrt(q2 * q2 + static_cast<double>(q3) * q3);
  const CartanSpinor s = cartan_spinor_for(Vec3(q1, q2, static_cast<double>(q3)));
  const Complex I(0.0, 1.0);
  const CMat2 op = I * gp1 * (I * q1) + I * gp2 * (I * q2) -
                   static_cast<double>(q3) * CMat2::Identity();
  return op * CVec2(s.xi0, s.xi1);
}

CMat2 dirac_factorization_check(const GammaTriple& g, const Vec3& q) {
  CMat2 X = CMat2::Zero();
  for (int mu = 0; mu < 3; ++mu) X += Complex(0.0, q[mu]) * g[mu];
  const double shell = -q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
  return X * X + shell * CMat2::Identity();
}

}  // namespace elastiq
