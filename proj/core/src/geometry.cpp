#include "elastiq/geometry.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "elastiq/kinematics.hpp"

namespace elastiq {

double Tensor4::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

namespace {

MatX eval_sym(const MetricField& m, const VecX& p) {
  MatX g = m.eval(p);
  return 0.5 * (g + g.transpose());
}

MatX invert_metric(const MatX& g) {
  Eigen::FullPivLU<MatX> lu(g);
  if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-12)
    throw SingularMetric("geometry: metric not invertible on stencil");
  return lu.inverse();
}

VecX shifted(const VecX& p, int axis, double delta) {
  VecX q = p;
  q[axis] += delta;
  return q;
}

// d g / d x^a by central differences
MatX d1(const MetricField& m, const VecX& p, int a) {
  return (eval_sym(m, shifted(p, a, m.h)) - eval_sym(m, shifted(p, a, -m.h))) /
         (2.0 * m.h);
}

// d^2 g / d x^a d x^b
MatX d2(const MetricField& m, const VecX& p, int a, int b) {
  if (a == b) {
    return (eval_sym(m, shifted(p, a, m.h)) - 2.0 * eval_sym(m, p) +
            eval_sym(m, shifted(p, a, -m.h))) /
           (m.h * m.h);
  }
  const MatX gpp = eval_sym(m, shifted(shifted(p, a, m.h), b, m.h));
  const MatX gpm = eval_sym(m, shifted(shifted(p, a, m.h), b, -m.h));
  const MatX gmp = eval_sym(m, shifted(shifted(p, a, -m.h), b, m.h));
  const MatX gmm = eval_sym(m, shifted(shifted(p, a, -m.h), b, -m.h));
  return (gpp - gpm - gmp + gmm) / (4.0 * m.h * m.h);
}

}  // namespace

std::vector<MatX> christoffel(const MetricField& m, const VecX& p) {
  const int n = m.dimension;
  const MatX ginv = invert_metric(eval_sym(m, p));
  std::vector<MatX> dg(n);
  for (int a = 0; a < n; ++a) dg[a] = d1(m, p, a);

  std::vector<MatX> gamma(n, MatX::Zero(n, n));  // gamma[rho](a,b)
  for (int rho = 0; rho < n; ++rho)
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        double v = 0.0;
        for (int l = 0; l < n; ++l)
          v += ginv(l, rho) * (dg[b](l, a) + dg[a](l, b) - dg[l](a, b));
        gamma[rho](a, b) = 0.5 * v;
        gamma[rho](b, a) = gamma[rho](a, b);
      }
  return gamma;
}

CurvatureReport riemann(const MetricField& m, const VecX& p) {
  const int n = m.dimension;
  const MatX g = eval_sym(m, p);
  const MatX ginv = invert_metric(g);
  const auto gamma = christoffel(m, p);

  // Lowered Christoffels Gamma_{rho,ab} = g_{rl} Gamma^l_{ab}
  std::vector<MatX> gamma_lo(n, MatX::Zero(n, n));
  for (int rho = 0; rho < n; ++rho)
    for (int l = 0; l < n; ++l) gamma_lo[rho] += g(rho, l) * gamma[l];

  std::vector<std::vector<MatX>> hess(n, std::vector<MatX>(n));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      hess[a][b] = d2(m, p, a, b);
      if (b != a) hess[b][a] = hess[a][b];
    }

  CurvatureReport rep{p, Tensor4(n), MatX::Zero(n, n), 0.0, MatX::Zero(n, n), 0.0};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
          double r = 0.5 * (hess[b][mu](a, nu) - hess[b][nu](a, mu) +
                            hess[a][nu](b, mu) - hess[a][mu](b, nu));
          for (int rho = 0; rho < n; ++rho)
            r += gamma[rho](b, mu) * gamma_lo[rho](a, nu) -
                 gamma[rho](a, mu) * gamma_lo[rho](b, nu);
          rep.riemann(a, b, mu, nu) = r;
        }
  rep.max_abs_riemann = rep.riemann.max_abs();

  // Ricci by contraction with g^{a mu}; scalar and Einstein follow.
  for (int b = 0; b < n; ++b)
    for (int nu = 0; nu < n; ++nu) {
      double v = 0.0;
      for (int a = 0; a < n; ++a)
        for (int mu = 0; mu < n; ++mu) v += ginv(a, mu) * rep.riemann(a, b, mu, nu);
      rep.ricci(b, nu) = v;
    }
  rep.scalar = (ginv * rep.ricci).trace();
  rep.einstein = rep.ricci - 0.5 * g * rep.scalar;
  return rep;
}

MetricField metric_field_of(const DisplacementField& u, double h) {
  return MetricField{
      3,
      [u](const VecX& p) -> MatX {
        return metric_from_displacement(u.real_gradient(Point3(Vec3(p)))).g;
      },
      h};
}

double compatibility_check(const DisplacementField& u,
                           const std::vector<Point3>& grid, double h) {
  const MetricField m = metric_field_of(u, h);
  double worst = 0.0;
  for (const auto& p : grid)
    worst = std::max(worst, riemann(m, p.x).max_abs_riemann);
  return worst;
}

std::string curvature_report_json(const CurvatureReport& rep) {
  nlohmann::json doc;
  doc["point"] = std::vector<double>(rep.point.data(),
                                     rep.point.data() + rep.point.size());
  auto to_rows = [](const MatX& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
      rows.push_back(row);
    }
    return rows;
  };
  doc["ricci"] = to_rows(rep.ricci);
  doc["scalar"] = rep.scalar;
  doc["einstein"] = to_rows(rep.einstein);
  doc["max_abs_riemann"] = rep.max_abs_riemann;
  return doc.dump();
}

}  // namespace elastiq
