#ifndef ELASTIQ_GEOMETRY_HPP
#define ELASTIQ_GEOMETRY_HPP

#include <functional>
#include <vector>

#include "elastiq/fields.hpp"
#include "elastiq/types.hpp"

namespace elastiq {

/// Dense rank-4 array of fixed dimension n (n = 2 or 3 here).
class Tensor4 {
 public:
  explicit Tensor4(int n) : n_(n), v_(static_cast<size_t>(n) * n * n * n, 0.0) {}

  double& operator()(int a, int b, int c, int d) {
    return v_[((static_cast<size_t>(a) * n_ + b) * n_ + c) * n_ + d];
  }
  double operator()(int a, int b, int c, int d) const {
    return v_[((static_cast<size_t>(a) * n_ + b) * n_ + c) * n_ + d];
  }
  int dim() const { return n_; }
  double max_abs() const;

 private:
  int n_;
  std::vector<double> v_;
};

/// A metric as a black-box field over n coordinates, differentiated by
/// second-order central differences with step h.
struct MetricField {
  int dimension;
  std::function<MatX(const VecX&)> eval;
  double h = 1e-3;
};

struct CurvatureReport {
  VecX point;
  Tensor4 riemann;
  MatX ricci;
  double scalar = 0.0;
  MatX einstein;
  double max_abs_riemann = 0.0;
};

// Gamma^rho_{ab} = 1/2 g^{lr} (d_b g_{la} + d_a g_{lb} - d_l g_{ab})
std::vector<MatX> christoffel(const MetricField& m, const VecX& p);

CurvatureReport riemann(const MetricField& m, const VecX& p);

/// St Venant residual: max |R| of the metric J^T eta J derived from the field
/// (the field argument is read as material coordinates) over the grid.
double compatibility_check(const DisplacementField& u,
                           const std::vector<Point3>& grid, double h);

/// The metric field a |-> J(a)^T eta J(a) of a displacement field.
MetricField metric_field_of(const DisplacementField& u, double h);

/// JSON rendering of a curvature report (point, Ricci, scalar, Einstein,
/// max |Riemann|) for the CLI verify output.
std::string curvature_report_json(const CurvatureReport& rep);

}  // namespace elastiq

#endif
