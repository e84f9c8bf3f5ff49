#ifndef ELASTIQ_TYPES_HPP
#define ELASTIQ_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace elastiq {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using CVec2 = Eigen::Vector2cd;
using CVec3 = Eigen::Vector3cd;
using CMat2 = Eigen::Matrix2cd;
using CMat3 = Eigen::Matrix3cd;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;
using CMatX = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// Fixed-space Minkowski metric, signature (-,+,+). x^1 plays the role of time.
inline Mat3 minkowski3() {
  Mat3 eta = Mat3::Identity();
  eta(0, 0) = -1.0;
  return eta;
}

// 2D metric satisfied by the reduced gamma pair gamma'^mu = gamma^3 gamma^mu.
inline Mat2 minkowski2_prime() {
  Mat2 eta = Mat2::Identity();
  eta(1, 1) = -1.0;
  return eta;
}

struct Point3 {
  Vec3 x{Vec3::Zero()};

  Point3() = default;
  Point3(double x1, double x2, double x3);
  explicit Point3(const Vec3& v);

  double operator[](int i) const { return x[i]; }
};

struct LameParameters {
  double lambda;
  double mu;

  LameParameters(double lambda_, double mu_);
};

// Error taxonomy. Every failure mode named by the module contracts maps to
// one of these; all derive from Error so callers can catch coarsely.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularJacobian : Error { using Error::Error; };
struct SingularMetric : Error { using Error::Error; };
struct DegenerateMaterial : Error { using Error::Error; };
struct UnstableRegime : Error { using Error::Error; };
struct StructureViolation : Error { using Error::Error; };
struct OffShell : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct UniverseMismatch : Error { using Error::Error; };
struct TruncationTooSmall : Error { using Error::Error; };
struct MetricMismatch : Error { using Error::Error; };
struct SingularFrame : Error { using Error::Error; };
struct DegenerateFrame : Error { using Error::Error; };
struct SignatureError : Error { using Error::Error; };
struct ModeLeakage : Error { using Error::Error; };
struct TruncationError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace elastiq

#endif
