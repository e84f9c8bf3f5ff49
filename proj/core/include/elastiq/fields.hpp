#ifndef ELASTIQ_FIELDS_HPP
#define ELASTIQ_FIELDS_HPP

#include <string>
#include <vector>

#include "elastiq/types.hpp"

namespace elastiq {

/// One plane-wave term a^mu exp(i q.x). The third wavevector component is
/// restricted to integers because the third material coordinate is compact.
struct FourierMode {
  Vec3 q;
  CVec3 amplitude;

  FourierMode(const Vec3& q_, const CVec3& amplitude_);

  int q3() const { return static_cast<int>(std::lround(q[2])); }
};

/// Analytic displacement field: a finite sum of Fourier modes. Evaluation and
/// every partial derivative are exact mode algebra, never finite differences.
class DisplacementField {
 public:
  DisplacementField() = default;
  DisplacementField(std::vector<FourierMode> modes, bool reality_flag = false);

  const std::vector<FourierMode>& modes() const { return modes_; }
  bool reality() const { return reality_; }

  CVec3 evaluate(const Point3& p) const;
  // u^mu_nu = d u^mu / d x^nu  (row mu, column nu)
  CMat3 gradient(const Point3& p) const;
  // d^2 u^mu / (d x^a d x^b)
  Complex second_derivative(int mu, int a, int b, const Point3& p) const;

  // Real-part accessors for fields carrying the reality flag. The imaginary
  // residue must stay below 1e-12 relative; larger residues throw.
  Vec3 real_evaluate(const Point3& p) const;
  Mat3 real_gradient(const Point3& p) const;

  DisplacementField operator+(const DisplacementField& other) const;

  /// Builds a field whose modes come in conjugate +-q pairs from a list of
  /// half-spectrum modes (each mode gets its mirror appended).
  static DisplacementField make_real(const std::vector<FourierMode>& half);

  /// Parses a JSON array of {"q": [..], "amp_re": [..], "amp_im": [..]}.
  static DisplacementField from_json(const std::string& text);
  static DisplacementField from_json_file(const std::string& path);

 private:
  std::vector<FourierMode> modes_;
  bool reality_ = false;
};

}  // namespace elastiq

#endif
