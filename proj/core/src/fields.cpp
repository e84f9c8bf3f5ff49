#include "elastiq/fields.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace elastiq {

namespace {

bool finite(const Vec3& v) { return v.allFinite(); }

bool finite(const CVec3& v) {
  return v.real().allFinite() && v.imag().allFinite();
}

}  // namespace

Point3::Point3(double x1, double x2, double x3) : x(x1, x2, x3) {
  if (!x.allFinite()) throw DomainError("Point3: nonfinite coordinates");
}

Point3::Point3(const Vec3& v) : x(v) {
  if (!x.allFinite()) throw DomainError("Point3: nonfinite coordinates");
}

LameParameters::LameParameters(double lambda_, double mu_)
    : lambda(lambda_), mu(mu_) {
  if (!(mu > 0.0) || !(lambda > 0.0))
    throw DegenerateMaterial("LameParameters: lambda and mu must be positive");
}

FourierMode::FourierMode(const Vec3& q_, const CVec3& amplitude_)
    : q(q_), amplitude(amplitude_) {
  if (!finite(q) || !finite(amplitude))
    throw DomainError("FourierMode: nonfinite entries");
  if (std::abs(q[2] - std::lround(q[2])) > 1e-9)
    throw DomainError("FourierMode: q3 must be an integer (compact coordinate)");
}

DisplacementField::DisplacementField(std::vector<FourierMode> modes,
                                     bool reality_flag)
    : modes_(std::move(modes)), reality_(reality_flag) {
  if (!reality_) return;
  // Reality requires the mirror mode (-q, conj(a)) for every (q, a).
  for (const auto& m : modes_) {
    bool found = false;
    for (const auto& n : modes_) {
      if ((n.q + m.q).norm() < 1e-12 &&
          (n.amplitude - m.amplitude.conjugate()).norm() < 1e-12) {
        found = true;
        break;
      }
    }
    if (!found)
      throw DomainError("DisplacementField: reality flag demands conjugate +-q pairs");
  }
}

namespace {

void check_imag(double imag_norm, double scale) {
  if (imag_norm > 1e-12 * std::max(1.0, scale))
    throw DomainError("DisplacementField: field is not real at this point");
}

}  // namespace

CVec3 DisplacementField::evaluate(const Point3& p) const {
  CVec3 out = CVec3::Zero();
  for (const auto& m : modes_) {
    const Complex phase = std::exp(Complex(0.0, m.q.dot(p.x)));
    out += m.amplitude * phase;
  }
  if (reality_) {
    check_imag(out.imag().norm(), out.real().norm());
    out.imag().setZero();
  }
  return out;
}

CMat3 DisplacementField::gradient(const Point3& p) const {
  CMat3 out = CMat3::Zero();
  for (const auto& m : modes_) {
    const Complex phase = std::exp(Complex(0.0, m.q.dot(p.x)));
    for (int mu = 0; mu < 3; ++mu)
      for (int nu = 0; nu < 3; ++nu)
        out(mu, nu) += m.amplitude[mu] * Complex(0.0, m.q[nu]) * phase;
  }
  return out;
}

Complex DisplacementField::second_derivative(int mu, int a, int b,
                                             const Point3& p) const {
  Complex out = 0.0;
  for (const auto& m : modes_) {
    const Complex phase = std::exp(Complex(0.0, m.q.dot(p.x)));
    out += m.amplitude[mu] * Complex(0.0, m.q[a]) * Complex(0.0, m.q[b]) * phase;
  }
  return out;
}

Vec3 DisplacementField::real_evaluate(const Point3& p) const {
  const CVec3 v = evaluate(p);
  check_imag(v.imag().norm(), v.real().norm());
  return v.real();
}

Mat3 DisplacementField::real_gradient(const Point3& p) const {
  const CMat3 g = gradient(p);
  check_imag(g.imag().norm(), g.real().norm());
  return g.real();
}

DisplacementField DisplacementField::operator+(const DisplacementField& other) const {
  std::vector<FourierMode> all = modes_;
  all.insert(all.end(), other.modes_.begin(), other.modes_.end());
  return DisplacementField(std::move(all), reality_ && other.reality_);
}

DisplacementField DisplacementField::make_real(const std::vector<FourierMode>& half) {
  std::vector<FourierMode> all;
  all.reserve(2 * half.size());
  for (const auto& m : half) {
    all.push_back(m);
    all.emplace_back(Vec3(-m.q), CVec3(m.amplitude.conjugate()));
  }
  return DisplacementField(std::move(all), true);
}

DisplacementField DisplacementField::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("mode list: invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ConfigError("mode list: top level must be an array");
  std::vector<FourierMode> modes;
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("q") || !entry.contains("amp_re") ||
        !entry.contains("amp_im"))
      throw ConfigError("mode list: each entry needs q, amp_re, amp_im");
    const auto q = entry.at("q");
    const auto re = entry.at("amp_re");
    const auto im = entry.at("amp_im");
    if (q.size() != 3 || re.size() != 3 || im.size() != 3)
      throw ConfigError("mode list: q, amp_re, amp_im must have 3 entries");
    Vec3 qv(q[0].get<double>(), q[1].get<double>(), q[2].get<double>());
    CVec3 amp;
    for (int i = 0; i < 3; ++i)
      amp[i] = Complex(re[i].get<double>(), im[i].get<double>());
    modes.emplace_back(qv, amp);
  }
  return DisplacementField(std::move(modes));
}

DisplacementField DisplacementField::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("mode list: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace elastiq
