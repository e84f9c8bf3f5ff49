#ifndef ELASTIQ_VERIFY_HPP
#define ELASTIQ_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "elastiq/types.hpp"

namespace elastiq {

/// One invariant checked over `samples` draws; `worst` is the largest
/// residual seen and `detail` an optional extra number (a ratio, an order).
struct PropertyResult {
  std::string name;
  int samples = 0;
  double worst = 0.0;
  double detail = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyResult> properties;

  bool all_pass() const;
};

struct VerifyOptions {
  LameParameters material{1.3, 0.1};
  std::uint64_t seed = 42;
  int samples = 50;
  double h = 1e-3;
};

SuiteReport verify_kinematics(const VerifyOptions& opt);
SuiteReport verify_geometry(const VerifyOptions& opt);
SuiteReport verify_elastodynamics(const VerifyOptions& opt);
SuiteReport verify_quantization(const VerifyOptions& opt);
SuiteReport verify_spinor(const VerifyOptions& opt);
SuiteReport verify_reduction(const VerifyOptions& opt);
std::vector<SuiteReport> verify_all(const VerifyOptions& opt);

}  // namespace elastiq

#endif
