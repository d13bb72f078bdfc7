#ifndef KWFLOW_VERIFY_HPP
#define KWFLOW_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace kwflow {

struct CheckResult {
  std::string name;
  bool passed = false;
  double observed = 0;  ///< measured error or defect
  double bound = 0;     ///< tolerance it was compared against
};

enum class VerifyLevel { quick, full };

/**
 * Cross-module invariant suite: spectral round trips, geometry identities,
 * functional calculus consistency, flow conservation, Green pairing, bubble
 * quantization. quick runs at n = 64, full at n = 256.
 */
std::vector<CheckResult> run_invariant_suite(VerifyLevel level, std::uint64_t seed = 1);

}  // namespace kwflow

#endif
