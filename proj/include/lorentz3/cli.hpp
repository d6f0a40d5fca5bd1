#pragma once

#include <ostream>

namespace lorentz3 {

// Exit codes: 0 ok, 1 not admissible / inconclusive, 2 invalid input,
// 3 discrepancy or internal failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitDiscrepancy = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lorentz3
