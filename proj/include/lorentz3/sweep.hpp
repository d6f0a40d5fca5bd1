#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lorentz3/existence.hpp"

namespace lorentz3 {

struct SweepConfig {
  std::string family = "all";  // a family name, "all" or "symmetric"
  std::string mode = "random";  // "random" or "grid"
  long samples = 1000;          // random mode
  std::string step = "1";       // grid mode, rational string
  std::map<std::string, ParamRange> ranges;
  long max_denominator = 4;
  std::uint64_t seed = 0;
  Backend backend = Backend::exact;
  double tau = kDefaultTau;
  double crosscheck = 0.01;  // fraction of rows re-run in the other backend
  int threads = 1;
  std::string output;         // path prefix; empty writes nothing
  std::string format = "both";  // "csv", "json" or "both"
};

// Row flags. Empty means the row passed every check.
inline constexpr const char* kFlagRejected = "rejected_by_predicate";
inline constexpr const char* kFlagBackend = "backend_mismatch";
inline constexpr const char* kFlagClassify = "classify_error";

struct SweepRow {
  std::size_t index = 0;
  std::string family;               // family name, or symmetric kind
  std::vector<std::string> params;  // up to 4
  std::string segre_type;
  std::array<std::string, 3> k;     // {1zz}: k1, re, im
  std::vector<std::string> conditions;
  Backend backend = Backend::exact;
  std::string flag;
};

struct SweepReport {
  std::vector<SweepRow> rows;  // ordered by sample index
  long requested = 0;
  long rejected = 0;  // constraint violations, no row emitted

  long flagged() const;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws std::invalid_argument on a bad config.
SweepReport run_sweep(const SweepConfig& cfg);

struct RegionSummary {
  std::map<std::pair<std::string, std::string>, long> by_family_type;
  std::map<std::string, long> by_condition;
  std::map<std::string, long> by_flag;
};

RegionSummary region_summary(const SweepReport& r);

std::string to_csv(const SweepReport& r);

// Writes <output>.csv and/or <output>.json per cfg.format.
void write_report(const SweepReport& r, const SweepConfig& cfg);

}  // namespace lorentz3
