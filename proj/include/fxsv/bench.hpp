#pragma once

#include <map>
#include <string>
#include <vector>

#include "fxsv/report.hpp"

namespace fxsv {

// Desk-scale benchmark: every system x property x precision, where a
// precision W runs at format <W/2, W/2>. The quantization-error property is
// bounded to narrower precisions since its reference unrolling adds 40 bits
// on top of the implementation width.
struct BenchOptions {
  std::vector<uint32_t> precisions = {8, 16, 32};
  std::vector<Property> properties = {
      Property::kStability, Property::kControllability,
      Property::kObservability, Property::kQuantizationError};
  uint32_t qe_max_precision = 16;
  std::optional<uint32_t> bound_override;  // quantization-error k
  double timeout_seconds = 20.0;
  Engine engine = Engine::kSat;
  Rounding rounding = Rounding::kNearestTiesAway;
  Overflow overflow = Overflow::kWrap;
  uint64_t enum_cap = uint64_t(1) << 20;
};

struct BenchRow {
  std::string system;
  Property property;
  uint32_t precision = 0;
  Outcome outcome = Outcome::kUnknown;
  double seconds = 0;
  std::string note;  // error text for tasks that could not run
  bool ran = false;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  // violated counts, per precision (all properties) and per property.
  std::map<uint32_t, int> violated_by_precision;
  std::map<std::string, std::map<uint32_t, int>> violated_by_property;
  std::vector<std::string> anomalies;  // raised trend flags
  double total_seconds = 0;
};

// Runs tasks with an OpenMP worker pool (one solver per task). Row order
// and outcomes are deterministic regardless of the schedule.
BenchResult run_bench(const std::vector<std::pair<std::string, ParsedSpec>>& systems,
                      const BenchOptions& options);

std::string bench_table(const BenchResult& result);
nlohmann::ordered_json bench_to_json(const BenchResult& result);

}  // namespace fxsv
