#pragma once

#include <chrono>
#include <optional>
#include <string>

#include <json.hpp>

#include "fxsv/encoder.hpp"
#include "fxsv/parser.hpp"
#include "fxsv/properties.hpp"

namespace fxsv {

enum class Engine : uint8_t { kSat, kEnumerate };

std::string to_string(Engine e);

// Everything needed to run one verification: the parsed system plus the
// user's choices (property, bound, tolerance, engine, timeout, policies).
struct VerificationTask {
  std::string system_name;
  ParsedSpec spec;
  Property property = Property::kStability;
  Rounding rounding = Rounding::kNearestTiesAway;
  Overflow overflow = Overflow::kWrap;
  bool closed_loop = false;
  Engine engine = Engine::kSat;
  // Reference precision for quantization error; defaults to
  // <I+8, F+32> with the same rounding/overflow policies.
  std::optional<uint32_t> ref_int_bits;
  std::optional<uint32_t> ref_frac_bits;
  std::optional<double> timeout_seconds;
  uint64_t enum_cap = uint64_t(1) << 20;

  FixedPointFormat format() const {
    return FixedPointFormat(spec.int_bits, spec.frac_bits, rounding, overflow);
  }
  FixedPointFormat reference_format() const;
};

struct RunReport {
  VerificationTask task;
  Verdict verdict;
  // Effective tolerance after snapping to the reference grid (quantization
  // error only).
  std::optional<Rational> effective_error_bound;
  BmcRunStats stats;
  double parse_seconds = 0;
  double total_seconds = 0;
};

// Executes the task. Spec/contract problems throw (std::invalid_argument or
// SpecError); timeouts come back as Outcome::kUnknown.
RunReport run_task(const VerificationTask& task);

// Stable-order JSON per the documented schema; field order and content are
// deterministic for identical inputs (timings are the only varying parts).
nlohmann::ordered_json report_to_json(const RunReport& report);

// Human-readable one-screen summary.
std::string report_to_text(const RunReport& report);

// Snaps eps onto the grid of fmt (round to nearest, ties away).
Rational snap_to_grid(const Rational& eps, const FixedPointFormat& fmt);

}  // namespace fxsv
