#include "fxsv/bench.hpp"

#include <algorithm>

namespace fxsv {

namespace {

FixedPointFormat bench_format(uint32_t precision, Rounding r, Overflow o) {
  uint32_t i = (precision + 1) / 2;
  return FixedPointFormat(i, precision - i, r, o);
}

}  // namespace

BenchResult run_bench(
    const std::vector<std::pair<std::string, ParsedSpec>>& systems,
    const BenchOptions& options) {
  using Clock = std::chrono::steady_clock;
  auto t0 = Clock::now();

  std::vector<BenchRow> rows;
  std::vector<VerificationTask> tasks;
  for (const auto& [name, spec] : systems) {
    for (Property prop : options.properties) {
      for (uint32_t precision : options.precisions) {
        if (prop == Property::kQuantizationError) {
          if (precision > options.qe_max_precision) continue;
          if (!spec.error_bound) continue;
        }
        VerificationTask t;
        t.system_name = name;
        t.spec = spec;
        FixedPointFormat fmt =
            bench_format(precision, options.rounding, options.overflow);
        t.spec.int_bits = fmt.int_bits;
        t.spec.frac_bits = fmt.frac_bits;
        if (options.bound_override) t.spec.bound = *options.bound_override;
        t.property = prop;
        t.rounding = options.rounding;
        t.overflow = options.overflow;
        t.engine = options.engine;
        t.timeout_seconds = options.timeout_seconds;
        t.enum_cap = options.enum_cap;
        tasks.push_back(std::move(t));

        BenchRow row;
        row.system = name;
        row.property = prop;
        row.precision = precision;
        rows.push_back(std::move(row));
      }
    }
  }

#pragma omp parallel for schedule(dynamic, 1)
  for (int64_t i = 0; i < static_cast<int64_t>(tasks.size()); ++i) {
    auto ts = Clock::now();
    try {
      RunReport rep = run_task(tasks[i]);
      rows[i].outcome = rep.verdict.outcome;
      rows[i].ran = true;
    } catch (const std::exception& e) {
      rows[i].outcome = Outcome::kUnknown;
      rows[i].note = e.what();
      rows[i].ran = false;
    }
    rows[i].seconds = std::chrono::duration<double>(Clock::now() - ts).count();
  }

  BenchResult result;
  result.rows = std::move(rows);
  for (uint32_t precision : options.precisions)
    result.violated_by_precision[precision] = 0;
  for (const BenchRow& row : result.rows) {
    if (row.outcome != Outcome::kViolated) continue;
    result.violated_by_precision[row.precision] += 1;
    result.violated_by_property[to_string(row.property)][row.precision] += 1;
  }

  // Trend flag: fewer failures at a lower precision than at a higher one is
  // the anomaly (FWL effects should shrink as precision grows).
  std::vector<uint32_t> sorted = options.precisions;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [prop, counts] : result.violated_by_property) {
    for (size_t a = 0; a < sorted.size(); ++a) {
      for (size_t b = a + 1; b < sorted.size(); ++b) {
        int lo = counts.count(sorted[a]) ? counts.at(sorted[a]) : 0;
        int hi = counts.count(sorted[b]) ? counts.at(sorted[b]) : 0;
        if (lo < hi)
          result.anomalies.push_back(
              prop + ": " + std::to_string(lo) + " violations at " +
              std::to_string(sorted[a]) + "-bit but " + std::to_string(hi) +
              " at " + std::to_string(sorted[b]) + "-bit");
      }
    }
  }

  result.total_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return result;
}

std::string bench_table(const BenchResult& result) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-28s %-20s %6s %-9s %9s\n", "system",
                "property", "bits", "verdict", "time");
  out += line;
  out += std::string(76, '-') + "\n";
  for (const BenchRow& row : result.rows) {
    std::snprintf(line, sizeof(line), "%-28s %-20s %6u %-9s %8.1fms%s%s\n",
                  row.system.c_str(), to_string(row.property).c_str(),
                  row.precision, to_string(row.outcome).c_str(),
                  row.seconds * 1e3, row.note.empty() ? "" : "  ! ",
                  row.note.c_str());
    out += line;
  }
  out += std::string(76, '-') + "\n";
  out += "violated per precision:";
  for (const auto& [precision, count] : result.violated_by_precision) {
    std::snprintf(line, sizeof(line), "  %u-bit: %d", precision, count);
    out += line;
  }
  out += "\n";
  for (const std::string& a : result.anomalies)
    out += "TREND FLAG: " + a + "\n";
  std::snprintf(line, sizeof(line), "total: %zu verifications in %.1fs\n",
                result.rows.size(), result.total_seconds);
  out += line;
  return out;
}

nlohmann::ordered_json bench_to_json(const BenchResult& result) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const BenchRow& row : result.rows) {
    nlohmann::ordered_json r;
    r["system"] = row.system;
    r["property"] = to_string(row.property);
    r["precision_bits"] = row.precision;
    r["verdict"] = to_string(row.outcome);
    r["time_ms"] = row.seconds * 1e3;
    if (!row.note.empty()) r["note"] = row.note;
    rows.push_back(r);
  }
  j["rows"] = rows;
  nlohmann::ordered_json by_precision;
  for (const auto& [precision, count] : result.violated_by_precision)
    by_precision[std::to_string(precision)] = count;
  j["violated_by_precision"] = by_precision;
  nlohmann::ordered_json by_prop;
  for (const auto& [prop, counts] : result.violated_by_property) {
    nlohmann::ordered_json c;
    for (const auto& [precision, count] : counts)
      c[std::to_string(precision)] = count;
    by_prop[prop] = c;
  }
  j["violated_by_property"] = by_prop;
  j["trend_flags"] = result.anomalies;
  j["total_seconds"] = result.total_seconds;
  return j;
}

}  // namespace fxsv
