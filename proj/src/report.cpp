#include "fxsv/report.hpp"

#include "fxsv/oracle.hpp"

namespace fxsv {

std::string to_string(Engine e) {
  return e == Engine::kSat ? "sat" : "enumerate";
}

FixedPointFormat VerificationTask::reference_format() const {
  uint32_t i = ref_int_bits.value_or(spec.int_bits + 8);
  uint32_t f = ref_frac_bits.value_or(spec.frac_bits + 32);
  return FixedPointFormat(i, f, rounding, overflow);
}

Rational snap_to_grid(const Rational& eps, const FixedPointFormat& fmt) {
  Rational scaled = eps.mul_pow2(static_cast<int>(fmt.frac_bits));
  return Rational(scaled.round_half_away(), BigInt(1))
      .mul_pow2(-static_cast<int>(fmt.frac_bits));
}

RunReport run_task(const VerificationTask& task) {
  using Clock = std::chrono::steady_clock;
  auto t0 = Clock::now();
  RunReport report;
  report.task = task;

  FixedPointFormat fmt = task.format();
  QuantizedSystem qsys = quantize_system(task.spec.system, fmt);
  if (task.closed_loop) qsys = close_loop(qsys);

  std::chrono::duration<double> timeout =
      task.timeout_seconds ? std::chrono::duration<double>(*task.timeout_seconds)
                           : std::chrono::duration<double>::max();

  switch (task.property) {
    case Property::kStability:
      report.verdict = check_stability(qsys);
      break;
    case Property::kControllability:
      report.verdict = check_controllability(qsys);
      break;
    case Property::kObservability:
      report.verdict = check_observability(qsys);
      break;
    case Property::kQuantizationError: {
      if (!task.spec.error_bound)
        throw std::invalid_argument(
            "quantization-error needs error.bound (or --error-bound)");
      FixedPointFormat ref_fmt = task.reference_format();
      Rational eps = snap_to_grid(*task.spec.error_bound, ref_fmt);
      if (!(eps > Rational(0)))
        throw std::invalid_argument(
            "error bound snaps to zero on the reference grid; increase it or "
            "the reference precision");
      report.effective_error_bound = eps;
      StateSpaceSystem model = task.spec.system;
      QuantizedSystem narrow = qsys;
      QuantizedSystem ref = reference_system(model, quantize_system(model, fmt),
                                             ref_fmt);
      if (task.closed_loop) ref = close_loop(ref);
      if (task.engine == Engine::kSat) {
        report.verdict =
            check_quantization_error_sat(narrow, ref, task.spec.bound, eps,
                                         timeout, &report.stats);
      } else {
        auto e0 = Clock::now();
        EnumerationResult r =
            enumerate_verify(narrow, ref, task.spec.bound, eps, task.enum_cap);
        Verdict v;
        v.property = Property::kQuantizationError;
        v.outcome = r.outcome;
        if (r.cex) v.evidence = *r.cex;
        v.wall_time = Clock::now() - e0;
        report.verdict = v;
      }
      break;
    }
  }
  report.total_seconds =
      std::chrono::duration<double>(Clock::now() - t0).count();
  return report;
}

namespace {

nlohmann::ordered_json format_json(const FixedPointFormat& f) {
  return {{"int_bits", f.int_bits},
          {"frac_bits", f.frac_bits},
          {"rounding", to_string(f.rounding)},
          {"overflow", to_string(f.overflow)}};
}

nlohmann::ordered_json rational_json(const Rational& r) {
  nlohmann::ordered_json j;
  j["fraction"] = r.to_string();
  auto dec = r.to_decimal_string();
  if (dec) j["decimal"] = *dec;
  return j;
}

}  // namespace

nlohmann::ordered_json report_to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  const VerificationTask& t = report.task;
  nlohmann::ordered_json task;
  task["system"] = t.system_name;
  task["property"] = to_string(t.property);
  task["format"] = format_json(t.format());
  task["bound"] = t.spec.bound;
  if (t.spec.error_bound)
    task["error_bound"] = rational_json(*t.spec.error_bound);
  else
    task["error_bound"] = nullptr;
  if (report.effective_error_bound)
    task["effective_error_bound"] = rational_json(*report.effective_error_bound);
  task["engine"] = to_string(t.engine);
  task["closed_loop"] = t.closed_loop;
  if (t.property == Property::kQuantizationError)
    task["reference_format"] = format_json(t.reference_format());
  if (t.timeout_seconds)
    task["timeout_seconds"] = *t.timeout_seconds;
  else
    task["timeout_seconds"] = nullptr;
  j["task"] = task;

  j["verdict"] = to_string(report.verdict.outcome);

  nlohmann::ordered_json evidence = nullptr;
  nlohmann::ordered_json cex = nullptr;
  if (const auto* st = std::get_if<StabilityEvidence>(&report.verdict.evidence)) {
    evidence = {{"type", "characteristic-polynomial"},
                {"polynomial", st->characteristic.to_string()}};
  } else if (const auto* rk = std::get_if<RankEvidence>(&report.verdict.evidence)) {
    evidence = {{"type", "rank"}, {"rank", rk->rank}, {"required", rk->required}};
  } else if (const auto* ce = std::get_if<Counterexample>(&report.verdict.evidence)) {
    evidence = {{"type", "counterexample"}};
    cex["violating_step"] = ce->violating_step;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
    for (const auto& step : ce->inputs) {
      nlohmann::ordered_json entry = nlohmann::ordered_json::array();
      for (const FxNum& u : step) {
        nlohmann::ordered_json uj = rational_json(u.to_rational());
        uj["raw"] = u.raw();
        entry.push_back(uj);
      }
      inputs.push_back(entry);
    }
    cex["inputs"] = inputs;
    cex["y_quantized"] = rational_json(ce->y_q);
    cex["y_reference"] = rational_json(ce->y_ref);
    cex["error"] = rational_json(ce->error);
  }
  j["evidence"] = evidence;
  j["counterexample"] = cex;

  nlohmann::ordered_json stats;
  stats["solver"] = {{"conflicts", report.stats.solver.conflicts},
                     {"decisions", report.stats.solver.decisions},
                     {"propagations", report.stats.solver.propagations},
                     {"restarts", report.stats.solver.restarts},
                     {"learned", report.stats.solver.learned}};
  stats["cnf"] = {{"variables", report.stats.variables},
                  {"clauses", report.stats.clauses}};
  stats["timings_ms"] = {
      {"parse", report.parse_seconds * 1e3},
      {"encode", report.stats.encode_seconds * 1e3},
      {"solve", report.stats.solve_seconds * 1e3},
      {"verdict", report.verdict.wall_time.count() * 1e3},
      {"total", report.total_seconds * 1e3}};
  j["stats"] = stats;
  return j;
}

std::string report_to_text(const RunReport& report) {
  const VerificationTask& t = report.task;
  std::string out;
  out += t.system_name + ": " + to_string(t.property);
  if (t.closed_loop) out += " (closed loop)";
  out += " at " + t.format().to_string() + " " + to_string(t.rounding) + "/" +
         to_string(t.overflow);
  if (t.property == Property::kQuantizationError) {
    out += ", k=" + std::to_string(t.spec.bound);
    if (report.effective_error_bound)
      out += ", eps=" + report.effective_error_bound->to_string();
    out += ", engine=" + to_string(t.engine);
  }
  out += "\n  verdict: " + to_string(report.verdict.outcome) + "\n";
  if (const auto* st = std::get_if<StabilityEvidence>(&report.verdict.evidence))
    out += "  characteristic polynomial: " + st->characteristic.to_string() + "\n";
  if (const auto* rk = std::get_if<RankEvidence>(&report.verdict.evidence))
    out += "  rank: " + std::to_string(rk->rank) + " of " +
           std::to_string(rk->required) + " required\n";
  if (const auto* ce = std::get_if<Counterexample>(&report.verdict.evidence)) {
    out += "  violation at step " + std::to_string(ce->violating_step) +
           ": |" + ce->y_q.to_string() + " - " + ce->y_ref.to_string() +
           "| = " + ce->error.to_string() + "\n  inputs:";
    for (const auto& step : ce->inputs) {
      out += " [";
      for (size_t i = 0; i < step.size(); ++i)
        out += (i ? " " : "") + step[i].to_string();
      out += "]";
    }
    out += "\n";
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "  time: %.1f ms (encode %.1f ms, solve %.1f ms)",
                report.total_seconds * 1e3, report.stats.encode_seconds * 1e3,
                report.stats.solve_seconds * 1e3);
  out += buf;
  out += "\n";
  return out;
}

}  // namespace fxsv
