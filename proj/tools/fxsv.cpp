// fxsv: verifies fixed-point state-space controller implementations against
// stability, controllability, observability, and output quantization error,
// reporting concrete counterexamples for violations.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fxsv/bench.hpp"
#include "fxsv/oracle.hpp"
#include "fxsv/report.hpp"

namespace fs = std::filesystem;
using namespace fxsv;

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitViolated = 1;
constexpr int kExitError = 2;
constexpr int kExitUnknown = 3;

SpecFile read_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return SpecFile{buf.str(), path};
}

struct CommonFlags {
  std::string rounding = "nearest";
  std::string overflow = "wrap";
  int int_bits = -1;
  int frac_bits = -1;
  int ref_int_bits = -1;
  int ref_frac_bits = -1;
  uint32_t bound = 0;
  std::string error_bound;
  double timeout = 0;
  uint64_t enum_cap = kDefaultEnumerationCap;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--rounding", rounding,
                    "rounding mode: nearest|truncate|floor (default nearest, "
                    "ties away from zero)");
    cmd->add_option("--overflow", overflow,
                    "overflow policy: wrap|saturate (default wrap, "
                    "two's-complement)");
    cmd->add_option("--int-bits", int_bits,
                    "override integer bits I (I includes the sign bit: <2,4> "
                    "spans [-2, 1.9375])");
    cmd->add_option("--frac-bits", frac_bits, "override fractional bits F");
    cmd->add_option("--bound", bound, "unrolling bound k (overrides file)");
    cmd->add_option("--error-bound", error_bound,
                    "output error tolerance as a decimal literal (overrides "
                    "file; snapped to the reference grid)");
    cmd->add_option("--ref-int-bits", ref_int_bits,
                    "reference precision integer bits (default I+8)");
    cmd->add_option("--ref-frac-bits", ref_frac_bits,
                    "reference precision fractional bits (default F+32)");
    cmd->add_option("--timeout", timeout, "verification timeout in seconds");
    cmd->add_option("--enum-cap", enum_cap,
                    "max input sequences for --engine enumerate (default 2^20)");
  }

  void apply(VerificationTask& task) const {
    task.rounding = rounding_from_string(rounding);
    task.overflow = overflow_from_string(overflow);
    if (int_bits >= 0) task.spec.int_bits = static_cast<uint32_t>(int_bits);
    if (frac_bits >= 0) task.spec.frac_bits = static_cast<uint32_t>(frac_bits);
    if (bound > 0) task.spec.bound = bound;
    if (!error_bound.empty())
      task.spec.error_bound = Rational::from_decimal(error_bound);
    if (ref_int_bits >= 0) task.ref_int_bits = static_cast<uint32_t>(ref_int_bits);
    if (ref_frac_bits >= 0) task.ref_frac_bits = static_cast<uint32_t>(ref_frac_bits);
    if (timeout > 0) task.timeout_seconds = timeout;
    task.enum_cap = enum_cap;
    task.format();  // validate the combination early
  }
};

int cmd_verify(const std::string& path, const std::string& property,
               const std::string& engine, bool closed_loop, bool json,
               const std::string& dimacs_out, const CommonFlags& flags) {
  VerificationTask task;
  task.system_name = fs::path(path).stem().string();
  auto parse_start = std::chrono::steady_clock::now();
  task.spec = parse_spec(read_spec_file(path));
  double parse_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    parse_start)
          .count();
  task.property = property_from_string(property);
  task.engine = engine == "enumerate" ? Engine::kEnumerate : Engine::kSat;
  if (engine != "sat" && engine != "enumerate")
    throw std::invalid_argument("unknown engine: " + engine);
  task.closed_loop = closed_loop;
  flags.apply(task);

  if (!dimacs_out.empty() && task.property == Property::kQuantizationError) {
    // Export alongside the run.
    FixedPointFormat fmt = task.format();
    FixedPointFormat ref_fmt = task.reference_format();
    if (!task.spec.error_bound)
      throw std::invalid_argument("--dimacs-out needs an error bound");
    Rational eps = snap_to_grid(*task.spec.error_bound, ref_fmt);
    QuantizedSystem narrow = quantize_system(task.spec.system, fmt);
    QuantizedSystem ref =
        reference_system(task.spec.system, narrow, ref_fmt);
    if (task.closed_loop) {
      narrow = close_loop(narrow);
      ref = close_loop(ref);
    }
    UnrolledFormula uf = unroll(narrow, ref, task.spec.bound, eps);
    CnfFormula cnf = bitblast(uf.builder, uf.root);
    std::ofstream out(dimacs_out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + dimacs_out);
    cnf.export_dimacs(out);
  }

  RunReport report = run_task(task);
  report.parse_seconds = parse_seconds;
  if (json) {
    std::cout << report_to_json(report).dump(2) << "\n";
  } else {
    std::cout << report_to_text(report);
  }
  switch (report.verdict.outcome) {
    case Outcome::kHolds: return kExitHolds;
    case Outcome::kViolated: return kExitViolated;
    case Outcome::kUnknown: return kExitUnknown;
  }
  return kExitError;
}

int cmd_bench(const std::string& dir, const std::string& precisions,
              const std::string& properties, const std::string& engine,
              uint32_t qe_max_precision, const std::string& json_path,
              const CommonFlags& flags) {
  std::vector<std::pair<std::string, ParsedSpec>> systems;
  std::vector<fs::path> files;
  if (!fs::is_directory(dir))
    throw std::runtime_error("not a directory: " + dir);
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".ss") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw std::runtime_error("no .ss spec files in " + dir);
  for (const fs::path& f : files)
    systems.emplace_back(f.stem().string(), parse_spec(read_spec_file(f.string())));

  BenchOptions opts;
  if (!precisions.empty()) {
    opts.precisions.clear();
    std::istringstream ps(precisions);
    std::string tok;
    while (std::getline(ps, tok, ','))
      opts.precisions.push_back(static_cast<uint32_t>(std::stoul(tok)));
  }
  if (!properties.empty()) {
    opts.properties.clear();
    std::istringstream ps(properties);
    std::string tok;
    while (std::getline(ps, tok, ','))
      opts.properties.push_back(property_from_string(tok));
  }
  opts.engine = engine == "enumerate" ? Engine::kEnumerate : Engine::kSat;
  opts.qe_max_precision = qe_max_precision;
  if (flags.bound > 0) opts.bound_override = flags.bound;
  if (flags.timeout > 0) opts.timeout_seconds = flags.timeout;
  opts.rounding = rounding_from_string(flags.rounding);
  opts.overflow = overflow_from_string(flags.overflow);
  opts.enum_cap = flags.enum_cap;

  BenchResult result = run_bench(systems, opts);
  std::cout << bench_table(result);
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + json_path);
    out << bench_to_json(result).dump(2) << "\n";
    std::cout << "wrote " << json_path << "\n";
  }
  return kExitHolds;
}

int cmd_export(const std::string& path, const std::string& out_path,
               bool closed_loop, const CommonFlags& flags) {
  VerificationTask task;
  task.system_name = fs::path(path).stem().string();
  task.spec = parse_spec(read_spec_file(path));
  task.property = Property::kQuantizationError;
  task.closed_loop = closed_loop;
  flags.apply(task);
  if (!task.spec.error_bound)
    throw std::invalid_argument("export needs error.bound (or --error-bound)");

  FixedPointFormat fmt = task.format();
  FixedPointFormat ref_fmt = task.reference_format();
  Rational eps = snap_to_grid(*task.spec.error_bound, ref_fmt);
  QuantizedSystem narrow = quantize_system(task.spec.system, fmt);
  QuantizedSystem ref = reference_system(task.spec.system, narrow, ref_fmt);
  if (closed_loop) {
    narrow = close_loop(narrow);
    ref = close_loop(ref);
  }
  UnrolledFormula uf = unroll(narrow, ref, task.spec.bound, eps);
  CnfFormula cnf = bitblast(uf.builder, uf.root);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  cnf.export_dimacs(out);
  std::cout << "wrote " << out_path << ": " << cnf.variable_count()
            << " variables, " << cnf.clause_count() << " clauses\n";
  return kExitHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fxsv - bounded verification of fixed-point state-space controllers\n"
      "Engine: embedded CDCL SAT (VSIDS decay 0.95, Luby restarts base 128,\n"
      "activity-driven clause deletion); runs are deterministic for a fixed\n"
      "configuration."};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "verify one property of a system");
  std::string spec_path, property, engine = "sat", dimacs_out;
  bool closed_loop = false, json = false;
  CommonFlags vflags;
  verify->add_option("spec", spec_path, "system spec file (.ss)")->required();
  verify->add_option("--property", property,
                     "stability|controllability|observability|quantization-error")
      ->required();
  verify->add_option("--engine", engine,
                     "quantization-error engine: sat|enumerate");
  verify->add_flag("--closed-loop", closed_loop,
                   "verify the closed loop u = r - Kx (needs K, D = 0)");
  verify->add_flag("--json", json, "print the full report as JSON");
  verify->add_option("--dimacs-out", dimacs_out,
                     "also export the quantization-error CNF to this path");
  vflags.add_to(verify);

  // bench
  auto* bench = app.add_subcommand("bench", "run a suite directory");
  std::string bench_dir, precisions, properties, bench_engine = "sat", json_path;
  uint32_t qe_max_precision = 16;
  CommonFlags bflags;
  bench->add_option("dir", bench_dir, "directory of .ss files")->required();
  bench->add_option("--precisions", precisions,
                    "comma-separated word sizes (default 8,16,32; W maps to "
                    "format <W/2,W/2>)");
  bench->add_option("--properties", properties,
                    "comma-separated property list (default all four)");
  bench->add_option("--engine", bench_engine, "sat|enumerate");
  bench->add_option("--qe-max-precision", qe_max_precision,
                    "largest word size to run quantization-error at "
                    "(default 16)");
  bench->add_option("--json", json_path, "write results JSON to this path");
  bflags.add_to(bench);

  // export
  auto* exp = app.add_subcommand("export",
                                 "export the quantization-error CNF as DIMACS");
  std::string exp_path, exp_out;
  bool exp_closed = false;
  CommonFlags eflags;
  exp->add_option("spec", exp_path, "system spec file (.ss)")->required();
  exp->add_option("-o,--output", exp_out, "output .cnf path")->required();
  exp->add_flag("--closed-loop", exp_closed, "close the loop first");
  eflags.add_to(exp);

  try {
    app.parse(argc, argv);
    if (*verify)
      return cmd_verify(spec_path, property, engine, closed_loop, json,
                        dimacs_out, vflags);
    if (*bench)
      return cmd_bench(bench_dir, precisions, properties, bench_engine,
                       qe_max_precision, json_path, bflags);
    if (*exp) return cmd_export(exp_path, exp_out, exp_closed, eflags);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitHolds : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
