// Compares the serial reference enumeration against the OpenMP-parallel one
// on a family of exhaustive quantization-error searches, checking agreement
// and reporting the speedup.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fxsv/oracle.hpp"

using namespace fxsv;

namespace {

// Contractive dynamics without reachable overflow: per-step rounding noise
// stays well under the tolerance, so the scan visits every sequence.
StateSpaceSystem sample_system(int variant) {
  StateSpaceSystem s;
  s.a = RationalMatrix(2, 2);
  s.a.at(0, 0) = Rational::from_decimal("0.375");
  s.a.at(0, 1) = Rational::from_decimal("0.125");
  s.a.at(1, 0) = Rational::from_decimal(variant ? "-0.125" : "0.125");
  s.a.at(1, 1) = Rational::from_decimal("0.375");
  s.b = RationalMatrix(2, 1);
  s.b.at(0, 0) = Rational::from_decimal("0.25");
  s.b.at(1, 0) = Rational::from_decimal("0.25");
  s.c = RationalMatrix(1, 2);
  s.c.at(0, 0) = Rational::from_decimal("0.5");
  s.c.at(0, 1) = Rational::from_decimal("0.25");
  s.d = RationalMatrix(1, 1);
  s.d.at(0, 0) = Rational::from_decimal("0.125");
  s.x0 = {Rational(0), Rational(0)};
  FixedPointFormat fmt(2, 3);
  s.input_lo = {fmt.min_value()};
  s.input_hi = {fmt.max_value()};
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel path runs serially\n");
#endif

  FixedPointFormat nf(2, 3);
  FixedPointFormat rf(10, 35);
  double serial_total = 0, parallel_total = 0;
  int mismatches = 0;

  for (int variant = 0; variant < 2; ++variant) {
    StateSpaceSystem s = sample_system(variant);
    QuantizedSystem narrow = quantize_system(s, nf);
    QuantizedSystem ref = reference_system(s, narrow, rf);
    // The property holds at this tolerance, so the whole space is scanned.
    Rational eps(BigInt(1), BigInt(2));
    const uint32_t k = 4;  // 32^4 = 2^20 sequences

    auto t0 = std::chrono::steady_clock::now();
    EnumerationResult ser = enumerate_verify_serial(narrow, ref, k, eps);
    double serial_s = seconds_since(t0);
    serial_total += serial_s;

    t0 = std::chrono::steady_clock::now();
    EnumerationResult par = enumerate_verify(narrow, ref, k, eps);
    double parallel_s = seconds_since(t0);
    parallel_total += parallel_s;

    bool agree = ser.outcome == par.outcome;
    if (agree && ser.cex && par.cex) {
      for (size_t i = 0; i < ser.cex->inputs.size(); ++i)
        agree = agree && ser.cex->inputs[i][0] == par.cex->inputs[i][0];
    }
    if (!agree) ++mismatches;

    std::printf(
        "variant %d: %llu sequences, verdict %-8s serial %.3fs  parallel "
        "%.3fs  speedup %.2fx%s\n",
        variant, static_cast<unsigned long long>(ser.sequences),
        to_string(ser.outcome).c_str(), serial_s, parallel_s,
        parallel_s > 0 ? serial_s / parallel_s : 0.0,
        agree ? "" : "  MISMATCH");
  }

  std::printf("total: serial %.3fs, parallel %.3fs\n", serial_total,
              parallel_total);
  if (mismatches) {
    std::printf("FAIL: %d mismatching verdicts\n", mismatches);
    return 1;
  }
  std::printf("serial and parallel enumeration agree\n");
  return 0;
}
