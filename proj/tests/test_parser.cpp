#include <doctest.h>

#include <random>

#include "fxsv/parser.hpp"

using namespace fxsv;

namespace {
ParsedSpec parse(const std::string& text) {
  return parse_spec(SpecFile{text, "test.ss"});
}
std::mt19937_64 rng(0x9a25e101u);
}  // namespace

TEST_CASE("minimal spec parses with exact literals") {
  ParsedSpec s = parse(
      "A = [0.5];\nB = [1];\nC = [1];\nD = [0];\n"
      "implementation.int_bits = 2;\nimplementation.frac_bits = 4;\n");
  CHECK(s.system.n() == 1);
  CHECK(s.system.m() == 1);
  CHECK(s.system.p() == 1);
  CHECK(s.system.a.at(0, 0) == Rational(BigInt(1), BigInt(2)));
  CHECK(s.int_bits == 2);
  CHECK(s.frac_bits == 4);
  CHECK(s.bound == 10);  // default
  CHECK(!s.error_bound);
  // Default input range is the full representable range of <2,4>.
  CHECK(s.system.input_lo[0] == Rational(-2));
  CHECK(s.system.input_hi[0] == Rational::from_decimal("1.9375"));
  CHECK(s.system.x0[0] == Rational(0));
}

TEST_CASE("decimal coefficients stay rational, not double") {
  ParsedSpec s = parse(
      "A = [0.1];\nB = [1];\nC = [1];\nD = [0];\n"
      "implementation.int_bits = 2;\nimplementation.frac_bits = 4;\n");
  CHECK(s.system.a.at(0, 0) == Rational(BigInt(1), BigInt(10)));
  CHECK(s.system.a.at(0, 0).den() == BigInt(10));
}

TEST_CASE("matrices, comments, separators") {
  ParsedSpec s = parse(
      "% a 2-state system\n"
      "A = [0.5, 0.25; -0.125 0];  % trailing comment\n"
      "B = [1; 0];\n"
      "C = [1 0];\n"
      "D = [0];\n"
      "K = [0.5 0.5];\n"
      "states.initial = [0.25 -0.5];\n"
      "inputs.min = -1;\n"
      "inputs.max = 1;\n"
      "bound = 6;\n"
      "error.bound = 0.25;\n"
      "implementation.int_bits = 3;\n"
      "implementation.frac_bits = 5;\n");
  CHECK(s.system.n() == 2);
  CHECK(s.system.a.at(1, 0) == Rational(BigInt(-1), BigInt(8)));
  CHECK(s.system.k.has_value());
  CHECK(s.bound == 6);
  CHECK(*s.error_bound == Rational(BigInt(1), BigInt(4)));
  CHECK(s.system.x0[1] == Rational(BigInt(-1), BigInt(2)));
}

TEST_CASE("ragged rows are a dimension error") {
  CHECK_THROWS_AS(parse("A = [1 2; 3];\nB = [1;1];\nC = [1 0];\nD = [0];\n"
                        "implementation.int_bits = 2;\n"
                        "implementation.frac_bits = 2;\n"),
                  SpecError);
}

TEST_CASE("parser error cases") {
  const char* tail =
      "B = [1];\nC = [1];\nD = [0];\n"
      "implementation.int_bits = 2;\nimplementation.frac_bits = 4;\n";
  // missing required key
  CHECK_THROWS_WITH_AS(parse("B = [1];\nC = [1];\nD = [0];\n"
                             "implementation.int_bits = 2;\n"
                             "implementation.frac_bits = 4;\n"),
                       doctest::Contains("missing required key 'A'"), SpecError);
  // duplicate key
  CHECK_THROWS_WITH_AS(parse(std::string("A = [1];\nA = [2];\n") + tail),
                       doctest::Contains("duplicate"), SpecError);
  // unknown key
  CHECK_THROWS_WITH_AS(parse(std::string("A = [1];\nQ = [2];\n") + tail),
                       doctest::Contains("unknown key 'Q'"), SpecError);
  // bad syntax
  CHECK_THROWS_AS(parse(std::string("A = ;\n") + tail), SpecError);
  CHECK_THROWS_AS(parse(std::string("A [1];\n") + tail), SpecError);
  CHECK_THROWS_AS(parse(std::string("A = [1]\n") + tail), SpecError);
  // out-of-range format
  CHECK_THROWS_WITH_AS(parse("A = [1];\nB = [1];\nC = [1];\nD = [0];\n"
                             "implementation.int_bits = 0;\n"
                             "implementation.frac_bits = 4;\n"),
                       doctest::Contains("out of range"), SpecError);
  // dimension mismatches
  CHECK_THROWS_AS(parse("A = [1 0; 0 1];\nB = [1];\nC = [1 0];\nD = [0];\n"
                        "implementation.int_bits = 2;\n"
                        "implementation.frac_bits = 4;\n"),
                  SpecError);
  CHECK_THROWS_AS(parse("A = [1 0; 0 1];\nB = [1;1];\nC = [1];\nD = [0];\n"
                        "implementation.int_bits = 2;\n"
                        "implementation.frac_bits = 4;\n"),
                  SpecError);
  // K with wrong shape
  CHECK_THROWS_AS(parse(std::string("A = [1];\nK = [1 2];\n") + tail), SpecError);
  // error.bound must be positive
  CHECK_THROWS_AS(parse(std::string("A = [1];\nerror.bound = 0;\n") + tail),
                  SpecError);
  // inputs.min > inputs.max
  CHECK_THROWS_AS(
      parse(std::string("A = [1];\ninputs.min = 1;\ninputs.max = -1;\n") + tail),
      SpecError);
}

TEST_CASE("errors carry positions") {
  try {
    parse("A = [1];\nB = [1];\nC = [1];\nD = [0];\n% c\nQ.bad = 1;\n"
          "implementation.int_bits = 2;\nimplementation.frac_bits = 4;\n");
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(e.line() == 6);
    CHECK(e.col() == 1);
    CHECK(std::string(e.what()).find("test.ss:6:") != std::string::npos);
  }
}

TEST_CASE("pretty print round trips") {
  ParsedSpec s = parse(
      "A = [0.5 0.25; -0.125 0.0625];\n"
      "B = [1; 0.5];\n"
      "C = [1 0];\n"
      "D = [0.125];\n"
      "K = [0.25 -0.75];\n"
      "states.initial = [0.5 -0.25];\n"
      "inputs.min = -1.5;\n"
      "inputs.max = 0.875;\n"
      "bound = 12;\n"
      "error.bound = 0.03125;\n"
      "implementation.int_bits = 4;\n"
      "implementation.frac_bits = 8;\n");
  ParsedSpec again = parse_spec(SpecFile{pretty_print(s), "printed"});
  CHECK(again == s);
  // And printing is a fixpoint.
  CHECK(pretty_print(again) == pretty_print(s));
}

TEST_CASE("random specs round trip") {
  auto rnd_dec = [&]() {
    // Random terminating decimal in [-4, 4].
    int64_t num = static_cast<int64_t>(rng() % 8193) - 4096;
    return Rational(BigInt(num), BigInt(1)).mul_pow2(-10);
  };
  for (int iter = 0; iter < 50; ++iter) {
    size_t n = 1 + rng() % 3, m = 1 + rng() % 2, p = 1 + rng() % 2;
    ParsedSpec s;
    s.system.a = RationalMatrix(n, n);
    s.system.b = RationalMatrix(n, m);
    s.system.c = RationalMatrix(p, n);
    s.system.d = RationalMatrix(p, m);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) s.system.a.at(i, j) = rnd_dec();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < m; ++j) s.system.b.at(i, j) = rnd_dec();
    for (size_t i = 0; i < p; ++i)
      for (size_t j = 0; j < n; ++j) s.system.c.at(i, j) = rnd_dec();
    for (size_t i = 0; i < p; ++i)
      for (size_t j = 0; j < m; ++j) s.system.d.at(i, j) = rnd_dec();
    s.system.x0.assign(n, Rational(0));
    s.system.input_lo.assign(m, Rational(-1));
    s.system.input_hi.assign(m, Rational(1));
    s.int_bits = 2 + rng() % 4;
    s.frac_bits = rng() % 8;
    s.bound = 1 + rng() % 20;
    if (rng() % 2) s.error_bound = Rational(BigInt(1), BigInt(16));
    ParsedSpec round = parse_spec(SpecFile{pretty_print(s), "gen"});
    CHECK(round == s);
  }
}
