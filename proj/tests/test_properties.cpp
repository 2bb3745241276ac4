#include <doctest.h>

#include <random>

#include "fxsv/linalg.hpp"
#include "fxsv/properties.hpp"

using namespace fxsv;

namespace {

std::mt19937_64 rng(0x9e0b1e55u);
Rational dec(const char* s) { return Rational::from_decimal(s); }

StateSpaceSystem make_system(size_t n, size_t m, size_t p) {
  StateSpaceSystem s;
  s.a = RationalMatrix(n, n);
  s.b = RationalMatrix(n, m);
  s.c = RationalMatrix(p, n);
  s.d = RationalMatrix(p, m);
  s.x0.assign(n, Rational(0));
  s.input_lo.assign(m, Rational(-1));
  s.input_hi.assign(m, Rational(1));
  return s;
}

QuantizedSystem quant(const StateSpaceSystem& s, uint32_t i = 4, uint32_t f = 8) {
  return quantize_system(s, FixedPointFormat(i, f));
}

}  // namespace

TEST_CASE("check_stability basics") {
  StateSpaceSystem s = make_system(1, 1, 1);
  s.a.at(0, 0) = Rational(0);
  s.b.at(0, 0) = Rational(1);
  s.c.at(0, 0) = Rational(1);
  Verdict v = check_stability(quant(s));
  CHECK(v.outcome == Outcome::kHolds);
  CHECK(v.property == Property::kStability);
  CHECK(std::get<StabilityEvidence>(v.evidence).characteristic.degree() == 1);

  s.a.at(0, 0) = Rational(1);
  CHECK(check_stability(quant(s)).outcome == Outcome::kViolated);

  StateSpaceSystem diag = make_system(2, 1, 1);
  diag.a.at(0, 0) = dec("0.5");
  diag.a.at(1, 1) = Rational(2);
  diag.b.at(0, 0) = Rational(1);
  diag.c.at(0, 0) = Rational(1);
  CHECK(check_stability(quant(diag)).outcome == Outcome::kViolated);
}

TEST_CASE("check_controllability basics") {
  StateSpaceSystem s = make_system(2, 1, 1);
  s.a.at(0, 1) = Rational(1);
  s.b.at(1, 0) = Rational(1);
  s.c.at(0, 0) = Rational(1);
  Verdict v = check_controllability(quant(s));
  CHECK(v.outcome == Outcome::kHolds);
  CHECK(std::get<RankEvidence>(v.evidence).rank == 2);

  // A = I, B = [1;1]: rank 1.
  StateSpaceSystem bad = make_system(2, 1, 1);
  bad.a = RationalMatrix::identity(2);
  bad.b.at(0, 0) = Rational(1);
  bad.b.at(1, 0) = Rational(1);
  bad.c.at(0, 0) = Rational(1);
  Verdict vb = check_controllability(quant(bad));
  CHECK(vb.outcome == Outcome::kViolated);
  CHECK(std::get<RankEvidence>(vb.evidence).rank == 1);
  CHECK(std::get<RankEvidence>(vb.evidence).required == 2);

  // Square invertible B is always controllable.
  StateSpaceSystem sq = make_system(2, 2, 1);
  sq.b.at(0, 0) = Rational(1);
  sq.b.at(1, 1) = dec("0.5");
  sq.c.at(0, 0) = Rational(1);
  CHECK(check_controllability(quant(sq)).outcome == Outcome::kHolds);
}

TEST_CASE("check_observability basics") {
  StateSpaceSystem s = make_system(2, 1, 1);
  s.a.at(0, 1) = Rational(1);
  s.b.at(1, 0) = Rational(1);
  // C = 0: nothing observable.
  CHECK(check_observability(quant(s)).outcome == Outcome::kViolated);
  // C = I (p = n): observable.
  StateSpaceSystem full = make_system(2, 1, 2);
  full.a.at(0, 1) = Rational(1);
  full.b.at(1, 0) = Rational(1);
  full.c = RationalMatrix::identity(2);
  CHECK(check_observability(quant(full)).outcome == Outcome::kHolds);
}

TEST_CASE("observability is transpose-dual to controllability") {
  for (int iter = 0; iter < 60; ++iter) {
    size_t n = 1 + rng() % 4, p = 1 + rng() % 2;
    StateSpaceSystem s = make_system(n, 1, p);
    auto rnd = [&]() {
      return Rational(BigInt(static_cast<int64_t>(rng() % 9) - 4), BigInt(4));
    };
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) s.a.at(i, j) = rnd();
    for (size_t i = 0; i < p; ++i)
      for (size_t j = 0; j < n; ++j) s.c.at(i, j) = rnd();
    s.b.at(0, 0) = Rational(1);
    QuantizedSystem q = quant(s);

    // Dual system: A^T with C^T as the input matrix.
    StateSpaceSystem dual = make_system(n, p, 1);
    dual.a = s.a.transpose();
    dual.b = s.c.transpose();
    dual.c.at(0, 0) = Rational(1);
    QuantizedSystem qd = quant(dual);

    CHECK(check_observability(q).outcome == check_controllability(qd).outcome);
    CHECK(std::get<RankEvidence>(check_observability(q).evidence).rank ==
          std::get<RankEvidence>(check_controllability(qd).evidence).rank);
  }
}

TEST_CASE("rank checks use exact products of quantized entries") {
  // In <2,4>, 0.0625 * 0.0625 underflows to 0 in fixed point, which would
  // make the [B, AB] column pair look dependent; the exact products keep
  // the true rank.
  StateSpaceSystem s = make_system(2, 1, 1);
  s.a.at(0, 0) = dec("0.0625");
  s.a.at(1, 1) = dec("0.5");
  s.b.at(0, 0) = dec("0.0625");
  s.b.at(1, 0) = Rational(1);
  s.c.at(0, 0) = Rational(1);
  QuantizedSystem q = quantize_system(s, FixedPointFormat(2, 4));

  // The fixed-point product really does underflow:
  CHECK(fx_mul(q.a.at(0, 0), q.b.at(0, 0)).raw() == 0);
  // ... yet the exact controllability matrix
  //   [ 1/16  1/256 ]
  //   [ 1     1/2   ]
  // has determinant 1/32 - 1/256 != 0.
  RationalMatrix ctrb = controllability_matrix(q.a.to_rational(), q.b.to_rational());
  CHECK(bareiss_rank(ctrb) == 2);
  CHECK(check_controllability(q).outcome == Outcome::kHolds);
}

TEST_CASE("stability is decided on the quantized coefficients") {
  // 0.97 is stable exactly; at <4,4> nearest it rounds to 1.0 (unstable).
  StateSpaceSystem s = make_system(1, 1, 1);
  s.a.at(0, 0) = dec("0.97");
  s.b.at(0, 0) = Rational(1);
  s.c.at(0, 0) = Rational(1);
  CHECK(check_stability(quantize_system(s, FixedPointFormat(4, 4))).outcome ==
        Outcome::kViolated);
  CHECK(check_stability(quantize_system(s, FixedPointFormat(8, 8))).outcome ==
        Outcome::kHolds);
}

TEST_CASE("closed-loop stability uses the fixed-point composition") {
  StateSpaceSystem s = make_system(1, 1, 1);
  s.a.at(0, 0) = dec("1.5");
  s.b.at(0, 0) = Rational(1);
  s.c.at(0, 0) = Rational(1);
  s.k = RationalMatrix(1, 1);
  s.k->at(0, 0) = Rational(1);  // A - BK = 0.5
  QuantizedSystem q = quantize_system(s, FixedPointFormat(3, 5));
  CHECK(check_stability(q).outcome == Outcome::kViolated);
  CHECK(check_stability(close_loop(q)).outcome == Outcome::kHolds);
}

TEST_CASE("verdict strings") {
  CHECK(to_string(Property::kQuantizationError) == "quantization-error");
  CHECK(property_from_string("stability") == Property::kStability);
  CHECK_THROWS(property_from_string("safety"));
  CHECK(to_string(Outcome::kUnknown) == "unknown");
}
