#include "fxsv/properties.hpp"

#include "fxsv/linalg.hpp"
#include "fxsv/stability.hpp"

namespace fxsv {

std::string to_string(Property p) {
  switch (p) {
    case Property::kStability: return "stability";
    case Property::kControllability: return "controllability";
    case Property::kObservability: return "observability";
    case Property::kQuantizationError: return "quantization-error";
  }
  return "?";
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::kHolds: return "holds";
    case Outcome::kViolated: return "violated";
    case Outcome::kUnknown: return "unknown";
  }
  return "?";
}

Property property_from_string(const std::string& s) {
  if (s == "stability") return Property::kStability;
  if (s == "controllability") return Property::kControllability;
  if (s == "observability") return Property::kObservability;
  if (s == "quantization-error") return Property::kQuantizationError;
  throw std::invalid_argument("unknown property: " + s);
}

namespace {
using Clock = std::chrono::steady_clock;
}

Verdict check_stability(const QuantizedSystem& qsys) {
  auto start = Clock::now();
  Polynomial p = char_poly(qsys.a.to_rational());
  bool stable = jury_stable(p);
  Verdict v;
  v.property = Property::kStability;
  v.outcome = stable ? Outcome::kHolds : Outcome::kViolated;
  v.evidence = StabilityEvidence{std::move(p)};
  v.wall_time = Clock::now() - start;
  return v;
}

RationalMatrix controllability_matrix(const RationalMatrix& a,
                                      const RationalMatrix& b) {
  RationalMatrix block = b;
  RationalMatrix result = b;
  for (size_t i = 1; i < a.rows(); ++i) {
    block = a * block;  // A^i B
    result = hcat(result, block);
  }
  return result;
}

RationalMatrix observability_matrix(const RationalMatrix& a,
                                    const RationalMatrix& c) {
  RationalMatrix block = c;
  RationalMatrix result = c;
  for (size_t i = 1; i < a.rows(); ++i) {
    block = block * a;  // C A^i
    result = vcat(result, block);
  }
  return result;
}

Verdict check_controllability(const QuantizedSystem& qsys) {
  auto start = Clock::now();
  RationalMatrix ctrb =
      controllability_matrix(qsys.a.to_rational(), qsys.b.to_rational());
  size_t rank = bareiss_rank(ctrb);
  Verdict v;
  v.property = Property::kControllability;
  v.outcome = rank == qsys.n() ? Outcome::kHolds : Outcome::kViolated;
  v.evidence = RankEvidence{rank, qsys.n()};
  v.wall_time = Clock::now() - start;
  return v;
}

Verdict check_observability(const QuantizedSystem& qsys) {
  auto start = Clock::now();
  RationalMatrix obsv =
      observability_matrix(qsys.a.to_rational(), qsys.c.to_rational());
  size_t rank = bareiss_rank(obsv);
  Verdict v;
  v.property = Property::kObservability;
  v.outcome = rank == qsys.n() ? Outcome::kHolds : Outcome::kViolated;
  v.evidence = RankEvidence{rank, qsys.n()};
  v.wall_time = Clock::now() - start;
  return v;
}

}  // namespace fxsv
