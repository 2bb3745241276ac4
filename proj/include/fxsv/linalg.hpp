#pragma once

#include <cstddef>
#include <vector>

#include "fxsv/polynomial.hpp"
#include "fxsv/rational.hpp"

namespace fxsv {

// Dense rational matrix, row-major.
class RationalMatrix {
 public:
  RationalMatrix() : rows_(0), cols_(0) {}
  RationalMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static RationalMatrix identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Rational& at(size_t r, size_t c) { return entries_[r * cols_ + c]; }
  const Rational& at(size_t r, size_t c) const { return entries_[r * cols_ + c]; }

  RationalMatrix transpose() const;

  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

  bool operator==(const RationalMatrix& o) const;

 private:
  size_t rows_, cols_;
  std::vector<Rational> entries_;
};

// Exact rank via fraction-free (Bareiss) elimination with full pivoting.
size_t bareiss_rank(const RationalMatrix& m);

// Monic characteristic polynomial det(zI - A) by the Faddeev-LeVerrier
// recurrence. Throws std::invalid_argument on non-square input.
Polynomial char_poly(const RationalMatrix& a);

// Horizontal/vertical concatenation helpers for the Kalman matrices.
RationalMatrix hcat(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix vcat(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace fxsv
