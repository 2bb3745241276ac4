#include "fxsv/linalg.hpp"

#include <stdexcept>

namespace fxsv {

RationalMatrix RationalMatrix::identity(size_t n) {
  RationalMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix add: shape mismatch");
  RationalMatrix r(a.rows_, a.cols_);
  for (size_t i = 0; i < a.entries_.size(); ++i)
    r.entries_[i] = a.entries_[i] + b.entries_[i];
  return r;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix sub: shape mismatch");
  RationalMatrix r(a.rows_, a.cols_);
  for (size_t i = 0; i < a.entries_.size(); ++i)
    r.entries_[i] = a.entries_[i] - b.entries_[i];
  return r;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_)
    throw std::invalid_argument("matrix mul: shape mismatch");
  RationalMatrix r(a.rows_, b.cols_);
  for (size_t i = 0; i < a.rows_; ++i)
    for (size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (size_t j = 0; j < b.cols_; ++j)
        r.at(i, j) = r.at(i, j) + aik * b.at(k, j);
    }
  return r;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] != o.entries_[i]) return false;
  return true;
}

size_t bareiss_rank(const RationalMatrix& m) {
  size_t rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return 0;

  // Scale each row to integers; scaling by a positive constant keeps rank.
  std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
  for (size_t r = 0; r < rows; ++r) {
    BigInt l(1);
    for (size_t c = 0; c < cols; ++c) {
      const BigInt& d = m.at(r, c).den();
      l = l.div_trunc(BigInt::gcd(l, d)) * d;
    }
    for (size_t c = 0; c < cols; ++c) {
      const Rational& e = m.at(r, c);
      a[r][c] = e.num() * l.div_trunc(e.den());
    }
  }

  size_t rank = 0;
  BigInt prev(1);
  std::vector<size_t> col_of(cols);
  for (size_t c = 0; c < cols; ++c) col_of[c] = c;

  while (rank < rows && rank < cols) {
    // Full pivot search over the remaining submatrix.
    size_t pr = rows, pc = cols;
    for (size_t r = rank; r < rows && pr == rows; ++r)
      for (size_t c = rank; c < cols; ++c)
        if (!a[r][col_of[c]].is_zero()) {
          pr = r;
          pc = c;
          break;
        }
    if (pr == rows) break;
    std::swap(a[rank], a[pr]);
    std::swap(col_of[rank], col_of[pc]);

    const BigInt pivot = a[rank][col_of[rank]];
    for (size_t r = rank + 1; r < rows; ++r) {
      for (size_t c = rank + 1; c < cols; ++c) {
        BigInt v = pivot * a[r][col_of[c]] - a[r][col_of[rank]] * a[rank][col_of[c]];
        a[r][col_of[c]] = v.div_trunc(prev);  // exact by Bareiss
      }
      a[r][col_of[rank]] = BigInt(0);
    }
    prev = pivot;
    ++rank;
  }
  return rank;
}

Polynomial char_poly(const RationalMatrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("char_poly: matrix not square");
  size_t n = a.rows();
  std::vector<Rational> c(n + 1);
  c[n] = Rational(1);
  RationalMatrix m = RationalMatrix::identity(n);
  for (size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      // M_k = A * M_{k-1} + c_{n-k+1} I
      m = a * m;
      for (size_t i = 0; i < n; ++i) m.at(i, i) = m.at(i, i) + c[n - k + 1];
    }
    RationalMatrix am = a * m;
    Rational tr;
    for (size_t i = 0; i < n; ++i) tr = tr + am.at(i, i);
    c[n - k] = -(tr / Rational(static_cast<int64_t>(k)));
  }
  return Polynomial(std::move(c));
}

RationalMatrix hcat(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
  RationalMatrix r(a.rows(), a.cols() + b.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
  }
  return r;
}

RationalMatrix vcat(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vcat: col mismatch");
  RationalMatrix r(a.rows() + b.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
  return r;
}

}  // namespace fxsv
