#pragma once

#include <qrok/rational.hpp>

#include <vector>

namespace qrok {

// Dense matrix over Q. Row-major, exact entries. Sizes stay small (total
// tensor dimension is capped), so clarity beats cleverness here.
class RatMat {
 public:
  RatMat() : rows_(0), cols_(0) {}
  RatMat(long long rows, long long cols);

  static RatMat identity(long long n);
  static RatMat zero(long long rows, long long cols) { return RatMat(rows, cols); }
  // Diagonal 0/1 matrix from a support set.
  static RatMat diagonal(const std::vector<Rational>& d);

  long long rows() const { return rows_; }
  long long cols() const { return cols_; }

  Rational& at(long long i, long long j) { return a_[i * cols_ + j]; }
  const Rational& at(long long i, long long j) const { return a_[i * cols_ + j]; }

  RatMat operator+(const RatMat& o) const;
  RatMat operator-(const RatMat& o) const;
  RatMat operator*(const RatMat& o) const;
  RatMat operator*(const Rational& s) const;
  bool operator==(const RatMat& o) const;

  RatMat transpose() const;
  Rational trace() const;
  bool is_zero() const;
  bool is_identity() const;

  // Largest absolute value of an entry; exact.
  Rational max_abs() const;
  // Sum of squares of entries (Frobenius norm squared); exact.
  Rational frobenius_sq() const;

  // Fast paths used by the witness machinery, where projections are diagonal.
  bool is_diagonal() const;
  RatMat scale_rows(const std::vector<Rational>& d) const;  // diag(d) * this
  RatMat scale_cols(const std::vector<Rational>& d) const;  // this * diag(d)
  std::vector<Rational> diagonal_entries() const;

 private:
  long long rows_, cols_;
  std::vector<Rational> a_;
};

RatMat kron(const RatMat& a, const RatMat& b);

// Rank over Q by fraction-free-ish Gaussian elimination. Exact.
long long rational_rank(RatMat m);

}  // namespace qrok
