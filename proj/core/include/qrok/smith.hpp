#pragma once

#include <qrok/rational.hpp>

#include <optional>
#include <vector>

namespace qrok {

// Dense integer matrix, kept separate from RatMat because the Smith normal
// form pipeline wants pure integer row/column operations.
struct IntMat {
  long long rows = 0, cols = 0;
  std::vector<BigInt> a;

  IntMat() = default;
  IntMat(long long r, long long c) : rows(r), cols(c), a(r * c) {}
  static IntMat identity(long long n);

  BigInt& at(long long i, long long j) { return a[i * cols + j]; }
  const BigInt& at(long long i, long long j) const { return a[i * cols + j]; }

  IntMat operator*(const IntMat& o) const;
  IntMat transpose() const;
  bool operator==(const IntMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  // Exact determinant by fraction-free expansion; used by tests to certify
  // unimodularity of the SNF transforms.
  BigInt det() const;
};

// u * m * v = d with u, v unimodular and d diagonal, d_1 | d_2 | ..., all
// diagonal entries nonnegative.
struct SmithResult {
  IntMat u, d, v;
  // Nonzero diagonal entries in divisibility order.
  std::vector<BigInt> invariant_factors() const;
};

SmithResult smith_normal_form(const IntMat& m);

// Solve a x = b over the integers; nullopt when no integral solution exists.
std::optional<std::vector<BigInt>> solve_integer(const IntMat& a, const std::vector<BigInt>& b);

}  // namespace qrok
