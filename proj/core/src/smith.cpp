#include <qrok/smith.hpp>

namespace qrok {

IntMat IntMat::identity(long long n) {
  IntMat m(n, n);
  for (long long i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
  if (cols != o.rows) throw StageMismatch("integer matrix shape mismatch in *");
  IntMat r(rows, o.cols);
  for (long long i = 0; i < rows; ++i)
    for (long long k = 0; k < cols; ++k) {
      if (at(i, k) == 0) continue;
      for (long long j = 0; j < o.cols; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

IntMat IntMat::transpose() const {
  IntMat r(cols, rows);
  for (long long i = 0; i < rows; ++i)
    for (long long j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

BigInt IntMat::det() const {
  if (rows != cols) throw InvalidInput("determinant of a non-square matrix");
  // Bareiss fraction-free elimination; exact over Z.
  IntMat m = *this;
  BigInt prev = 1;
  BigInt sign = 1;
  for (long long k = 0; k < rows - 1; ++k) {
    if (m.at(k, k) == 0) {
      long long p = -1;
      for (long long i = k + 1; i < rows; ++i)
        if (m.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (long long j = 0; j < cols; ++j) std::swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (long long i = k + 1; i < rows; ++i)
      for (long long j = k + 1; j < cols; ++j) {
        BigInt t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m.at(k, k);
  }
  return sign * m.at(rows - 1, rows - 1);
}

std::vector<BigInt> SmithResult::invariant_factors() const {
  std::vector<BigInt> out;
  long long n = std::min(d.rows, d.cols);
  for (long long i = 0; i < n; ++i)
    if (d.at(i, i) != 0) out.push_back(d.at(i, i));
  return out;
}

namespace {

struct Worker {
  IntMat m, u, v;

  explicit Worker(const IntMat& in)
      : m(in), u(IntMat::identity(in.rows)), v(IntMat::identity(in.cols)) {}

  void swap_rows(long long a, long long b) {
    if (a == b) return;
    for (long long j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
    for (long long j = 0; j < u.cols; ++j) std::swap(u.at(a, j), u.at(b, j));
  }
  void swap_cols(long long a, long long b) {
    if (a == b) return;
    for (long long i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
    for (long long i = 0; i < v.rows; ++i) std::swap(v.at(i, a), v.at(i, b));
  }
  // row a -= q * row b
  void row_sub(long long a, long long b, const BigInt& q) {
    if (q == 0) return;
    for (long long j = 0; j < m.cols; ++j) m.at(a, j) -= q * m.at(b, j);
    for (long long j = 0; j < u.cols; ++j) u.at(a, j) -= q * u.at(b, j);
  }
  // col a -= q * col b
  void col_sub(long long a, long long b, const BigInt& q) {
    if (q == 0) return;
    for (long long i = 0; i < m.rows; ++i) m.at(i, a) -= q * m.at(i, b);
    for (long long i = 0; i < v.rows; ++i) v.at(i, a) -= q * v.at(i, b);
  }
  void negate_row(long long a) {
    for (long long j = 0; j < m.cols; ++j) m.at(a, j) = -m.at(a, j);
    for (long long j = 0; j < u.cols; ++j) u.at(a, j) = -u.at(a, j);
  }

  // Smallest nonzero entry in the submatrix starting at (t, t).
  bool find_pivot(long long t, long long& pi, long long& pj) {
    bool found = false;
    BigInt best;
    for (long long i = t; i < m.rows; ++i)
      for (long long j = t; j < m.cols; ++j) {
        if (m.at(i, j) == 0) continue;
        BigInt v = abs(m.at(i, j));
        if (!found || v < best) {
          best = v;
          pi = i;
          pj = j;
          found = true;
        }
      }
    return found;
  }

  void clear_position(long long t) {
    for (;;) {
      long long pi = t, pj = t;
      if (!find_pivot(t, pi, pj)) return;
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool dirty = false;
      for (long long i = t + 1; i < m.rows; ++i) {
        if (m.at(i, t) == 0) continue;
        BigInt q = m.at(i, t) / m.at(t, t);  // C++ truncation is fine; we loop to fixpoint
        row_sub(i, t, q);
        if (m.at(i, t) != 0) dirty = true;
      }
      for (long long j = t + 1; j < m.cols; ++j) {
        if (m.at(t, j) == 0) continue;
        BigInt q = m.at(t, j) / m.at(t, t);
        col_sub(j, t, q);
        if (m.at(t, j) != 0) dirty = true;
      }
      if (!dirty) {
        bool clean = true;
        for (long long i = t + 1; i < m.rows && clean; ++i)
          if (m.at(i, t) != 0) clean = false;
        for (long long j = t + 1; j < m.cols && clean; ++j)
          if (m.at(t, j) != 0) clean = false;
        if (clean) return;
      }
    }
  }
};

}  // namespace

SmithResult smith_normal_form(const IntMat& in) {
  Worker w(in);
  const long long n = std::min(in.rows, in.cols);
  // Diagonalize, then repair divisibility violations by folding the offending
  // column in and re-diagonalizing. Each fold strictly shrinks a diagonal
  // entry to a proper divisor, so the loop terminates; the cap turns a logic
  // bug into a loud failure instead of a hang.
  for (long long guard = 0;; ++guard) {
    if (guard > 10000) throw Inconsistency("smith normal form failed to stabilize");
    for (long long t = 0; t < n; ++t) w.clear_position(t);
    long long vi = -1, vj = -1;
    for (long long i = 0; i < n && vi < 0; ++i) {
      if (w.m.at(i, i) == 0) continue;
      for (long long j = i + 1; j < n; ++j) {
        if (w.m.at(j, j) == 0) continue;
        if (!mpz_divisible_p(w.m.at(j, j).get_mpz_t(), w.m.at(i, i).get_mpz_t())) {
          vi = i;
          vj = j;
          break;
        }
      }
    }
    if (vi < 0) break;
    w.col_sub(vi, vj, BigInt(-1));  // col vi += col vj; re-diagonalization takes the gcd
  }

  for (long long i = 0; i < n; ++i)
    if (w.m.at(i, i) < 0) w.negate_row(i);

  return {w.u, w.m, w.v};
}

std::optional<std::vector<BigInt>> solve_integer(const IntMat& a, const std::vector<BigInt>& b) {
  if (static_cast<long long>(b.size()) != a.rows)
    throw InvalidInput("solve_integer dimension mismatch");
  SmithResult s = smith_normal_form(a);
  // a x = b  <=>  d (v^-1 x) = u b; solve for y = v^-1 x and set x = v y.
  std::vector<BigInt> ub(a.rows, BigInt(0));
  for (long long i = 0; i < a.rows; ++i)
    for (long long j = 0; j < a.rows; ++j) ub[i] += s.u.at(i, j) * b[j];
  std::vector<BigInt> y(a.cols, BigInt(0));
  long long n = std::min(a.rows, a.cols);
  for (long long i = 0; i < a.rows; ++i) {
    BigInt di = (i < n) ? s.d.at(i, i) : BigInt(0);
    if (di == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else {
      if (!mpz_divisible_p(ub[i].get_mpz_t(), di.get_mpz_t())) return std::nullopt;
      y[i] = ub[i] / di;
    }
  }
  std::vector<BigInt> x(a.cols, BigInt(0));
  for (long long i = 0; i < a.cols; ++i)
    for (long long j = 0; j < a.cols; ++j) x[i] += s.v.at(i, j) * y[j];
  return x;
}

}  // namespace qrok
