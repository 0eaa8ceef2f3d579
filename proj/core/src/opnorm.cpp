#include <qrok/opnorm.hpp>

#include <cmath>
#include <vector>

namespace qrok {

namespace {

// Relative safety margin absorbing binary64 rounding across the squaring
// cascade. Deliberately generous; the bracket width budget in the acceptance
// contracts is 1e-9 and this costs ~1e-11.
constexpr double kSafety = 1e-11;

struct Dense {
  long long n = 0;
  std::vector<double> a;
  double& at(long long i, long long j) { return a[i * n + j]; }
  double at(long long i, long long j) const { return a[i * n + j]; }
};

Dense to_double(const RatMat& m) {
  Dense d;
  d.n = m.rows();
  d.a.resize(d.n * d.n);
  for (long long i = 0; i < d.n; ++i)
    for (long long j = 0; j < d.n; ++j) d.at(i, j) = rat_to_double(m.at(i, j));
  return d;
}

double frob(const Dense& m) {
  double s = 0;
  for (double v : m.a) s += v * v;
  return std::sqrt(s);
}

Dense square(const Dense& m, double scale) {
  Dense r;
  r.n = m.n;
  r.a.assign(m.n * m.n, 0.0);
  const double inv = 1.0 / scale;
  for (long long i = 0; i < m.n; ++i)
    for (long long k = 0; k < m.n; ++k) {
      double v = m.at(i, k) * inv;
      if (v == 0) continue;
      for (long long j = 0; j < m.n; ++j) r.at(i, j) += v * m.at(k, j) * inv;
    }
  return r;
}

std::vector<double> matvec(const Dense& m, const std::vector<double>& v) {
  std::vector<double> w(m.n, 0.0);
  for (long long i = 0; i < m.n; ++i) {
    double s = 0;
    for (long long j = 0; j < m.n; ++j) s += m.at(i, j) * v[j];
    w[i] = s;
  }
  return w;
}

double norm2(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Rayleigh quotient of a PSD symmetric matrix never exceeds lambda_max, so
// any vector yields a valid (pre-rounding) lower bound.
double rayleigh(const Dense& m, const std::vector<double>& v) {
  double vv = 0;
  for (double x : v) vv += x * x;
  if (vv == 0) return 0;
  auto mv = matvec(m, v);
  double vmv = 0;
  for (long long i = 0; i < m.n; ++i) vmv += v[i] * mv[i];
  if (vmv < 0) return 0;
  return vmv / vv;
}

// Exact square root of a nonnegative rational if it exists.
bool exact_sqrt(const Rational& q, Rational& out) {
  BigInt num = q.get_num(), den = q.get_den();
  if (num < 0) return false;
  if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    BigInt rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    out = rat(rn, rd);
    return true;
  }
  return false;
}

}  // namespace

NormBracket op_norm_bracket(const RatMat& x, double tol, int max_steps) {
  if (x.rows() == 0 || x.cols() == 0) return {0, 0, true, true};
  if (x.is_zero()) return {0, 0, true, true};

  RatMat s = x.transpose() * x;  // exact PSD Gram matrix

  // Exact fast path: diagonal Gram matrix (covers permutation unitaries,
  // diagonal projections, and their scalar multiples). lambda_max is the top
  // diagonal entry, an exact rational.
  if (s.is_diagonal()) {
    Rational lam = 0;
    for (long long i = 0; i < s.rows(); ++i)
      if (s.at(i, i) > lam) lam = s.at(i, i);
    Rational root;
    if (exact_sqrt(lam, root)) {
      double v = rat_to_double(root);
      return {v, v, true, true};
    }
    double lv = rat_to_double(lam);
    double r = std::sqrt(lv);
    return {r * (1 - kSafety), r * (1 + kSafety), true, false};
  }

  // Exact power-of-four rescale keeping the double conversion in range;
  // scaling by 4^e is exact in both arithmetics and pulls out a factor 2^e
  // of the operator norm.
  long e = 0;
  {
    Rational m = s.max_abs();
    double md = rat_to_double(m);
    if (md == 0 || !std::isfinite(md)) {
      long num_bits = static_cast<long>(mpz_sizeinbase(m.get_num().get_mpz_t(), 2));
      long den_bits = static_cast<long>(mpz_sizeinbase(m.get_den().get_mpz_t(), 2));
      e = (num_bits - den_bits) / 2;
    } else {
      int ex = 0;
      std::frexp(md, &ex);
      if (ex > 500 || ex < -500) e = ex / 2;
    }
    if (e != 0) {
      Rational scale = rat(1);
      if (e > 0)
        scale = rat(BigInt(1), int_pow(BigInt(4), static_cast<unsigned long>(e)));
      else
        scale = Rational(int_pow(BigInt(4), static_cast<unsigned long>(-e)));
      s = s * scale;
    }
  }
  const double post = std::ldexp(1.0, static_cast<int>(e));  // multiply roots back by 2^e

  Dense d = to_double(s);

  // Upper estimate: log2 lambda_max <= sum_j log2(f_j) / 2^j with f_j the
  // Frobenius norms of the rescaled squarings. Tail terms have f <= 1 after
  // the first step, so truncating the sum keeps a valid upper bound.
  // Lower estimate: Rayleigh quotients on the original Gram matrix, seeded by
  // the squared iterates (which concentrate on the top eigenspace).
  std::vector<double> seed(d.n, 1.0);
  for (long long i = 0; i < d.n; ++i) seed[i] += 1e-3 * static_cast<double>(i % 7);

  double log2_upper = 0;
  double best_lower = rayleigh(d, seed);
  Dense cur = d;
  bool converged = false;
  double upper = 0, lower = 0;

  for (int k = 0; k <= max_steps; ++k) {
    double f = frob(cur);
    if (!std::isfinite(f)) throw Inconsistency("operator norm bracket overflowed binary64");
    if (f == 0) break;  // numerically nilpotent tail; dropping it is conservative
    log2_upper += std::log2(f) / std::ldexp(1.0, k);

    auto v = matvec(cur, seed);
    double nv = norm2(v);
    if (nv > 0) {
      for (double& t : v) t /= nv;
      // A few plain power steps polish the Rayleigh estimate.
      for (int it = 0; it < 3; ++it) {
        v = matvec(d, v);
        double n2 = norm2(v);
        if (n2 == 0) break;
        for (double& t : v) t /= n2;
      }
      double r = rayleigh(d, v);
      if (r > best_lower) best_lower = r;
    }

    double up_lam = std::exp2(log2_upper);
    upper = std::sqrt(up_lam) * (1 + kSafety) * post;
    lower = std::sqrt(std::max(0.0, best_lower)) * (1 - kSafety) * post;
    if (lower > upper) lower = upper;
    if (upper - lower <= tol * std::max(1.0, upper)) {
      converged = true;
      break;
    }
    if (k < max_steps) cur = square(cur, f);
  }

  if (upper == 0 && lower == 0 && !converged) {
    // Every Frobenius norm vanished numerically; the matrix is zero to
    // binary64 resolution but not exactly, so report a degenerate sliver.
    upper = 1e-150;
    converged = true;
  }
  return {lower, upper, converged, false};
}

NormBracket op_norm_bracket(const StageElement& x, double tol, int max_steps) {
  return op_norm_bracket(x.matrix(), tol, max_steps);
}

}  // namespace qrok
