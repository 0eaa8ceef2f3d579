#include <qrok/matrix.hpp>

#include <sstream>

namespace qrok {

Rational rat_parse(const std::string& text) {
  std::string s = text;
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return rat(BigInt(s), BigInt(1));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    return rat(num, den);
  } catch (const std::invalid_argument&) {
    throw InvalidInput("cannot parse rational from \"" + text + "\"");
  }
}

std::string rat_str(const Rational& q) { return q.get_str(); }
std::string int_str(const BigInt& n) { return n.get_str(); }

BigInt int_pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

long valuation(BigInt n, const BigInt& p) {
  if (n == 0) throw InvalidInput("valuation of zero");
  if (p < 2) throw InvalidInput("valuation at non-prime base");
  long v = 0;
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    n /= p;
    ++v;
  }
  return v;
}

std::vector<std::pair<BigInt, long>> factorize(BigInt n) {
  if (n < 1) throw InvalidInput("factorize expects a positive integer");
  std::vector<std::pair<BigInt, long>> out;
  auto strip = [&](const BigInt& p) {
    long e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  };
  strip(2);
  for (BigInt p = 3; p * p <= n; p += 2) strip(p);
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime(const BigInt& n) {
  // 25 Miller-Rabin rounds; deterministic for anything this library sees.
  return mpz_probab_prime_p(n.get_mpz_t(), 25) != 0;
}

long long to_ll(const BigInt& n) {
  if (!n.fits_slong_p()) throw CapExceeded("integer too large for an index: " + int_str(n));
  return n.get_si();
}

RatMat::RatMat(long long rows, long long cols) : rows_(rows), cols_(cols), a_(rows * cols) {
  if (rows < 0 || cols < 0) throw InvalidInput("negative matrix dimension");
}

RatMat RatMat::identity(long long n) {
  RatMat m(n, n);
  for (long long i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMat RatMat::diagonal(const std::vector<Rational>& d) {
  RatMat m(d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

RatMat RatMat::operator+(const RatMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw StageMismatch("matrix shape mismatch in +");
  RatMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

RatMat RatMat::operator-(const RatMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw StageMismatch("matrix shape mismatch in -");
  RatMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

RatMat RatMat::operator*(const RatMat& o) const {
  if (cols_ != o.rows_) throw StageMismatch("matrix shape mismatch in *");
  RatMat r(rows_, o.cols_);
  Rational t;
  for (long long i = 0; i < rows_; ++i) {
    for (long long k = 0; k < cols_; ++k) {
      const Rational& aik = at(i, k);
      if (aik == 0) continue;
      for (long long j = 0; j < o.cols_; ++j) {
        const Rational& bkj = o.at(k, j);
        if (bkj == 0) continue;
        t = aik * bkj;
        r.at(i, j) += t;
      }
    }
  }
  return r;
}

RatMat RatMat::operator*(const Rational& s) const {
  RatMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
  return r;
}

bool RatMat::operator==(const RatMat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

RatMat RatMat::transpose() const {
  RatMat r(cols_, rows_);
  for (long long i = 0; i < rows_; ++i)
    for (long long j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Rational RatMat::trace() const {
  if (rows_ != cols_) throw InvalidInput("trace of a non-square matrix");
  Rational t = 0;
  for (long long i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

bool RatMat::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

bool RatMat::is_identity() const {
  if (rows_ != cols_) return false;
  for (long long i = 0; i < rows_; ++i)
    for (long long j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

Rational RatMat::max_abs() const {
  Rational m = 0;
  for (const auto& x : a_) {
    Rational v = abs(x);
    if (v > m) m = v;
  }
  return m;
}

Rational RatMat::frobenius_sq() const {
  Rational s = 0;
  for (const auto& x : a_) s += x * x;
  return s;
}

bool RatMat::is_diagonal() const {
  if (rows_ != cols_) return false;
  for (long long i = 0; i < rows_; ++i)
    for (long long j = 0; j < cols_; ++j)
      if (i != j && at(i, j) != 0) return false;
  return true;
}

RatMat RatMat::scale_rows(const std::vector<Rational>& d) const {
  if (static_cast<long long>(d.size()) != rows_) throw StageMismatch("scale_rows size mismatch");
  RatMat r(rows_, cols_);
  for (long long i = 0; i < rows_; ++i) {
    if (d[i] == 0) continue;
    for (long long j = 0; j < cols_; ++j) r.at(i, j) = d[i] * at(i, j);
  }
  return r;
}

RatMat RatMat::scale_cols(const std::vector<Rational>& d) const {
  if (static_cast<long long>(d.size()) != cols_) throw StageMismatch("scale_cols size mismatch");
  RatMat r(rows_, cols_);
  for (long long i = 0; i < rows_; ++i)
    for (long long j = 0; j < cols_; ++j)
      if (d[j] != 0) r.at(i, j) = at(i, j) * d[j];
  return r;
}

std::vector<Rational> RatMat::diagonal_entries() const {
  if (rows_ != cols_) throw InvalidInput("diagonal of a non-square matrix");
  std::vector<Rational> d(rows_);
  for (long long i = 0; i < rows_; ++i) d[i] = at(i, i);
  return d;
}

RatMat kron(const RatMat& a, const RatMat& b) {
  RatMat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (long long i = 0; i < a.rows(); ++i)
    for (long long j = 0; j < a.cols(); ++j) {
      const Rational& aij = a.at(i, j);
      if (aij == 0) continue;
      for (long long k = 0; k < b.rows(); ++k)
        for (long long l = 0; l < b.cols(); ++l) {
          const Rational& bkl = b.at(k, l);
          if (bkl == 0) continue;
          r.at(i * b.rows() + k, j * b.cols() + l) = aij * bkl;
        }
    }
  return r;
}

long long rational_rank(RatMat m) {
  long long rank = 0;
  long long row = 0;
  for (long long col = 0; col < m.cols() && row < m.rows(); ++col) {
    long long pivot = -1;
    for (long long i = row; i < m.rows(); ++i)
      if (m.at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row)
      for (long long j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(row, j));
    Rational inv = rat(1) / m.at(row, col);
    for (long long j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (long long i = 0; i < m.rows(); ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      Rational f = m.at(i, col);
      for (long long j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace qrok
