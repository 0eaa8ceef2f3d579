#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrok {

using Rational = mpq_class;

// mpz_class ships no long long interop, which makes every mixed expression
// with the index type ambiguous between its long and double overloads. This
// wrapper adds the missing constructors; the free operators below supply the
// missing mixed arithmetic. Everything else is inherited unchanged.
class BigInt : public mpz_class {
 public:
  BigInt() = default;
  using mpz_class::mpz_class;
  BigInt(long long v) : mpz_class(static_cast<long>(v)) {}
  BigInt(unsigned long long v) : mpz_class(static_cast<unsigned long>(v)) {}
  BigInt(const mpz_class& z) : mpz_class(z) {}
  BigInt(mpz_class&& z) : mpz_class(std::move(z)) {}
};

inline BigInt operator+(const mpz_class& a, long long b) { return BigInt(a + static_cast<long>(b)); }
inline BigInt operator+(long long a, const mpz_class& b) { return BigInt(static_cast<long>(a) + b); }
inline BigInt operator-(const mpz_class& a, long long b) { return BigInt(a - static_cast<long>(b)); }
inline BigInt operator-(long long a, const mpz_class& b) { return BigInt(static_cast<long>(a) - b); }
inline BigInt operator*(const mpz_class& a, long long b) { return BigInt(a * static_cast<long>(b)); }
inline BigInt operator*(long long a, const mpz_class& b) { return BigInt(static_cast<long>(a) * b); }
inline BigInt operator/(const mpz_class& a, long long b) { return BigInt(a / static_cast<long>(b)); }
inline BigInt operator%(const mpz_class& a, long long b) { return BigInt(a % static_cast<long>(b)); }
inline bool operator==(const mpz_class& a, long long b) { return a == static_cast<long>(b); }
inline bool operator==(long long a, const mpz_class& b) { return static_cast<long>(a) == b; }
inline bool operator!=(const mpz_class& a, long long b) { return a != static_cast<long>(b); }
inline bool operator!=(long long a, const mpz_class& b) { return static_cast<long>(a) != b; }
inline bool operator<(const mpz_class& a, long long b) { return a < static_cast<long>(b); }
inline bool operator<(long long a, const mpz_class& b) { return static_cast<long>(a) < b; }
inline bool operator<=(const mpz_class& a, long long b) { return a <= static_cast<long>(b); }
inline bool operator<=(long long a, const mpz_class& b) { return static_cast<long>(a) <= b; }
inline bool operator>(const mpz_class& a, long long b) { return a > static_cast<long>(b); }
inline bool operator>(long long a, const mpz_class& b) { return static_cast<long>(a) > b; }
inline bool operator>=(const mpz_class& a, long long b) { return a >= static_cast<long>(b); }
inline bool operator>=(long long a, const mpz_class& b) { return static_cast<long>(a) >= b; }
inline mpz_class& operator+=(mpz_class& a, long long b) { return a += static_cast<long>(b); }
inline mpz_class& operator-=(mpz_class& a, long long b) { return a -= static_cast<long>(b); }
inline mpz_class& operator*=(mpz_class& a, long long b) { return a *= static_cast<long>(b); }
inline mpz_class& operator/=(mpz_class& a, long long b) { return a /= static_cast<long>(b); }
inline mpz_class& operator%=(mpz_class& a, long long b) { return a %= static_cast<long>(b); }

// Every computation in this library is exact over Q except the operator-norm
// brackets, which are the single deliberate floating-point surface.

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StageMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CertificateFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Inconsistency : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// mpq_class(num, den) does not canonicalize; route all num/den construction
// through here.
inline Rational rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}
inline Rational rat(long num, long den = 1) { return rat(BigInt(num), BigInt(den)); }

// Accepts "p", "-p", "p/q". Used by the CLI for --epsilon and by spec documents.
Rational rat_parse(const std::string& text);

std::string rat_str(const Rational& q);
std::string int_str(const BigInt& n);

inline double rat_to_double(const Rational& q) { return q.get_d(); }

BigInt int_pow(const BigInt& base, unsigned long exp);

// p-adic valuation of n != 0.
long valuation(BigInt n, const BigInt& p);

// Trial-division factorization, ascending primes. Fine for the desk-scale
// integers this library meets (tower orders, stage factors).
std::vector<std::pair<BigInt, long>> factorize(BigInt n);

bool is_prime(const BigInt& n);

// Checked narrowing for indices and small orders.
long long to_ll(const BigInt& n);

}  // namespace qrok
