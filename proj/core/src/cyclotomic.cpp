#include <qrok/cyclotomic.hpp>

#include <algorithm>

namespace qrok {

namespace {

// Exact division of integer polynomials (constant term first); the divisor
// must be monic and the remainder must vanish.
std::vector<BigInt> poly_divide_exact(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  if (den.empty() || den.back() != 1) throw Inconsistency("divisor is not monic");
  if (num.size() < den.size()) throw Inconsistency("degree dropped below the divisor");
  std::vector<BigInt> quot(num.size() - den.size() + 1, BigInt(0));
  for (long long i = static_cast<long long>(quot.size()) - 1; i >= 0; --i) {
    BigInt c = num[static_cast<size_t>(i) + den.size() - 1];
    quot[static_cast<size_t>(i)] = c;
    if (c == 0) continue;
    for (size_t j = 0; j < den.size(); ++j)
      num[static_cast<size_t>(i) + j] -= c * den[j];
  }
  for (const BigInt& c : num)
    if (c != 0) throw Inconsistency("cyclotomic division left a remainder");
  return quot;
}

}  // namespace

std::vector<BigInt> cyclotomic_poly(long long D) {
  if (D < 1) throw InvalidInput("cyclotomic index must be positive");
  // x^D - 1 divided by the cyclotomic polynomials of the proper divisors.
  std::vector<BigInt> num(static_cast<size_t>(D) + 1, BigInt(0));
  num[0] = -1;
  num[static_cast<size_t>(D)] = 1;
  for (long long d = 1; d < D; ++d)
    if (D % d == 0) num = poly_divide_exact(std::move(num), cyclotomic_poly(d));
  return num;
}

CycloReducer::CycloReducer(long long D) : d_(D), phi_(cyclotomic_poly(D)) {
  const size_t deg = phi_.size() - 1;
  root_.reserve(static_cast<size_t>(d_));
  Elem cur(deg, BigInt(0));
  cur[0] = 1;
  root_.push_back(cur);
  for (long long j = 1; j < d_; ++j) {
    // multiply by x, then reduce the single overflow coefficient
    Elem nxt(deg, BigInt(0));
    for (size_t i = 0; i + 1 < deg; ++i) nxt[i + 1] = cur[i];
    const BigInt top = cur[deg - 1];
    if (top != 0)
      for (size_t i = 0; i < deg; ++i) nxt[i] -= top * phi_[i];
    root_.push_back(nxt);
    cur = std::move(nxt);
  }
}

CycloReducer::Elem CycloReducer::zero() const {
  return Elem(static_cast<size_t>(degree()), BigInt(0));
}

CycloReducer::Elem CycloReducer::one() const {
  Elem e = zero();
  e[0] = 1;
  return e;
}

CycloReducer::Elem CycloReducer::root_power(const BigInt& e) const {
  BigInt r = ((e % d_) + d_) % d_;
  return root_[static_cast<size_t>(to_ll(r))];
}

CycloReducer::Elem CycloReducer::add(Elem a, const Elem& b) const {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

CycloReducer::Elem CycloReducer::sub(Elem a, const Elem& b) const {
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

CycloReducer::Elem CycloReducer::scaled(Elem a, const BigInt& c) const {
  for (BigInt& x : a) x *= c;
  return a;
}

CycloReducer::Elem CycloReducer::mul(const Elem& a, const Elem& b) const {
  const size_t deg = static_cast<size_t>(degree());
  std::vector<BigInt> conv(2 * deg - 1, BigInt(0));
  for (size_t i = 0; i < deg; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < deg; ++j)
      if (b[j] != 0) conv[i + j] += a[i] * b[j];
  }
  // fold the high part down with x^deg = -(phi minus leading term)
  for (long long i = static_cast<long long>(conv.size()) - 1;
       i >= static_cast<long long>(deg); --i) {
    const BigInt c = conv[static_cast<size_t>(i)];
    if (c == 0) continue;
    conv[static_cast<size_t>(i)] = 0;
    for (size_t j = 0; j < deg; ++j)
      conv[static_cast<size_t>(i) - deg + j] -= c * phi_[j];
  }
  conv.resize(deg);
  return conv;
}

bool CycloReducer::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](const BigInt& c) { return c == 0; });
}

std::optional<BigInt> CycloReducer::as_integer(const Elem& a) const {
  for (size_t i = 1; i < a.size(); ++i)
    if (a[i] != 0) return std::nullopt;
  return a[0];
}

}  // namespace qrok
