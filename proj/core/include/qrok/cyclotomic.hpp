#pragma once

#include <qrok/rational.hpp>

#include <optional>
#include <vector>

namespace qrok {

// Coefficients of the D-th cyclotomic polynomial, constant term first.
std::vector<BigInt> cyclotomic_poly(long long D);

// Exact arithmetic in Z[x]/Phi_D(x), the ring of integers of the D-th
// cyclotomic field. Elements are coordinate vectors in the power basis
// 1, x, ..., x^(phi(D)-1); x is a primitive D-th root of unity, so root
// powers are taken mod D.
class CycloReducer {
 public:
  explicit CycloReducer(long long D);

  using Elem = std::vector<BigInt>;

  long long order() const { return d_; }
  long long degree() const { return static_cast<long long>(phi_.size()) - 1; }

  Elem zero() const;
  Elem one() const;
  Elem root_power(const BigInt& e) const;  // x^(e mod D)
  Elem add(Elem a, const Elem& b) const;
  Elem sub(Elem a, const Elem& b) const;
  Elem scaled(Elem a, const BigInt& c) const;
  Elem mul(const Elem& a, const Elem& b) const;
  bool is_zero(const Elem& a) const;

  // The rational integer the element equals, if it equals one.
  std::optional<BigInt> as_integer(const Elem& a) const;

 private:
  long long d_;
  std::vector<BigInt> phi_;          // monic, constant term first
  std::vector<Elem> root_;           // x^j reduced, j = 0..D-1
};

}  // namespace qrok
