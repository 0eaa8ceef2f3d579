#pragma once

#include <qrok/rational.hpp>

#include <string>
#include <vector>

namespace qrok {

// Permutation of {0, ..., n-1}. External text format is 1-based disjoint
// cycle notation, e.g. "(1 2 3)(5 6)"; "()" is the identity.
class Perm {
 public:
  Perm() = default;
  static Perm identity(long long n);
  // Validates that images form a bijection.
  static Perm from_images(std::vector<long long> images);
  // i -> i + step (mod n); the image of a cyclic-group generator acting by
  // translation. step may be any integer, including negative.
  static Perm translation(long long n, const BigInt& step);
  static Perm parse_cycles(const std::string& text, long long n);

  long long degree() const { return static_cast<long long>(img_.size()); }
  long long operator()(long long i) const { return img_[i]; }

  // (a * b)(x) = a(b(x)): left action composition.
  friend Perm operator*(const Perm& a, const Perm& b);
  Perm inverse() const;
  Perm power(const BigInt& k) const;

  bool is_identity() const;
  long long fixed_points() const;
  std::vector<std::vector<long long>> orbits() const;
  // Least common multiple of cycle lengths.
  BigInt order() const;
  // True when every orbit has the same given length (free action of a cyclic
  // group generated by this permutation, when length equals the order).
  bool all_orbits_have_length(long long len) const;

  std::string cycle_str() const;

  bool operator==(const Perm& o) const { return img_ == o.img_; }

  // Action on the product {0..m-1} x {0..n-1}, point (i, j) <-> i * n + j.
  static Perm product(const Perm& a, const Perm& b);

 private:
  std::vector<long long> img_;
};

}  // namespace qrok
