#pragma once

#include <qrok/action.hpp>
#include <qrok/cyclotomic.hpp>
#include <qrok/smith.hpp>

#include <string>
#include <vector>

namespace qrok {

// Dual group of a finite abelian H given by its torsion orders. Characters
// are indexed 0..|H|-1 through exponent tuples in mixed radix, rightmost
// coordinate fastest, the same order element enumeration uses. Values are
// powers of a primitive root of unity of order lcm(d_i), kept exact.
class CharacterTable {
 public:
  explicit CharacterTable(std::vector<long long> torsion);

  const std::vector<long long>& torsion() const { return torsion_; }
  long long group_order() const { return order_; }
  long long count() const { return order_; }  // |dual| = |H|
  long long root_order() const { return red_.order(); }
  const CycloReducer& reducer() const { return red_; }

  std::vector<long long> tuple(long long idx) const;
  long long index(const std::vector<long long>& tup) const;
  std::string label(long long idx) const;  // e.g. "chi(0,1)"

  // Exponent e with chi_idx(h) = zeta^e, zeta the primitive root.
  long long exponent(long long idx, const std::vector<BigInt>& h) const;
  CycloReducer::Elem value(long long idx, const std::vector<BigInt>& h) const;

  long long dual_mul(long long a, long long b) const;
  long long dual_inverse(long long a) const;

  // All |H| element coordinate tuples, rightmost coordinate fastest.
  std::vector<std::vector<BigInt>> elements() const;

  // (1/|H|) sum_h chi_a(h) conj(chi_b(h)) = delta_ab, exactly.
  bool check_orthogonality() const;

 private:
  std::vector<long long> torsion_;
  long long order_;
  CycloReducer red_;
};

// Multiplicity of the character in the permutation representation:
// (1/|H|) sum_h fix(h) chi(h)^{-1}. A non-integer or negative result means
// the action is not a valid H-action and raises Inconsistency.
long long perm_character_multiplicity(const CharacterTable& table,
                                      const PermutationAction& action, long long chi);

// Multiplicity matrix of one inclusion step of the crossed product:
// M[chi'][chi] = m(chi' * chi^{-1}) for the incoming action. Columns sum to
// the point count and the matrix is a convolution over the dual group.
IntMat bratteli_step(const CharacterTable& table, const PermutationAction& action);

}  // namespace qrok
