#pragma once

#include <qrok/smith.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qrok {

// Finitely generated abelian group Z^rank + Z/d_1 + ... + Z/d_k, generators
// ordered free part first. Torsion orders need not form a divisibility chain
// for user-specified groups; canonical_decomposition produces chained ones.
struct FgAbelianGroup {
  long long rank = 0;
  std::vector<long long> torsion;  // each >= 2

  long long ngens() const { return rank + static_cast<long long>(torsion.size()); }
  BigInt order() const;  // torsion only; throws if rank > 0
  bool is_finite() const { return rank == 0; }
  bool is_trivial() const { return rank == 0 && torsion.empty(); }
  std::string str() const;
  bool operator==(const FgAbelianGroup& o) const { return rank == o.rank && torsion == o.torsion; }
};

// Element in generator coordinates: free part over Z, torsion part reduced
// into [0, d_i).
struct GroupElement {
  std::vector<BigInt> free;
  std::vector<BigInt> tors;

  bool operator==(const GroupElement& o) const { return free == o.free && tors == o.tors; }
};

GroupElement element(const FgAbelianGroup& g, std::vector<BigInt> coords);
GroupElement zero_element(const FgAbelianGroup& g);
GroupElement reduce(const FgAbelianGroup& g, GroupElement e);
GroupElement add(const FgAbelianGroup& g, const GroupElement& a, const GroupElement& b);
GroupElement negate(const FgAbelianGroup& g, const GroupElement& a);
GroupElement scale(const FgAbelianGroup& g, const BigInt& n, const GroupElement& a);
bool is_zero(const GroupElement& a);
std::string element_str(const GroupElement& a);

// Order of the element; nullopt for infinite order.
std::optional<BigInt> element_order(const FgAbelianGroup& g, const GroupElement& a);

// Quotient Z^ngens / row space of `relations`, in invariant-factor form.
FgAbelianGroup canonical_decomposition(const IntMat& relations, long long ngens);

// Nonzero elements with free coordinates in [-box, box] and torsion
// coordinates in [0, min(d_i - 1, box)], enumerated smallest-first
// (0, 1, -1, 2, -2, ... per free coordinate). Deterministic.
std::vector<GroupElement> enumerate_box(const FgAbelianGroup& g, long long box);

// All elements of a finite group (rank 0), lexicographic in coordinates.
std::vector<GroupElement> enumerate_all(const FgAbelianGroup& g);

}  // namespace qrok
