#pragma once

#include <qrok/smith.hpp>

#include <string>
#include <vector>

namespace qrok {

// Direct system of free abelian groups Z^{r_0} -> Z^{r_1} -> ... given either
// by an explicit finite table of connecting matrices or by the successor rule
// (rank one, multiply by m+2 at step m). The rule carries its own analytic
// certificates; a table only supports horizon-bounded statements.
struct DirectLimitSystem {
  enum class Rule { Explicit, ScalarSuccessor };

  Rule rule = Rule::Explicit;
  long long rank0 = 0;
  std::vector<IntMat> maps;  // maps[m] sends stage m to stage m+1

  // Z -> Z -> ... with multipliers 2, 3, ..., stages+1.
  static DirectLimitSystem scalar_successor(long long stages);
  static DirectLimitSystem explicit_maps(std::vector<IntMat> maps, long long rank0);

  long long stages() const { return static_cast<long long>(maps.size()); }
  long long rank_at(long long m) const;
};

struct PrimeDivisibility {
  BigInt p;
  bool divides = false;
  std::string how;
};

struct DirectLimitInvariants {
  long long rank = 0;           // rank over the rationals of the composite
  long long stabilized_at = 0;  // first stage whose composite already has that rank
  std::vector<PrimeDivisibility> primes;
};

// Rank of the limit tensored with the rationals, plus per-prime divisibility
// certificates for primes up to `prime_bound`. Successor systems certify all
// primes analytically; explicit tables certify only through their horizon.
DirectLimitInvariants direct_limit_invariants(const DirectLimitSystem& sys,
                                              long long prime_bound = 97);

}  // namespace qrok
