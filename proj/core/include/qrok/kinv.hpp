#pragma once

#include <qrok/abelian.hpp>

#include <optional>
#include <string>
#include <utility>

namespace qrok {

// Closed-form K-groups of the algebra attached to a trivial-intersection
// embedding of a group of free rank r. Ranks are dimensions of rational
// vector spaces; nullopt marks the countably-infinite-dimensional case.
struct KInvariants {
  std::optional<std::pair<BigInt, BigInt>> ranks;  // (K0, K1); nullopt = Q^(N) in both
  std::string order;                               // K0 order structure descriptor
  bool hypothesis_flag = false;  // caller-certified freeness hypothesis, echoed into reports
  std::string note;
};

KInvariants k_invariants(const FgAbelianGroup& g, bool hypothesis_flag);
KInvariants k_invariants_infinite_rank(bool hypothesis_flag);

}  // namespace qrok
