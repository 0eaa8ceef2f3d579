#include <qrok/kinv.hpp>

namespace qrok {

namespace {
const char* kOrder = "trace-induced strict order with distinguished unit";
}

KInvariants k_invariants(const FgAbelianGroup& g, bool hypothesis_flag) {
  KInvariants k;
  k.order = kOrder;
  k.hypothesis_flag = hypothesis_flag;
  if (g.rank >= 1) {
    // K0 and K1 each have dimension 2^(r-1), so together they double to 2^r.
    BigInt half = int_pow(BigInt(2), static_cast<unsigned long>(g.rank - 1));
    k.ranks = std::make_pair(half, half);
    k.note = "free rank " + std::to_string(g.rank) +
             "; the two K-groups each have rational dimension 2^(r-1)";
  } else {
    // The exponent formula degenerates at rank zero. A finite group with the
    // freeness hypothesis yields the universal UHF algebra, an AF limit, so
    // K1 vanishes and K0 is the rationals with its usual order.
    k.ranks = std::make_pair(BigInt(1), BigInt(0));
    k.note = "finite group " + g.str() +
             "; the crossed product is the universal UHF algebra and K1 of an AF limit is 0";
  }
  return k;
}

KInvariants k_invariants_infinite_rank(bool hypothesis_flag) {
  KInvariants k;
  k.order = kOrder;
  k.hypothesis_flag = hypothesis_flag;
  k.ranks = std::nullopt;
  k.note = "infinite free rank; both K-groups are rational vector spaces of countably "
           "infinite dimension";
  return k;
}

}  // namespace qrok
