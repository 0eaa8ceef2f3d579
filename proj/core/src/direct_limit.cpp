#include <qrok/direct_limit.hpp>

namespace qrok {

DirectLimitSystem DirectLimitSystem::scalar_successor(long long stages) {
  if (stages < 1) throw InvalidInput("successor system needs at least one step");
  DirectLimitSystem sys;
  sys.rule = Rule::ScalarSuccessor;
  sys.rank0 = 1;
  sys.maps.reserve(static_cast<size_t>(stages));
  for (long long m = 0; m < stages; ++m) {
    IntMat f(1, 1);
    f.at(0, 0) = BigInt(m + 2);
    sys.maps.push_back(std::move(f));
  }
  return sys;
}

DirectLimitSystem DirectLimitSystem::explicit_maps(std::vector<IntMat> maps, long long rank0) {
  if (rank0 < 0) throw InvalidInput("negative rank");
  long long cur = rank0;
  for (size_t m = 0; m < maps.size(); ++m) {
    if (maps[m].cols != cur)
      throw InvalidInput("connecting map " + std::to_string(m) + " expects rank " +
                         std::to_string(maps[m].cols) + " but the previous stage has rank " +
                         std::to_string(cur));
    cur = maps[m].rows;
  }
  DirectLimitSystem sys;
  sys.rule = Rule::Explicit;
  sys.rank0 = rank0;
  sys.maps = std::move(maps);
  return sys;
}

long long DirectLimitSystem::rank_at(long long m) const {
  if (m < 0 || m > stages()) throw InvalidInput("stage out of range");
  return m == 0 ? rank0 : maps[static_cast<size_t>(m - 1)].rows;
}

namespace {

long long integer_rank(const IntMat& m) {
  return static_cast<long long>(smith_normal_form(m).invariant_factors().size());
}

}  // namespace

DirectLimitInvariants direct_limit_invariants(const DirectLimitSystem& sys,
                                              long long prime_bound) {
  if (sys.maps.empty()) throw InvalidInput("direct system has no connecting maps");
  DirectLimitInvariants out;

  // Ranks of the composite from stage 0 are nonincreasing, so the limit rank
  // visible from stage 0 is the final one and stabilization is the first
  // stage that already attains it.
  IntMat comp = IntMat::identity(sys.rank0);
  std::vector<long long> ranks = {sys.rank0};
  for (const IntMat& f : sys.maps) {
    comp = f * comp;
    ranks.push_back(integer_rank(comp));
  }
  out.rank = ranks.back();
  for (size_t m = 0; m < ranks.size(); ++m)
    if (ranks[m] == out.rank) {
      out.stabilized_at = static_cast<long long>(m);
      break;
    }

  std::vector<BigInt> factors;
  if (sys.rule == DirectLimitSystem::Rule::Explicit)
    factors = smith_normal_form(comp).invariant_factors();

  for (long long q = 2; q <= prime_bound; ++q) {
    if (!is_prime(BigInt(q))) continue;
    PrimeDivisibility cert;
    cert.p = BigInt(q);
    if (sys.rule == DirectLimitSystem::Rule::ScalarSuccessor) {
      cert.divides = true;
      cert.how = "the rule multiplies by " + std::to_string(q) + " at step " +
                 std::to_string(q - 1) +
                 " and by a multiple of it every " + std::to_string(q) +
                 " steps after that, so long composite windows pick it up without bound";
    } else {
      cert.divides = true;
      for (const BigInt& d : factors)
        if (d % q != 0) {
          cert.divides = false;
          cert.how = "invariant factor " + int_str(d) + " of the composite through stage " +
                     std::to_string(sys.stages()) + " is not divisible by " + std::to_string(q);
          break;
        }
      if (cert.divides)
        cert.how = "divides every invariant factor of the composite through stage " +
                   std::to_string(sys.stages()) + " (horizon-bounded certificate)";
    }
    out.primes.push_back(std::move(cert));
  }
  return out;
}

}  // namespace qrok
