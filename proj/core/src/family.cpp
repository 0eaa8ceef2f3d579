#include <qrok/family.hpp>

#include <algorithm>
#include <set>

namespace qrok {

namespace {

// Accumulate a finite factor into the exponent map.
void absorb_factor(SupernaturalNumber& s, const BigInt& n) {
  for (const auto& [p, e] : factorize(n)) {
    auto& slot = s.exponents[p];
    if (slot) *slot += e;
  }
}

void set_infinite(SupernaturalNumber& s, const BigInt& p) { s.exponents[p] = std::nullopt; }

}  // namespace

SupernaturalNumber ActionFamily::accumulated_supernatural(long long stages) const {
  if (stages < 1) throw InvalidInput("need at least one stage");
  SupernaturalNumber s;
  s.complete = false;  // concrete counts only; nothing certifies the tail
  long long top = stages;
  if (auto lim = levels()) top = std::min(top, *lim);
  for (long long l = 1; l <= top; ++l)
    absorb_factor(s, BigInt(level_action(l).points()));
  return s;
}

// ---------------------------------------------------------------------------
// CyclicHomFamily

namespace {

// How the divisibility d | n_l behaves across levels of a rule sequence.
struct DivisibilityProfile {
  enum class Kind { EveryLevelFrom, Recurs, Never, UnknownBeyond };
  Kind kind = Kind::UnknownBeyond;
  long long from = 0;  // EveryLevelFrom: holds for all l > from; UnknownBeyond: table end
  std::string reason;
};

DivisibilityProfile divisibility_profile(long long d, const FactorSequence& seq) {
  using K = DivisibilityProfile::Kind;
  DivisibilityProfile out;
  switch (seq.rule()) {
    case FactorSequence::Rule::Constant: {
      long long c = seq.constant_value();
      if (c % d == 0) {
        out = {K::EveryLevelFrom, 0,
               std::to_string(d) + " divides the constant factor " + std::to_string(c)};
      } else {
        out = {K::Never, 0,
               std::to_string(d) + " never divides the constant factor " + std::to_string(c)};
      }
      return out;
    }
    case FactorSequence::Rule::Linear:
      // n_l = l + 1 hits every residue class; multiples of d recur forever.
      out = {K::Recurs, 0, "n_l = l + 1 is divisible by " + std::to_string(d) +
                               " at every level l = " + std::to_string(d) + "k - 1"};
      return out;
    case FactorSequence::Rule::Factorial: {
      // (l+1)! picks up every prime power of d once l is large enough; find
      // the first level exactly, falling back to the guaranteed bound l+1 = d.
      long long from = d - 1;
      BigInt f = 1;
      const BigInt dd(d);
      for (long long l = 1; l < d; ++l) {
        f = (f * ((l + 1) % d)) % dd;
        if (f == 0) {
          from = l - 1;
          break;
        }
        if (l > 2'000'000) break;  // huge d: settle for the coarse bound
      }
      out = {K::EveryLevelFrom, from,
             "(l+1)! is divisible by " + std::to_string(d) + " for every level l > " +
                 std::to_string(from)};
      return out;
    }
    case FactorSequence::Rule::PrimePower: {
      long long p = seq.prime();
      long long e = 0;
      long long rest = d;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      if (rest == 1) {
        out = {K::EveryLevelFrom, e - 1,
               std::to_string(d) + " = " + std::to_string(p) + "^" + std::to_string(e) +
                   " divides p^l for every level l >= " + std::to_string(e)};
      } else {
        out = {K::Never, 0, std::to_string(d) + " has a prime factor other than " +
                                std::to_string(p) + ", so it never divides p^l"};
      }
      return out;
    }
    case FactorSequence::Rule::Table: {
      long long len = *seq.length();
      out = {K::UnknownBeyond, len,
             "the factor table ends at level " + std::to_string(len)};
      return out;
    }
  }
  throw Inconsistency("unhandled factor sequence rule");
}

}  // namespace

CyclicHomFamily::CyclicHomFamily(long long d, FactorSequence seq, Mode mode)
    : d_(d), seq_(std::move(seq)), mode_(mode) {
  if (d_ < 2) throw InvalidInput("cyclic order must be at least 2");
  pres_.generators = {"h"};
  pres_.relators = {Word(static_cast<size_t>(d_), 1)};  // h^d
}

std::optional<std::vector<long long>> CyclicHomFamily::h_torsion() const {
  return std::vector<long long>{d_};
}

PermutationAction CyclicHomFamily::level_action(long long l) const {
  if (!seq_.supports_level(l))
    throw InvalidInput("level " + std::to_string(l) + " is beyond the factor table");
  long long n = seq_.factor_ll(l);
  BigInt step = 0;
  if (mode_ == Mode::RegularMultiple && n % d_ == 0) step = n / d_;
  return action_from_generators(pres_, {Perm::translation(n, step)});
}

bool CyclicHomFamily::element_is_identity(const std::vector<BigInt>& h) const {
  if (h.size() != 1) throw InvalidInput("cyclic group element needs one coordinate");
  return h[0] % d_ == 0;
}

ActionFamily::Freeness CyclicHomFamily::freeness_tail(const std::vector<BigInt>& h) const {
  if (h.size() != 1) throw InvalidInput("cyclic group element needs one coordinate");
  using K = Freeness::Kind;
  BigInt c = ((h[0] % d_) + d_) % d_;
  if (c == 0) return {K::NeverFreeBeyond, 0, "the element is the identity in Z/" + std::to_string(d_)};
  if (mode_ == Mode::Trivial)
    return {K::NeverFreeBeyond, 0, "the homomorphism is trivial at every level"};
  // At each level with d | n_l the generator translates by n_l/d, so every
  // nonzero element of Z/d moves every point. At other levels the
  // homomorphism collapses and everything is fixed.
  auto prof = divisibility_profile(d_, seq_);
  using P = DivisibilityProfile::Kind;
  switch (prof.kind) {
    case P::EveryLevelFrom:
      return {K::FreeTail, prof.from, prof.reason};
    case P::Recurs:
      return {K::FreeRecurring, 0, prof.reason};
    case P::Never:
      return {K::NeverFreeBeyond, 0, prof.reason};
    case P::UnknownBeyond:
      return {K::Unknown, prof.from, prof.reason};
  }
  throw Inconsistency("unhandled divisibility profile");
}

SupernaturalNumber CyclicHomFamily::accumulated_supernatural(long long stages) const {
  return supernatural_of(seq_, stages);
}

bool CyclicHomFamily::divisibility_recurs() const {
  auto prof = divisibility_profile(d_, seq_);
  return prof.kind == DivisibilityProfile::Kind::EveryLevelFrom ||
         prof.kind == DivisibilityProfile::Kind::Recurs;
}

std::optional<std::string> CyclicHomFamily::mixing_recurrence() const {
  if (mode_ == Mode::Trivial) return std::nullopt;
  auto prof = divisibility_profile(d_, seq_);
  using P = DivisibilityProfile::Kind;
  if (prof.kind == P::EveryLevelFrom || prof.kind == P::Recurs)
    return "Z/" + std::to_string(d_) +
           " acts by the regular multiple wherever d divides n_l, and " + prof.reason;
  return std::nullopt;
}

std::optional<std::string> CyclicHomFamily::never_mixes() const {
  if (mode_ == Mode::Trivial)
    return "the homomorphism is trivial at every level, so no nonzero element ever acts freely";
  auto prof = divisibility_profile(d_, seq_);
  if (prof.kind == DivisibilityProfile::Kind::Never)
    return prof.reason + ", so the induced map collapses at every level";
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// KleinBottleFamily

KleinBottleFamily::KleinBottleFamily(long long p) : p_(p) {
  if (p_ < 2 || !is_prime(BigInt(p_))) throw InvalidInput("expected a prime");
  pres_.generators = {"a", "b^2"};
  pres_.relators = {{1, 2, -1, -2}};
}

PermutationAction KleinBottleFamily::level_action(long long l) const {
  if (l < 1) throw InvalidInput("levels are 1-based");
  BigInt m = int_pow(BigInt(p_), static_cast<unsigned long>(l));
  BigInt pts = m * m;
  if (pts > 1'000'000) throw CapExceeded("point set (Z/p^l)^2 exceeds 10^6 points");
  long long mll = to_ll(m);
  Perm a = Perm::product(Perm::translation(mll, 1), Perm::identity(mll));
  Perm b2 = Perm::product(Perm::identity(mll), Perm::translation(mll, 1));
  return action_from_generators(pres_, {a, b2});
}

bool KleinBottleFamily::element_is_identity(const std::vector<BigInt>& h) const {
  if (h.size() != 2) throw InvalidInput("subgroup element needs two coordinates");
  return h[0] == 0 && h[1] == 0;
}

ActionFamily::Freeness KleinBottleFamily::freeness_tail(const std::vector<BigInt>& h) const {
  if (h.size() != 2) throw InvalidInput("subgroup element needs two coordinates");
  using K = Freeness::Kind;
  if (h[0] == 0 && h[1] == 0)
    return {K::NeverFreeBeyond, 0, "the element is the identity in the subgroup"};
  // (x, y) translates (Z/p^l)^2 componentwise; a fixed point needs p^l to
  // divide both coordinates, which fails once l exceeds the smaller valuation.
  long v = -1;
  for (const BigInt& c : h)
    if (c != 0) {
      long vc = valuation(c, BigInt(p_));
      if (v < 0 || vc < v) v = vc;
    }
  return {K::FreeTail, v,
          "the translation vector has p-adic valuation " + std::to_string(v) +
              ", so it moves every point of (Z/p^l)^2 once l > " + std::to_string(v)};
}

SupernaturalNumber KleinBottleFamily::accumulated_supernatural(long long) const {
  SupernaturalNumber s;
  set_infinite(s, BigInt(p_));
  s.complete = true;  // the point counts are exactly p^(2l)
  return s;
}

std::optional<std::string> KleinBottleFamily::mixing_recurrence() const {
  // No single level is free for all of Z^2 at once: (p^l, 0) still fixes
  // everything at level l. Per-element tails exist, a mixing level does not.
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// PatternFamily

PatternFamily::PatternFamily(EmbeddingPattern pat) : pat_(std::move(pat)) {
  pat_.validate();
  const FgAbelianGroup& g = pat_.group();
  for (long long i = 0; i < g.ngens(); ++i)
    pres_.generators.push_back("g" + std::to_string(i + 1));
  for (long long i = 0; i < g.ngens(); ++i)
    for (long long j = i + 1; j < g.ngens(); ++j)
      pres_.relators.push_back({static_cast<int>(i + 1), static_cast<int>(j + 1),
                                -static_cast<int>(i + 1), -static_cast<int>(j + 1)});
  for (size_t t = 0; t < g.torsion.size(); ++t) {
    Word w(static_cast<size_t>(g.torsion[t]), static_cast<int>(g.rank + t + 1));
    pres_.relators.push_back(std::move(w));
  }
}

std::optional<std::vector<long long>> PatternFamily::h_torsion() const {
  const FgAbelianGroup& g = pat_.group();
  if (g.rank > 0) return std::nullopt;
  return g.torsion;
}

std::optional<long long> PatternFamily::levels() const {
  if (pat_.resequenced()) return std::nullopt;  // base levels recur forever
  std::optional<long long> lim = pat_.sequence().length();
  for (const auto& r : pat_.rules())
    if (r.kind == CoordinateRule::Kind::Table && !r.zero_beyond) {
      long long len = static_cast<long long>(r.table.size());
      lim = lim ? std::min(*lim, len) : len;
    }
  return lim;
}

PermutationAction PatternFamily::level_action(long long l) const {
  if (!pat_.supports_level(l))
    throw InvalidInput("level " + std::to_string(l) + " is beyond the factor table");
  long long n = pat_.modulus_ll(l);
  const FgAbelianGroup& g = pat_.group();
  std::vector<Perm> gens;
  for (long long i = 0; i < g.ngens(); ++i) {
    std::vector<BigInt> coords(static_cast<size_t>(g.ngens()), BigInt(0));
    coords[static_cast<size_t>(i)] = 1;
    BigInt step = pat_.coordinate(element(g, coords), l);
    gens.push_back(Perm::translation(n, step));
  }
  return action_from_generators(pres_, gens);
}

bool PatternFamily::element_is_identity(const std::vector<BigInt>& h) const {
  return is_zero(element(pat_.group(), h));
}

ActionFamily::Freeness PatternFamily::freeness_tail(const std::vector<BigInt>& h) const {
  using K = Freeness::Kind;
  using T = ElementImageProfile::Tail;
  GroupElement g = element(pat_.group(), h);
  if (is_zero(g)) return {K::NeverFreeBeyond, 0, "the element is the identity"};
  // Freeness of the translation at level l is exactly "image coordinate
  // nonzero mod n_l", which is what the profile classifies.
  ElementImageProfile prof = element_profile(pat_, g, 16);
  switch (prof.tail) {
    case T::NonzeroInfinitely:
      if (pat_.resequenced()) return {K::FreeRecurring, prof.tail_from, prof.reason};
      return {K::FreeTail, prof.tail_from, prof.reason};
    case T::EventuallyZero:
      return {K::NeverFreeBeyond, prof.tail_from, prof.reason};
    case T::Unknown:
      return {K::Unknown, prof.horizon, prof.reason};
  }
  throw Inconsistency("unhandled profile tail");
}

SupernaturalNumber PatternFamily::accumulated_supernatural(long long stages) const {
  const FactorSequence& seq = pat_.sequence();
  if (!pat_.resequenced()) return supernatural_of(seq, stages);
  // Resequencing revisits every base level infinitely often, so each base
  // factor divides the accumulated product with infinite multiplicity.
  SupernaturalNumber s;
  switch (seq.rule()) {
    case FactorSequence::Rule::Linear:
    case FactorSequence::Rule::Factorial:
      s.universal = true;
      return s;
    case FactorSequence::Rule::Constant:
      for (const auto& [p, e] : factorize(BigInt(seq.constant_value()))) set_infinite(s, p);
      return s;
    case FactorSequence::Rule::PrimePower:
      set_infinite(s, BigInt(seq.prime()));
      return s;
    case FactorSequence::Rule::Table:
      for (long long f : seq.entries())
        for (const auto& [p, e] : factorize(BigInt(f))) set_infinite(s, p);
      return s;
  }
  throw Inconsistency("unhandled factor sequence rule");
}

std::optional<std::string> PatternFamily::mixing_recurrence() const {
  const FgAbelianGroup& g = pat_.group();
  if (g.rank > 0 || pat_.resequenced()) return std::nullopt;
  if (g.order() > 4096) return std::nullopt;  // keep the sweep small
  long long worst = 0;
  for (const GroupElement& e : enumerate_all(g)) {
    if (is_zero(e)) continue;
    ElementImageProfile prof = element_profile(pat_, e, 16);
    if (prof.tail != ElementImageProfile::Tail::NonzeroInfinitely) return std::nullopt;
    worst = std::max(worst, prof.tail_from);
  }
  return "every nonzero element of " + g.str() +
         " has nonzero image coordinate at every level > " + std::to_string(worst);
}

// ---------------------------------------------------------------------------
// InducedFamily

InducedFamily::InducedFamily(const GroupModel& model, SubgroupTransversal t,
                             const ActionFamily& base)
    : model_(model), trans_(std::move(t)), base_(base) {
  size_t want = model_.subgroup_presentation().generators.size();
  size_t got = base_.h_presentation().generators.size();
  if (want != got)
    throw InvalidInput("subgroup has " + std::to_string(want) +
                       " generators but the level family provides " + std::to_string(got));
}

PermutationAction InducedFamily::level_action(long long l) const {
  return induce(model_, trans_, base_.level_action(l));
}

long long InducedFamily::fixed_points(const Word& g, long long l) const {
  return level_action(l).fixed_points(g);
}

InducedFamily::WordCertificate InducedFamily::word_certificate(const Word& g) const {
  using K = ActionFamily::Freeness::Kind;
  WordCertificate cert;
  GroupModel::Element e = model_.eval(g);
  cert.trivial_in_group = model_.is_identity(e);
  cert.trace_set = conjugate_trace_set(model_, trans_, g);
  if (cert.trivial_in_group) {
    cert.freeness = {K::NeverFreeBeyond, 0,
                     "the word is the identity in the group, so it fixes every point"};
    return cert;
  }
  if (cert.trace_set.empty()) {
    // Fixed points of the induced action are counted coset by coset over the
    // conjugates landing in the subgroup; an empty trace set sums nothing.
    cert.freeness = {K::FreeTail, 0,
                     "no conjugate of the word lies in the subgroup, so the induced "
                     "action is fixed-point free at every level"};
    return cert;
  }
  long long from = 0;
  long long recurring = 0;
  bool unknown = false;
  std::string unknown_reason;
  for (const auto& [coset, h] : cert.trace_set) {
    ActionFamily::Freeness f = base_.freeness_tail(h);
    switch (f.kind) {
      case K::NeverFreeBeyond:
        cert.freeness = {K::NeverFreeBeyond, f.from,
                         "the conjugate at coset " + std::to_string(coset) +
                             " keeps fixed points: " + f.reason};
        return cert;
      case K::Unknown:
        unknown = true;
        unknown_reason = f.reason;
        break;
      case K::FreeRecurring:
        ++recurring;
        from = std::max(from, f.from);
        break;
      case K::FreeTail:
        from = std::max(from, f.from);
        break;
    }
  }
  if (unknown) {
    cert.freeness = {K::Unknown, from, unknown_reason};
    return cert;
  }
  if (recurring > 0) {
    // Intersecting recurring level sets of distinct elements is only sound
    // when the family certifies one shared set.
    if (recurring > 1 && !base_.recurring_set_shared()) {
      cert.freeness = {K::Unknown, from,
                       "conjugates are free on recurring level sets that may not align"};
      return cert;
    }
    cert.freeness = {K::FreeRecurring, from,
                     "every conjugate in the subgroup acts freely on the recurring level set"};
    return cert;
  }
  cert.freeness = {K::FreeTail, from,
                   "every conjugate in the subgroup acts freely at every level > " +
                       std::to_string(from)};
  return cert;
}

// ---------------------------------------------------------------------------
// Regrouping

RegroupSchedule regroup_free_levels(const InducedFamily& fam, const std::vector<Word>& words,
                                    long long horizon, long long count) {
  if (words.empty() || count < 1) throw InvalidInput("need words and a positive entry count");
  if (horizon < 1) throw InvalidInput("horizon must be positive");
  long long W = static_cast<long long>(words.size());

  std::vector<std::vector<long long>> free_levels(words.size());
  for (long long l = 1; l <= horizon; ++l) {
    PermutationAction act = fam.level_action(l);
    for (size_t i = 0; i < words.size(); ++i)
      if (act.fixed_points(words[i]) == 0) free_levels[i].push_back(l);
  }

  RegroupSchedule sched;
  std::vector<size_t> cursor(words.size(), 0);
  std::set<long long> used;
  for (long long b = 1;; ++b) {
    for (long long i = 0; i < std::min(b, W); ++i) {
      auto& lv = free_levels[static_cast<size_t>(i)];
      size_t& c = cursor[static_cast<size_t>(i)];
      while (c < lv.size() && used.count(lv[c])) ++c;
      if (c >= lv.size()) {
        sched.exhausted = true;
        sched.note = "word " +
                     word_str(words[static_cast<size_t>(i)], fam.model().presentation().generators) +
                     " has no unused free level within horizon " + std::to_string(horizon);
        return sched;
      }
      used.insert(lv[c]);
      sched.entries.push_back({i + 1, lv[c]});
      ++c;
      if (static_cast<long long>(sched.entries.size()) == count) return sched;
    }
  }
}

}  // namespace qrok
