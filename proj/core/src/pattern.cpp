#include <qrok/pattern.hpp>

#include <sstream>

namespace qrok {

CoordinateRule CoordinateRule::quotient_mod(BigInt multiplier) {
  CoordinateRule r;
  r.kind = Kind::QuotientMod;
  r.multiplier = std::move(multiplier);
  return r;
}

CoordinateRule CoordinateRule::factorial_mod(BigInt multiplier) {
  CoordinateRule r;
  r.kind = Kind::FactorialMod;
  r.multiplier = std::move(multiplier);
  return r;
}

CoordinateRule CoordinateRule::padic(long long p, const Rational& value) {
  CoordinateRule r;
  r.kind = Kind::PadicDigits;
  r.p = p;
  r.value = value;
  return r;
}

CoordinateRule CoordinateRule::custom(std::vector<BigInt> table, bool zero_beyond) {
  CoordinateRule r;
  r.kind = Kind::Table;
  r.table = std::move(table);
  r.zero_beyond = zero_beyond;
  return r;
}

EmbeddingPattern::EmbeddingPattern(FgAbelianGroup group, FactorSequence seq,
                                   std::vector<CoordinateRule> rules)
    : group_(std::move(group)), seq_(std::move(seq)), rules_(std::move(rules)) {
  if (static_cast<long long>(rules_.size()) != group_.ngens())
    throw InvalidInput("pattern needs one coordinate rule per generator");
}

long long resequence_source(long long level, long long source_count) {
  if (level < 1) throw InvalidInput("resequence levels are 1-based");
  long long b = 1;
  long long k = level;
  for (;;) {
    long long blen = (source_count > 0) ? std::min(b, source_count) : b;
    if (k <= blen) return k;
    k -= blen;
    ++b;
  }
}

long long EmbeddingPattern::source_level(long long l) const {
  if (!resequenced_) return l;
  return resequence_source(l, base_levels_);
}

bool EmbeddingPattern::supports_level(long long l) const {
  if (l < 1) return false;
  return seq_.supports_level(source_level(l));
}

BigInt EmbeddingPattern::modulus(long long l) const { return seq_.factor(source_level(l)); }
long long EmbeddingPattern::modulus_ll(long long l) const { return to_ll(modulus(l)); }

std::vector<long long> EmbeddingPattern::dims_prefix(long long L, long long cap) const {
  std::vector<long long> dims;
  BigInt total = 1;
  for (long long l = 1; l <= L; ++l) {
    BigInt n = modulus(l);
    total *= n;
    if (total > cap)
      throw CapExceeded("stage dimension " + int_str(total) + " exceeds the cap " +
                        std::to_string(cap));
    dims.push_back(to_ll(n));
  }
  return dims;
}

namespace {

BigInt coeff_of(const FgAbelianGroup& g, const GroupElement& e, long long j) {
  if (j < g.rank) return e.free[j];
  return e.tors[j - g.rank];
}

BigInt mod_into(BigInt v, const BigInt& n) {
  v %= n;
  if (v < 0) v += n;
  return v;
}

// a * b^{-1} mod n, with b invertible mod n.
BigInt padic_digit(const Rational& value, const BigInt& n) {
  BigInt a = value.get_num(), b = value.get_den();
  BigInt binv;
  if (mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), n.get_mpz_t()) == 0)
    throw Inconsistency("p-adic denominator not invertible at this level");
  return mod_into(a * binv, n);
}

}  // namespace

BigInt EmbeddingPattern::coordinate(const GroupElement& g, long long l) const {
  const long long s = source_level(l);
  const BigInt n = seq_.factor(s);
  BigInt acc = 0;
  for (size_t j = 0; j < rules_.size(); ++j) {
    const CoordinateRule& r = rules_[j];
    BigInt c = coeff_of(group_, g, static_cast<long long>(j));
    if (c == 0) continue;
    switch (r.kind) {
      case CoordinateRule::Kind::QuotientMod:
      case CoordinateRule::Kind::FactorialMod:
        acc += c * r.multiplier;
        break;
      case CoordinateRule::Kind::PadicDigits:
        acc += c * padic_digit(r.value, n);
        break;
      case CoordinateRule::Kind::Table:
        if (s <= static_cast<long long>(r.table.size())) {
          acc += c * r.table[s - 1];
        } else if (!r.zero_beyond) {
          throw InvalidInput("coordinate of generator " + std::to_string(j + 1) +
                             " unknown beyond its table at level " + std::to_string(l));
        }
        break;
    }
  }
  return mod_into(acc, n);
}

bool EmbeddingPattern::coordinate_known(long long l) const {
  if (!supports_level(l)) return false;
  const long long s = source_level(l);
  for (const auto& r : rules_)
    if (r.kind == CoordinateRule::Kind::Table && !r.zero_beyond &&
        s > static_cast<long long>(r.table.size()))
      return false;
  return true;
}

long long EmbeddingPattern::known_horizon(long long horizon) const {
  long long kh = 0;
  for (long long l = 1; l <= horizon; ++l) {
    if (!coordinate_known(l)) break;
    kh = l;
  }
  return kh;
}

namespace {

std::string gen_tag(long long j) { return "generator " + std::to_string(j + 1); }

bool factor_is_factorial(const BigInt& n, long long l) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(l + 1));
  return n == f;
}

bool is_power_of(const BigInt& n, const BigInt& p) {
  BigInt v = n;
  while (v > 1) {
    if (!mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) return false;
    v /= p;
  }
  return v == 1;
}

}  // namespace

void EmbeddingPattern::validate(long long horizon) const {
  const long long seq_limit =
      seq_.bounded() ? *seq_.length() : horizon;
  for (size_t j = 0; j < rules_.size(); ++j) {
    const CoordinateRule& r = rules_[j];
    const bool is_torsion = static_cast<long long>(j) >= group_.rank;
    const BigInt d = is_torsion ? BigInt(group_.torsion[j - group_.rank]) : BigInt(0);
    switch (r.kind) {
      case CoordinateRule::Kind::FactorialMod:
        if (seq_.rule() != FactorSequence::Rule::Factorial) {
          if (!seq_.bounded())
            throw InvalidInput(gen_tag(j) + ": factorial rule over a non-factorial sequence");
          for (long long l = 1; l <= seq_limit; ++l)
            if (!factor_is_factorial(seq_.factor(l), l))
              throw InvalidInput(gen_tag(j) + ": factorial rule needs factor (l+1)! at level " +
                                 std::to_string(l));
        }
        [[fallthrough]];
      case CoordinateRule::Kind::QuotientMod:
        if (is_torsion && r.multiplier != 0) {
          // d * multiplier must die in every level quotient.
          BigInt dm = d * r.multiplier;
          switch (seq_.rule()) {
            case FactorSequence::Rule::Constant:
              if (!mpz_divisible_p(dm.get_mpz_t(), seq_.factor(1).get_mpz_t()))
                throw InvalidInput(gen_tag(j) + ": torsion image of order " + int_str(d) +
                                   " is not well defined mod " + int_str(seq_.factor(1)));
              break;
            case FactorSequence::Rule::Table:
              for (long long l = 1; l <= seq_limit; ++l)
                if (!mpz_divisible_p(dm.get_mpz_t(), seq_.factor(l).get_mpz_t()))
                  throw InvalidInput(gen_tag(j) +
                                     ": torsion image not well defined at level " +
                                     std::to_string(l) + " (modulus " +
                                     int_str(seq_.factor(l)) + ")");
              break;
            default:
              // Unbounded nonconstant moduli outgrow any fixed d * multiplier.
              throw InvalidInput(gen_tag(j) +
                                 ": torsion generator cannot map by a fixed nonzero "
                                 "multiplier into an unbounded factor sequence");
          }
        }
        break;
      case CoordinateRule::Kind::PadicDigits: {
        if (r.p < 2 || !is_prime(BigInt(r.p)))
          throw InvalidInput(gen_tag(j) + ": p-adic rule needs a prime");
        if (mpz_divisible_ui_p(r.value.get_den().get_mpz_t(),
                               static_cast<unsigned long>(r.p)))
          throw InvalidInput(gen_tag(j) + ": p divides the denominator of the p-adic value");
        if (is_torsion && r.value != 0)
          throw InvalidInput(gen_tag(j) +
                             ": torsion generator cannot carry a nonzero p-adic value");
        if (seq_.rule() == FactorSequence::Rule::PrimePower) {
          if (seq_.prime() != r.p)
            throw InvalidInput(gen_tag(j) + ": p-adic prime disagrees with the sequence prime");
        } else if (seq_.bounded()) {
          for (long long l = 1; l <= seq_limit; ++l)
            if (!is_power_of(seq_.factor(l), BigInt(r.p)))
              throw InvalidInput(gen_tag(j) + ": level " + std::to_string(l) +
                                 " modulus is not a power of " + std::to_string(r.p));
        } else {
          throw InvalidInput(gen_tag(j) + ": p-adic rule needs p-power level moduli");
        }
        break;
      }
      case CoordinateRule::Kind::Table: {
        if (seq_.bounded() && static_cast<long long>(r.table.size()) > *seq_.length())
          throw InvalidInput(gen_tag(j) + ": table is longer than the factor sequence");
        if (is_torsion) {
          long long check = std::min<long long>(r.table.size(), seq_limit);
          for (long long l = 1; l <= check; ++l) {
            BigInt dm = d * r.table[l - 1];
            if (!mpz_divisible_p(dm.get_mpz_t(), seq_.factor(l).get_mpz_t()))
              throw InvalidInput(gen_tag(j) + ": torsion image not well defined at level " +
                                 std::to_string(l) + " (modulus " + int_str(seq_.factor(l)) +
                                 ")");
          }
        }
        break;
      }
    }
  }
}

EmbeddingPattern diagonal_resequence(const EmbeddingPattern& base) {
  if (base.resequenced()) throw InvalidInput("pattern is already resequenced");
  EmbeddingPattern out = base;
  out.resequenced_ = true;
  out.base_levels_ = base.seq_.bounded() ? *base.seq_.length() : 0;
  return out;
}

namespace {

struct TailResult {
  ElementImageProfile::Tail tail;
  long long from;
  std::string reason;
};

// Tail of the combined coordinate value over the native (non-resequenced)
// levels. Assumes the pattern validated.
TailResult combined_tail(const EmbeddingPattern& pat, const GroupElement& g) {
  const auto& group = pat.group();
  const auto& seq = pat.sequence();
  BigInt m = 0;          // integer part of the combined value
  Rational x = 0;        // p-adic part
  bool padic_used = false;
  long long t0 = 0;      // all tables with nonzero coefficient end by here
  bool silent = false;
  long long silent_from = 0;

  for (size_t j = 0; j < pat.rules().size(); ++j) {
    const CoordinateRule& r = pat.rules()[j];
    BigInt c = coeff_of(group, g, static_cast<long long>(j));
    if (c == 0) continue;
    switch (r.kind) {
      case CoordinateRule::Kind::QuotientMod:
      case CoordinateRule::Kind::FactorialMod:
        m += c * r.multiplier;
        break;
      case CoordinateRule::Kind::PadicDigits:
        x += Rational(c) * r.value;
        padic_used = true;
        break;
      case CoordinateRule::Kind::Table: {
        long long len = static_cast<long long>(r.table.size());
        if (r.zero_beyond) {
          t0 = std::max(t0, len);
        } else {
          silent = true;
          silent_from = silent_from ? std::min(silent_from, len) : len;
        }
        break;
      }
    }
  }

  if (silent)
    return {ElementImageProfile::Tail::Unknown, silent_from,
            "a table rule with nonzero coefficient is silent beyond level " +
                std::to_string(silent_from)};

  if (padic_used) {
    Rational y = x + Rational(m);
    if (y == 0)
      return {ElementImageProfile::Tail::EventuallyZero, t0,
              "combined p-adic value vanishes"};
    // Only the numerator carries p (denominator is prime to p by validation).
    long long p = 0;
    for (const auto& r : pat.rules())
      if (r.kind == CoordinateRule::Kind::PadicDigits) p = r.p;
    long v = valuation(y.get_num(), BigInt(p));
    long long from = std::max<long long>(t0, v);
    return {ElementImageProfile::Tail::NonzeroInfinitely, from,
            "combined p-adic value has valuation " + std::to_string(v) +
                "; every deeper level sees it"};
  }

  if (m == 0)
    return {ElementImageProfile::Tail::EventuallyZero, t0,
            t0 ? "combined integer value is zero beyond the tables (level " +
                     std::to_string(t0) + ")"
               : "combined integer value is zero"};

  switch (seq.rule()) {
    case FactorSequence::Rule::Constant: {
      BigInt c = seq.factor(1);
      if (mpz_divisible_p(m.get_mpz_t(), c.get_mpz_t()))
        return {ElementImageProfile::Tail::EventuallyZero, t0,
                "combined value " + int_str(m) + " is divisible by the constant modulus " +
                    int_str(c)};
      return {ElementImageProfile::Tail::NonzeroInfinitely, t0,
              "combined value " + int_str(m) + " is nonzero mod the constant modulus " +
                  int_str(c) + " at every level"};
    }
    case FactorSequence::Rule::Linear: {
      // n_l = l + 1 exceeds |m| once l >= |m|.
      BigInt absm = abs(m);
      long long from = std::max<long long>(t0, to_ll(absm) - 1);
      return {ElementImageProfile::Tail::NonzeroInfinitely, from,
              "combined value " + int_str(m) +
                  " is smaller than every modulus past level " + std::to_string(from)};
    }
    case FactorSequence::Rule::Factorial: {
      BigInt absm = abs(m);
      long long from = t0;
      long long l = 1;
      while (seq.factor(l) <= absm) ++l;  // factorials outgrow |m| within a few steps
      from = std::max(from, l - 1);
      return {ElementImageProfile::Tail::NonzeroInfinitely, from,
              "combined value " + int_str(m) +
                  " is smaller than every modulus past level " + std::to_string(from)};
    }
    case FactorSequence::Rule::PrimePower: {
      long v = valuation(m, BigInt(seq.prime()));
      long long from = std::max<long long>(t0, v);
      return {ElementImageProfile::Tail::NonzeroInfinitely, from,
              "combined value has " + std::to_string(seq.prime()) + "-adic valuation " +
                  std::to_string(v)};
    }
    case FactorSequence::Rule::Table:
      return {ElementImageProfile::Tail::Unknown, *seq.length(),
              "factor table ends at level " + std::to_string(*seq.length()) +
                  "; deeper moduli are unspecified"};
  }
  throw InvalidInput("unreachable factor rule");
}

}  // namespace

ElementImageProfile element_profile(const EmbeddingPattern& pat, const GroupElement& g,
                                    long long horizon) {
  if (horizon < 1) throw InvalidInput("profile horizon must be >= 1");
  ElementImageProfile prof;
  long long seq_cap = horizon;
  if (!pat.resequenced() && pat.sequence().bounded())
    seq_cap = std::min(horizon, *pat.sequence().length());
  prof.horizon = pat.known_horizon(seq_cap);
  for (long long l = 1; l <= prof.horizon; ++l)
    if (pat.coordinate(g, l) != 0) prof.nonzero_levels.push_back(l);

  if (!pat.resequenced()) {
    TailResult t = combined_tail(pat, g);
    prof.tail = t.tail;
    prof.tail_from = t.from;
    prof.reason = t.reason;
    return prof;
  }

  // Resequenced: every base level recurs infinitely often, so the tail is
  // decided by the base-level support.
  EmbeddingPattern base(pat.group(), pat.sequence(), pat.rules());
  const long long base_count =
      pat.sequence().bounded() ? *pat.sequence().length() : 0;

  auto nonzero_at_known_base = [&](long long upto) -> std::optional<long long> {
    for (long long s = 1; s <= upto; ++s) {
      if (!base.coordinate_known(s)) continue;
      if (base.coordinate(g, s) != 0) return s;
    }
    return std::nullopt;
  };

  if (base_count > 0) {
    long long kh = base.known_horizon(base_count);
    if (auto s = nonzero_at_known_base(base_count)) {
      prof.tail = ElementImageProfile::Tail::NonzeroInfinitely;
      prof.tail_from = 0;
      prof.reason = "base level " + std::to_string(*s) +
                    " has nonzero coordinate and recurs infinitely often";
    } else if (kh == base_count) {
      prof.tail = ElementImageProfile::Tail::EventuallyZero;
      prof.tail_from = 0;
      prof.reason = "coordinate vanishes at every base level";
    } else {
      prof.tail = ElementImageProfile::Tail::Unknown;
      prof.tail_from = kh;
      prof.reason = "base coordinates unknown beyond level " + std::to_string(kh);
    }
    return prof;
  }

  TailResult bt = combined_tail(base, g);
  switch (bt.tail) {
    case ElementImageProfile::Tail::NonzeroInfinitely:
      prof.tail = bt.tail;
      prof.tail_from = 0;
      prof.reason = "base tail: " + bt.reason;
      break;
    case ElementImageProfile::Tail::EventuallyZero: {
      if (auto s = nonzero_at_known_base(bt.from)) {
        prof.tail = ElementImageProfile::Tail::NonzeroInfinitely;
        prof.tail_from = 0;
        prof.reason = "base level " + std::to_string(*s) +
                      " has nonzero coordinate and recurs infinitely often";
      } else {
        prof.tail = ElementImageProfile::Tail::EventuallyZero;
        prof.tail_from = 0;
        prof.reason = "coordinate vanishes at every base level (" + bt.reason + ")";
      }
      break;
    }
    case ElementImageProfile::Tail::Unknown: {
      if (auto s = nonzero_at_known_base(base.known_horizon(horizon))) {
        prof.tail = ElementImageProfile::Tail::NonzeroInfinitely;
        prof.tail_from = 0;
        prof.reason = "base level " + std::to_string(*s) +
                      " has nonzero coordinate and recurs infinitely often";
      } else {
        prof.tail = ElementImageProfile::Tail::Unknown;
        prof.tail_from = bt.from;
        prof.reason = "base tail: " + bt.reason;
      }
      break;
    }
  }
  return prof;
}

TrivialIntersectionVerdict trivial_intersection(const EmbeddingPattern& pat, long long horizon,
                                                long long box_bound) {
  TrivialIntersectionVerdict v;
  v.horizon = horizon;
  v.box_bound = box_bound;
  std::optional<std::string> unknown_reason;
  for (const GroupElement& g : enumerate_box(pat.group(), box_bound)) {
    ElementImageProfile prof = element_profile(pat, g, horizon);
    if (prof.tail == ElementImageProfile::Tail::EventuallyZero) {
      v.kind = TrivialIntersectionVerdict::Kind::Counterexample;
      v.witness = g;
      v.vanish_from = prof.tail_from;
      v.certificate = element_str(g) + ": " + prof.reason;
      return v;
    }
    if (prof.tail == ElementImageProfile::Tail::Unknown && !unknown_reason)
      unknown_reason = element_str(g) + ": " + prof.reason;
  }
  if (unknown_reason) {
    v.kind = TrivialIntersectionVerdict::Kind::UnknownUpTo;
    v.certificate = *unknown_reason;
    return v;
  }
  v.kind = TrivialIntersectionVerdict::Kind::ProvenTrivial;
  v.certificate =
      "every nonzero element with coefficients bounded by " + std::to_string(box_bound) +
      " has nonzero coordinates at infinitely many levels";
  return v;
}

InjectivityVerdict injectivity(const EmbeddingPattern& pat, long long horizon,
                               long long box_bound) {
  InjectivityVerdict v;
  v.horizon = horizon;
  v.box_bound = box_bound;
  std::optional<std::string> unknown_reason;
  for (const GroupElement& g : enumerate_box(pat.group(), box_bound)) {
    ElementImageProfile prof = element_profile(pat, g, horizon);
    if (!prof.nonzero_levels.empty()) continue;
    if (prof.tail == ElementImageProfile::Tail::NonzeroInfinitely) continue;
    if (prof.identically_zero() && prof.tail_from <= prof.horizon) {
      v.kind = InjectivityVerdict::Kind::NotInjective;
      v.witness = g;
      v.certificate = element_str(g) + " maps to zero at every level";
      return v;
    }
    if (!unknown_reason)
      unknown_reason = element_str(g) + ": zero on all inspected levels; " + prof.reason;
  }
  if (unknown_reason) {
    v.kind = InjectivityVerdict::Kind::UnknownUpTo;
    v.certificate = *unknown_reason;
    return v;
  }
  v.kind = InjectivityVerdict::Kind::Injective;
  v.certificate = "every nonzero element with coefficients bounded by " +
                  std::to_string(box_bound) + " has a nonzero coordinate";
  return v;
}

DivisibleObstruction divisible_obstruction(long long p, long long truncation,
                                           const FactorSequence& seq, long long levels) {
  if (p < 2 || !is_prime(BigInt(p))) throw InvalidInput("divisible obstruction needs a prime");
  if (truncation < 1) throw InvalidInput("truncation exponent must be >= 1");
  if (levels < 1) throw InvalidInput("obstruction needs at least one level");
  DivisibleObstruction out;
  out.p = p;
  out.truncation = truncation;
  const BigInt bp(p);
  bool all = true;
  for (long long l = 1; l <= levels; ++l) {
    if (!seq.supports_level(l)) break;
    BigInt n = seq.factor(l);
    long r = 0;
    BigInt v = n;
    while (mpz_divisible_p(v.get_mpz_t(), bp.get_mpz_t())) {
      v /= bp;
      ++r;
    }
    if (r <= truncation - 1)
      out.forced_zero_levels.push_back(l);
    else
      all = false;
  }
  out.all_levels_forced = all && !out.forced_zero_levels.empty();
  if (seq.rule() == FactorSequence::Rule::Constant) {
    long r = 0;
    BigInt v = seq.factor(1);
    while (mpz_divisible_p(v.get_mpz_t(), bp.get_mpz_t())) {
      v /= bp;
      ++r;
    }
    out.forced_forever = (r <= truncation - 1);
  }
  std::ostringstream os;
  os << "truncation Z/" << p << "^" << truncation << ": at every level whose modulus has "
     << p << "-adic valuation at most " << (truncation - 1)
     << ", any generator image is killed by " << p << "^" << (truncation - 1)
     << ", so the deep torsion element vanishes there";
  if (out.forced_forever) os << " (the constant sequence forces this at every level)";
  out.certificate = os.str();
  return out;
}

}  // namespace qrok
