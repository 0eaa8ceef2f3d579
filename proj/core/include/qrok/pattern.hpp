#pragma once

#include <qrok/abelian.hpp>
#include <qrok/supernatural.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qrok {

// How one generator maps into the level-l cyclic quotient Z/n_l.
struct CoordinateRule {
  enum class Kind {
    QuotientMod,   // generator -> multiplier (mod n_l), every level
    FactorialMod,  // same formula, but asserts the factorial sequence shape
    PadicDigits,   // generator -> value a/b in Z_(p); level l sees a b^{-1} mod p^l
    Table,         // explicit per-level images; zero_beyond tells whether the
                   // map is literally zero past the table or just unrecorded
  };
  Kind kind = Kind::QuotientMod;
  BigInt multiplier = 1;        // QuotientMod / FactorialMod
  long long p = 0;              // PadicDigits
  Rational value;               // PadicDigits
  std::vector<BigInt> table;    // Table
  bool zero_beyond = false;     // Table

  static CoordinateRule quotient_mod(BigInt multiplier = BigInt(1));
  static CoordinateRule factorial_mod(BigInt multiplier = BigInt(1));
  static CoordinateRule padic(long long p, const Rational& value);
  static CoordinateRule custom(std::vector<BigInt> table, bool zero_beyond);
};

// Diagonal embedding of a finitely generated abelian group into the product
// of the level quotients Z/n_l, one coordinate rule per generator (free
// generators first). A resequenced pattern revisits its base levels in
// Cantor block order 1; 1,2; 1,2,3; ... so each base level recurs
// infinitely often.
class EmbeddingPattern {
 public:
  EmbeddingPattern(FgAbelianGroup group, FactorSequence seq, std::vector<CoordinateRule> rules);

  const FgAbelianGroup& group() const { return group_; }
  const FactorSequence& sequence() const { return seq_; }
  const std::vector<CoordinateRule>& rules() const { return rules_; }
  bool resequenced() const { return resequenced_; }

  // Base level feeding resequenced level l (identity when not resequenced).
  long long source_level(long long l) const;
  bool supports_level(long long l) const;
  BigInt modulus(long long l) const;
  long long modulus_ll(long long l) const;
  std::vector<long long> dims_prefix(long long L, long long cap = 4096) const;

  // Image of g in Z/n_l, reduced into [0, n_l). Throws when a table rule has
  // no information at this level.
  BigInt coordinate(const GroupElement& g, long long l) const;
  bool coordinate_known(long long l) const;
  // Levels <= horizon where at least one needed table is silent never count;
  // first level with unknown data, if any, within [1, horizon].
  long long known_horizon(long long horizon) const;

  // Structural validation: rule shapes, torsion well-definedness (analytic
  // for rule-generated sequences, per level within tables), p-adic
  // admissibility. Throws InvalidInput naming the generator and level.
  void validate(long long horizon = 16) const;

 private:
  friend EmbeddingPattern diagonal_resequence(const EmbeddingPattern& base);
  FgAbelianGroup group_;
  FactorSequence seq_;
  std::vector<CoordinateRule> rules_;
  bool resequenced_ = false;
  long long base_levels_ = 0;  // 0 = unbounded base
};

// Cantor-order revisiting of the base levels; for a bounded base of S levels
// the block growth caps at S (schedule prefix 1; 1,2; 1,2,3; 1,2,3; ...).
EmbeddingPattern diagonal_resequence(const EmbeddingPattern& base);
long long resequence_source(long long level, long long source_count /* 0 = unbounded */);

// Where the image of one element lives across levels.
struct ElementImageProfile {
  enum class Tail { NonzeroInfinitely, EventuallyZero, Unknown };
  Tail tail = Tail::Unknown;
  long long tail_from = 0;  // NonzeroInfinitely: nonzero for all l > tail_from;
                            // EventuallyZero: zero for all l > tail_from
  long long horizon = 0;    // levels actually inspected
  std::vector<long long> nonzero_levels;  // within the inspected horizon
  std::string reason;

  bool identically_zero() const {
    return tail == Tail::EventuallyZero && nonzero_levels.empty();
  }
};
ElementImageProfile element_profile(const EmbeddingPattern& pat, const GroupElement& g,
                                    long long horizon);

// Trichotomy for "does any nonzero group element have eventually-zero image".
struct TrivialIntersectionVerdict {
  enum class Kind { ProvenTrivial, Counterexample, UnknownUpTo };
  Kind kind = Kind::UnknownUpTo;
  std::optional<GroupElement> witness;  // Counterexample
  long long vanish_from = 0;            // Counterexample: zero beyond this level
  long long horizon = 0;
  long long box_bound = 0;
  std::string certificate;
};
TrivialIntersectionVerdict trivial_intersection(const EmbeddingPattern& pat, long long horizon,
                                                long long box_bound = 10);

// Injectivity of the diagonal map on the coefficient box.
struct InjectivityVerdict {
  enum class Kind { Injective, NotInjective, UnknownUpTo };
  Kind kind = Kind::UnknownUpTo;
  std::optional<GroupElement> witness;  // NotInjective: nonzero kernel element
  long long horizon = 0;
  long long box_bound = 0;
  std::string certificate;
};
InjectivityVerdict injectivity(const EmbeddingPattern& pat, long long horizon,
                               long long box_bound = 10);

// Obstruction for the p-divisible torsion group: truncate Z(p^inf) at Z/p^K.
// At any level whose modulus has p-adic valuation r <= K - 1, every
// homomorphism Z/p^K -> Z/n_l kills p^(K-1) * generator, because images lie
// in the p-part of Z/n_l. The report lists which inspected levels force this
// and whether the sequence rule forces it forever.
struct DivisibleObstruction {
  long long p = 0;
  long long truncation = 0;  // K
  std::vector<long long> forced_zero_levels;
  bool all_levels_forced = false;   // within the inspected range
  bool forced_forever = false;      // rule-certified for the whole sequence
  std::string certificate;
};
DivisibleObstruction divisible_obstruction(long long p, long long truncation,
                                           const FactorSequence& seq, long long levels);

}  // namespace qrok
