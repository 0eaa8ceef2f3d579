#pragma once

#include <qrok/rational.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qrok {

// Formal product of prime powers with exponents in N u {infinity}. `universal`
// means every prime occurs with infinite exponent. `complete` records whether
// the exponent map describes the full (infinite) sequence, certified by its
// generating rule, or only what accumulated up to a finite horizon, in which
// case the exponents are lower bounds.
struct SupernaturalNumber {
  std::map<BigInt, std::optional<long>> exponents;  // nullopt = infinite
  bool universal = false;
  bool complete = true;

  bool divides_infinitely(const BigInt& p) const;
  // Every prime power of k appears with at least that exponent.
  bool divisible_by(const BigInt& k) const;
  std::string str() const;
  bool operator==(const SupernaturalNumber& o) const;
};

// Sequence of matrix-factor sizes n_1, n_2, ... (each >= 2). Either a finite
// explicit table or one of the generating rules. Levels are 1-based.
class FactorSequence {
 public:
  enum class Rule { Table, Constant, Linear, Factorial, PrimePower };

  static FactorSequence constant(long long c);
  static FactorSequence linear();     // n_l = l + 1
  static FactorSequence factorial();  // n_l = (l + 1)!
  static FactorSequence prime_power(long long p);  // n_l = p^l
  static FactorSequence table(std::vector<long long> entries);

  Rule rule() const { return rule_; }
  // Number of levels for a table; nullopt for the unbounded rules.
  std::optional<long long> length() const;
  bool bounded() const { return rule_ == Rule::Table; }
  bool supports_level(long long l) const;

  BigInt factor(long long l) const;  // n_l; throws past the end of a table
  long long factor_ll(long long l) const;

  // True when the rule guarantees every prime divides the tail product
  // infinitely often (Linear and Factorial).
  bool universal_rule() const;
  long long constant_value() const { return c_; }
  long long prime() const { return p_; }
  const std::vector<long long>& entries() const { return table_; }

  std::string describe() const;
  bool operator==(const FactorSequence& o) const;

 private:
  FactorSequence() = default;
  Rule rule_ = Rule::Table;
  long long c_ = 0;  // Constant
  long long p_ = 0;  // PrimePower
  std::vector<long long> table_;
};

// Supernatural number of prod n_l. Rule-based sequences are classified
// analytically (complete); tables accumulate exponents over their entries.
// `horizon` bounds the levels inspected for the table case and must cover
// the table. An empty sequence is invalid.
SupernaturalNumber supernatural_of(const FactorSequence& seq, long long horizon);

// dim of the stage-L algebra: n_1 * ... * n_L. L = 0 gives 1.
BigInt stage_dim(const FactorSequence& seq, long long L);

}  // namespace qrok
