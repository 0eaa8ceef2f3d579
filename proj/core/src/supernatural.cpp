#include <qrok/supernatural.hpp>

#include <sstream>

namespace qrok {

bool SupernaturalNumber::divides_infinitely(const BigInt& p) const {
  if (universal) return true;
  auto it = exponents.find(p);
  return it != exponents.end() && !it->second.has_value();
}

bool SupernaturalNumber::divisible_by(const BigInt& k) const {
  if (k < 1) throw InvalidInput("divisible_by expects a positive integer");
  if (universal) return true;
  for (const auto& [p, e] : factorize(k)) {
    auto it = exponents.find(p);
    if (it == exponents.end()) return false;
    if (it->second.has_value() && *it->second < e) return false;
  }
  return true;
}

std::string SupernaturalNumber::str() const {
  if (universal) return "universal";
  if (exponents.empty()) return complete ? "1" : ">= 1";
  std::ostringstream os;
  if (!complete) os << ">= ";
  bool first = true;
  for (const auto& [p, e] : exponents) {
    if (!first) os << " * ";
    first = false;
    os << int_str(p) << '^';
    if (e.has_value())
      os << *e;
    else
      os << "inf";
  }
  return os.str();
}

bool SupernaturalNumber::operator==(const SupernaturalNumber& o) const {
  return universal == o.universal && complete == o.complete &&
         (universal || exponents == o.exponents);
}

FactorSequence FactorSequence::constant(long long c) {
  if (c < 2) throw InvalidInput("constant factor sequence needs c >= 2");
  FactorSequence s;
  s.rule_ = Rule::Constant;
  s.c_ = c;
  return s;
}

FactorSequence FactorSequence::linear() {
  FactorSequence s;
  s.rule_ = Rule::Linear;
  return s;
}

FactorSequence FactorSequence::factorial() {
  FactorSequence s;
  s.rule_ = Rule::Factorial;
  return s;
}

FactorSequence FactorSequence::prime_power(long long p) {
  if (p < 2 || !is_prime(BigInt(p))) throw InvalidInput("prime_power sequence needs a prime");
  FactorSequence s;
  s.rule_ = Rule::PrimePower;
  s.p_ = p;
  return s;
}

FactorSequence FactorSequence::table(std::vector<long long> entries) {
  if (entries.empty()) throw InvalidInput("empty factor sequence");
  for (long long n : entries)
    if (n < 2) throw InvalidInput("factor sequence entries must be >= 2");
  FactorSequence s;
  s.rule_ = Rule::Table;
  s.table_ = std::move(entries);
  return s;
}

std::optional<long long> FactorSequence::length() const {
  if (rule_ == Rule::Table) return static_cast<long long>(table_.size());
  return std::nullopt;
}

bool FactorSequence::supports_level(long long l) const {
  if (l < 1) return false;
  if (rule_ == Rule::Table) return l <= static_cast<long long>(table_.size());
  return true;
}

BigInt FactorSequence::factor(long long l) const {
  if (l < 1) throw InvalidInput("factor sequence levels are 1-based");
  switch (rule_) {
    case Rule::Table:
      if (l > static_cast<long long>(table_.size()))
        throw InvalidInput("level " + std::to_string(l) + " past the end of the factor table");
      return BigInt(table_[l - 1]);
    case Rule::Constant:
      return BigInt(c_);
    case Rule::Linear:
      return BigInt(l + 1);
    case Rule::Factorial: {
      BigInt f;
      mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(l + 1));
      return f;
    }
    case Rule::PrimePower:
      return int_pow(BigInt(p_), static_cast<unsigned long>(l));
  }
  throw InvalidInput("unreachable factor rule");
}

long long FactorSequence::factor_ll(long long l) const { return to_ll(factor(l)); }

bool FactorSequence::universal_rule() const {
  return rule_ == Rule::Linear || rule_ == Rule::Factorial;
}

std::string FactorSequence::describe() const {
  switch (rule_) {
    case Rule::Table: {
      std::ostringstream os;
      os << "table[";
      for (size_t i = 0; i < table_.size(); ++i) os << (i ? "," : "") << table_[i];
      os << ']';
      return os.str();
    }
    case Rule::Constant:
      return "constant(" + std::to_string(c_) + ")";
    case Rule::Linear:
      return "linear";
    case Rule::Factorial:
      return "factorial";
    case Rule::PrimePower:
      return "prime_power(" + std::to_string(p_) + ")";
  }
  return "?";
}

bool FactorSequence::operator==(const FactorSequence& o) const {
  return rule_ == o.rule_ && c_ == o.c_ && p_ == o.p_ && table_ == o.table_;
}

SupernaturalNumber supernatural_of(const FactorSequence& seq, long long horizon) {
  SupernaturalNumber s;
  switch (seq.rule()) {
    case FactorSequence::Rule::Linear:
    case FactorSequence::Rule::Factorial:
      // n_l runs through l+1 (resp. (l+1)!), so every prime divides the tail
      // product infinitely often.
      s.universal = true;
      s.complete = true;
      return s;
    case FactorSequence::Rule::Constant:
      for (const auto& [p, e] : factorize(BigInt(seq.constant_value())))
        s.exponents[p] = std::nullopt;
      s.complete = true;
      return s;
    case FactorSequence::Rule::PrimePower:
      s.exponents[BigInt(seq.prime())] = std::nullopt;
      s.complete = true;
      return s;
    case FactorSequence::Rule::Table: {
      const long long len = *seq.length();
      if (horizon < len)
        throw InvalidInput("supernatural_of horizon shorter than the factor table");
      std::map<BigInt, long> acc;
      for (long long l = 1; l <= len; ++l)
        for (const auto& [p, e] : factorize(seq.factor(l))) acc[p] += e;
      for (const auto& [p, e] : acc) s.exponents[p] = e;
      // A table only witnesses finitely many levels; exponents are lower
      // bounds for any extension of the sequence.
      s.complete = false;
      return s;
    }
  }
  throw InvalidInput("unreachable factor rule");
}

BigInt stage_dim(const FactorSequence& seq, long long L) {
  if (L < 0) throw InvalidInput("negative stage");
  BigInt d = 1;
  for (long long l = 1; l <= L; ++l) d *= seq.factor(l);
  return d;
}

}  // namespace qrok
