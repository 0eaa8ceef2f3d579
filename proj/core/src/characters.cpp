#include <qrok/characters.hpp>

#include <numeric>

namespace qrok {

namespace {

long long lcm_of(const std::vector<long long>& ds) {
  long long l = 1;
  for (long long d : ds) l = std::lcm(l, d);
  return l;
}

long long product_of(const std::vector<long long>& ds) {
  long long p = 1;
  for (long long d : ds) p *= d;
  return p;
}

}  // namespace

CharacterTable::CharacterTable(std::vector<long long> torsion)
    : torsion_(std::move(torsion)), order_(product_of(torsion_)), red_(lcm_of(torsion_)) {
  for (long long d : torsion_)
    if (d < 2) throw InvalidInput("torsion orders must be at least 2");
  if (order_ > 100000) throw CapExceeded("group order beyond the desk scale");
}

std::vector<long long> CharacterTable::tuple(long long idx) const {
  if (idx < 0 || idx >= order_) throw InvalidInput("character index out of range");
  std::vector<long long> t(torsion_.size(), 0);
  for (long long i = static_cast<long long>(torsion_.size()) - 1; i >= 0; --i) {
    t[static_cast<size_t>(i)] = idx % torsion_[static_cast<size_t>(i)];
    idx /= torsion_[static_cast<size_t>(i)];
  }
  return t;
}

long long CharacterTable::index(const std::vector<long long>& tup) const {
  if (tup.size() != torsion_.size()) throw InvalidInput("tuple length mismatch");
  long long idx = 0;
  for (size_t i = 0; i < tup.size(); ++i) {
    long long c = ((tup[i] % torsion_[i]) + torsion_[i]) % torsion_[i];
    idx = idx * torsion_[i] + c;
  }
  return idx;
}

std::string CharacterTable::label(long long idx) const {
  std::vector<long long> t = tuple(idx);
  std::string s = "chi(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

long long CharacterTable::exponent(long long idx, const std::vector<BigInt>& h) const {
  if (h.size() != torsion_.size()) throw InvalidInput("element coordinate length mismatch");
  std::vector<long long> a = tuple(idx);
  const long long D = red_.order();
  long long e = 0;
  for (size_t i = 0; i < torsion_.size(); ++i) {
    long long hi = to_ll(((h[i] % torsion_[i]) + torsion_[i]) % torsion_[i]);
    e = (e + a[i] * hi % D * (D / torsion_[i])) % D;
  }
  return e;
}

CycloReducer::Elem CharacterTable::value(long long idx, const std::vector<BigInt>& h) const {
  return red_.root_power(BigInt(exponent(idx, h)));
}

long long CharacterTable::dual_mul(long long a, long long b) const {
  std::vector<long long> ta = tuple(a), tb = tuple(b);
  for (size_t i = 0; i < ta.size(); ++i) ta[i] = (ta[i] + tb[i]) % torsion_[i];
  return index(ta);
}

long long CharacterTable::dual_inverse(long long a) const {
  std::vector<long long> t = tuple(a);
  for (size_t i = 0; i < t.size(); ++i) t[i] = (torsion_[i] - t[i]) % torsion_[i];
  return index(t);
}

std::vector<std::vector<BigInt>> CharacterTable::elements() const {
  std::vector<std::vector<BigInt>> out;
  out.reserve(static_cast<size_t>(order_));
  for (long long idx = 0; idx < order_; ++idx) {
    std::vector<long long> t = tuple(idx);
    out.emplace_back(t.begin(), t.end());
  }
  return out;
}

bool CharacterTable::check_orthogonality() const {
  const auto hs = elements();
  for (long long a = 0; a < order_; ++a)
    for (long long b = 0; b < order_; ++b) {
      CycloReducer::Elem acc = red_.zero();
      for (const auto& h : hs)
        acc = red_.add(std::move(acc),
                       red_.root_power(BigInt(exponent(a, h) - exponent(b, h))));
      auto val = red_.as_integer(acc);
      if (!val) return false;
      if (a == b ? *val != order_ : *val != 0) return false;
    }
  return true;
}

long long perm_character_multiplicity(const CharacterTable& table,
                                      const PermutationAction& action, long long chi) {
  if (static_cast<size_t>(table.torsion().size()) !=
      action.presentation().generators.size())
    throw InvalidInput("action generators do not match the torsion list");
  const CycloReducer& red = table.reducer();
  CycloReducer::Elem acc = red.zero();
  for (const auto& h : table.elements()) {
    long long fix = action.evaluate_coords(h).fixed_points();
    if (fix == 0) continue;
    acc = red.add(std::move(acc),
                  red.scaled(red.root_power(BigInt(-table.exponent(chi, h))), BigInt(fix)));
  }
  auto total = red.as_integer(acc);
  if (!total)
    throw Inconsistency("character sum for " + table.label(chi) +
                        " is not a rational integer; the action is not an H-action");
  if (*total % table.group_order() != 0 || *total < 0)
    throw Inconsistency("character sum for " + table.label(chi) +
                        " is not a nonnegative multiple of |H|");
  return to_ll(*total / table.group_order());
}

IntMat bratteli_step(const CharacterTable& table, const PermutationAction& action) {
  const long long m = table.count();
  std::vector<long long> mult(static_cast<size_t>(m));
  long long total = 0;
  for (long long i = 0; i < m; ++i) {
    mult[static_cast<size_t>(i)] = perm_character_multiplicity(table, action, i);
    total += mult[static_cast<size_t>(i)];
  }
  if (total != action.points())
    throw Inconsistency("multiplicities sum to " + std::to_string(total) + ", expected " +
                        std::to_string(action.points()));
  IntMat M(m, m);
  for (long long r = 0; r < m; ++r)
    for (long long c = 0; c < m; ++c)
      M.at(r, c) = mult[static_cast<size_t>(table.dual_mul(r, table.dual_inverse(c)))];
  return M;
}

}  // namespace qrok
