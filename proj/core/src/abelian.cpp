#include <qrok/abelian.hpp>

#include <sstream>

namespace qrok {

BigInt FgAbelianGroup::order() const {
  if (rank > 0) throw InvalidInput("order of an infinite group");
  BigInt n = 1;
  for (long long d : torsion) n *= d;
  return n;
}

std::string FgAbelianGroup::str() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (rank > 0) {
    os << "Z";
    if (rank > 1) os << '^' << rank;
    first = false;
  }
  for (long long d : torsion) {
    if (!first) os << " + ";
    os << "Z/" << d;
    first = false;
  }
  return os.str();
}

GroupElement element(const FgAbelianGroup& g, std::vector<BigInt> coords) {
  if (static_cast<long long>(coords.size()) != g.ngens())
    throw InvalidInput("element needs one coordinate per generator");
  GroupElement e;
  e.free.assign(coords.begin(), coords.begin() + g.rank);
  e.tors.assign(coords.begin() + g.rank, coords.end());
  return reduce(g, std::move(e));
}

GroupElement zero_element(const FgAbelianGroup& g) {
  GroupElement e;
  e.free.assign(g.rank, BigInt(0));
  e.tors.assign(g.torsion.size(), BigInt(0));
  return e;
}

GroupElement reduce(const FgAbelianGroup& g, GroupElement e) {
  if (static_cast<long long>(e.free.size()) != g.rank ||
      e.tors.size() != g.torsion.size())
    throw InvalidInput("element shape does not match the group");
  for (size_t i = 0; i < e.tors.size(); ++i) {
    e.tors[i] %= g.torsion[i];
    if (e.tors[i] < 0) e.tors[i] += g.torsion[i];
  }
  return e;
}

GroupElement add(const FgAbelianGroup& g, const GroupElement& a, const GroupElement& b) {
  GroupElement r = a;
  for (long long i = 0; i < g.rank; ++i) r.free[i] += b.free[i];
  for (size_t i = 0; i < r.tors.size(); ++i) r.tors[i] += b.tors[i];
  return reduce(g, std::move(r));
}

GroupElement negate(const FgAbelianGroup& g, const GroupElement& a) {
  GroupElement r = a;
  for (auto& v : r.free) v = -v;
  for (auto& v : r.tors) v = -v;
  return reduce(g, std::move(r));
}

GroupElement scale(const FgAbelianGroup& g, const BigInt& n, const GroupElement& a) {
  GroupElement r = a;
  for (auto& v : r.free) v *= n;
  for (auto& v : r.tors) v *= n;
  return reduce(g, std::move(r));
}

bool is_zero(const GroupElement& a) {
  for (const auto& v : a.free)
    if (v != 0) return false;
  for (const auto& v : a.tors)
    if (v != 0) return false;
  return true;
}

std::string element_str(const GroupElement& a) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (const auto& v : a.free) {
    if (!first) os << ", ";
    os << int_str(v);
    first = false;
  }
  for (const auto& v : a.tors) {
    if (!first) os << ", ";
    os << int_str(v);
    first = false;
  }
  os << ')';
  return os.str();
}

std::optional<BigInt> element_order(const FgAbelianGroup& g, const GroupElement& a) {
  for (const auto& v : a.free)
    if (v != 0) return std::nullopt;
  BigInt ord = 1;
  for (size_t i = 0; i < a.tors.size(); ++i) {
    BigInt d(g.torsion[i]);
    BigInt gcd;
    mpz_gcd(gcd.get_mpz_t(), a.tors[i].get_mpz_t(), d.get_mpz_t());
    BigInt oi = d / gcd;
    mpz_lcm(ord.get_mpz_t(), ord.get_mpz_t(), oi.get_mpz_t());
  }
  return ord;
}

FgAbelianGroup canonical_decomposition(const IntMat& relations, long long ngens) {
  if (relations.cols != ngens)
    throw InvalidInput("relation matrix must have one column per generator");
  FgAbelianGroup g;
  if (relations.rows == 0) {
    g.rank = ngens;
    return g;
  }
  SmithResult s = smith_normal_form(relations);
  long long nonzero = 0;
  for (const auto& d : s.invariant_factors()) {
    ++nonzero;
    if (d >= 2) g.torsion.push_back(to_ll(d));
  }
  g.rank = ngens - nonzero;
  return g;
}

namespace {

// 0, 1, -1, 2, -2, ... enumeration of a symmetric box.
std::vector<BigInt> signed_range(long long box) {
  std::vector<BigInt> out;
  out.emplace_back(0);
  for (long long v = 1; v <= box; ++v) {
    out.emplace_back(v);
    out.emplace_back(-v);
  }
  return out;
}

}  // namespace

std::vector<GroupElement> enumerate_box(const FgAbelianGroup& g, long long box) {
  if (box < 1) throw InvalidInput("coefficient box must be >= 1");
  std::vector<std::vector<BigInt>> ranges;
  for (long long i = 0; i < g.rank; ++i) ranges.push_back(signed_range(box));
  for (long long d : g.torsion) {
    std::vector<BigInt> r;
    for (long long v = 0; v <= std::min(d - 1, box); ++v) r.emplace_back(v);
    ranges.push_back(std::move(r));
  }
  std::vector<GroupElement> out;
  std::vector<size_t> idx(ranges.size(), 0);
  for (;;) {
    std::vector<BigInt> coords;
    coords.reserve(ranges.size());
    for (size_t i = 0; i < ranges.size(); ++i) coords.push_back(ranges[i][idx[i]]);
    GroupElement e = element(g, std::move(coords));
    if (!is_zero(e)) out.push_back(std::move(e));
    size_t pos = ranges.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < ranges[pos].size()) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
    if (ranges.empty()) return out;
  }
}

std::vector<GroupElement> enumerate_all(const FgAbelianGroup& g) {
  if (!g.is_finite()) throw InvalidInput("cannot enumerate an infinite group");
  std::vector<GroupElement> out;
  GroupElement e = zero_element(g);
  for (;;) {
    out.push_back(e);
    size_t pos = e.tors.size();
    bool carried = true;
    while (pos > 0 && carried) {
      --pos;
      e.tors[pos] += 1;
      if (e.tors[pos] < g.torsion[pos]) {
        carried = false;
      } else {
        e.tors[pos] = 0;
      }
    }
    if (carried) break;
  }
  return out;
}

}  // namespace qrok
