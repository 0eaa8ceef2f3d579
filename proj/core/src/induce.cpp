#include <qrok/induce.hpp>

#include <sstream>

namespace qrok {

GroupModel::Element GroupModel::eval(const Word& w) const {
  Element e = identity();
  for (int x : w) {
    Element g = generator(std::abs(x) - 1);
    if (x < 0) g = inverse(g);
    e = mul(e, g);
  }
  return e;
}

KleinBottleModel::KleinBottleModel() {
  pres_.generators = {"a", "b"};
  // b a b^{-1} a = 1
  pres_.relators = {{2, 1, -2, 1}};
  sub_.generators = {"a", "b^2"};
  sub_.relators = {{1, 2, -1, -2}};  // H is abelian
}

GroupModel::Element KleinBottleModel::generator(long long i) const {
  if (i == 0) return {{BigInt(1), BigInt(0)}};
  if (i == 1) return {{BigInt(0), BigInt(1)}};
  throw InvalidInput("Klein bottle group has two generators");
}

GroupModel::Element KleinBottleModel::mul(const Element& a, const Element& b) const {
  // (a^m b^n)(a^m' b^n') = a^{m + (-1)^n m'} b^{n + n'}
  const BigInt &m = a.v[0], &n = a.v[1], &mp = b.v[0], &np = b.v[1];
  BigInt sign = mpz_even_p(n.get_mpz_t()) ? 1 : -1;
  return {{m + sign * mp, n + np}};
}

GroupModel::Element KleinBottleModel::inverse(const Element& a) const {
  const BigInt &m = a.v[0], &n = a.v[1];
  BigInt sign = mpz_even_p(n.get_mpz_t()) ? 1 : -1;
  return {{-sign * m, -n}};
}

std::string KleinBottleModel::str(const Element& a) const {
  std::ostringstream os;
  if (a.v[0] == 0 && a.v[1] == 0) return "1";
  if (a.v[0] != 0) {
    os << 'a';
    if (a.v[0] != 1) os << '^' << int_str(a.v[0]);
  }
  if (a.v[1] != 0) {
    if (a.v[0] != 0) os << ' ';
    os << 'b';
    if (a.v[1] != 1) os << '^' << int_str(a.v[1]);
  }
  return os.str();
}

std::optional<std::vector<BigInt>> KleinBottleModel::factor_in_subgroup(const Element& a) const {
  if (mpz_odd_p(a.v[1].get_mpz_t())) return std::nullopt;
  return std::vector<BigInt>{a.v[0], a.v[1] / 2};
}

GroupModel::Element KleinBottleModel::from_subgroup(const std::vector<BigInt>& h) const {
  if (h.size() != 2) throw InvalidInput("subgroup coordinates need two entries");
  return {{h[0], h[1] * 2}};
}

AbelianModel::AbelianModel(FgAbelianGroup g, std::vector<GroupElement> subgroup_gens)
    : group_(std::move(g)), hgens_(std::move(subgroup_gens)) {
  for (long long i = 0; i < group_.ngens(); ++i)
    pres_.generators.push_back("g" + std::to_string(i + 1));
  for (long long i = 0; i < group_.ngens(); ++i)
    for (long long j = i + 1; j < group_.ngens(); ++j)
      pres_.relators.push_back(
          {static_cast<int>(i + 1), static_cast<int>(j + 1), -static_cast<int>(i + 1),
           -static_cast<int>(j + 1)});
  for (size_t t = 0; t < group_.torsion.size(); ++t) {
    Word w;
    int gen = static_cast<int>(group_.rank + t + 1);
    for (long long k = 0; k < group_.torsion[t]; ++k) w.push_back(gen);
    pres_.relators.push_back(std::move(w));
  }
  for (size_t i = 0; i < hgens_.size(); ++i)
    sub_.generators.push_back("h" + std::to_string(i + 1));
  for (size_t i = 0; i < hgens_.size(); ++i)
    for (size_t j = i + 1; j < hgens_.size(); ++j)
      sub_.relators.push_back({static_cast<int>(i + 1), static_cast<int>(j + 1),
                               -static_cast<int>(i + 1), -static_cast<int>(j + 1)});
}

GroupElement AbelianModel::to_group(const Element& e) const {
  std::vector<BigInt> coords = e.v;
  return element(group_, std::move(coords));
}

GroupModel::Element AbelianModel::from_group(const GroupElement& e) const {
  Element out;
  out.v = e.free;
  out.v.insert(out.v.end(), e.tors.begin(), e.tors.end());
  return out;
}

GroupModel::Element AbelianModel::identity() const { return from_group(zero_element(group_)); }

GroupModel::Element AbelianModel::generator(long long i) const {
  if (i < 0 || i >= group_.ngens()) throw InvalidInput("generator index out of range");
  std::vector<BigInt> coords(group_.ngens(), BigInt(0));
  coords[i] = 1;
  return from_group(element(group_, std::move(coords)));
}

GroupModel::Element AbelianModel::mul(const Element& a, const Element& b) const {
  return from_group(add(group_, to_group(a), to_group(b)));
}

GroupModel::Element AbelianModel::inverse(const Element& a) const {
  return from_group(negate(group_, to_group(a)));
}

std::string AbelianModel::str(const Element& a) const { return element_str(to_group(a)); }

std::optional<std::vector<BigInt>> AbelianModel::factor_in_subgroup(const Element& a) const {
  // Solve sum_i x_i h_i = a in the group: integer solve over generators plus
  // torsion slack columns d_t e_t.
  const long long n = group_.ngens();
  const long long t = static_cast<long long>(hgens_.size());
  const long long k = static_cast<long long>(group_.torsion.size());
  IntMat m(n, t + k);
  for (long long col = 0; col < t; ++col) {
    const GroupElement& h = hgens_[col];
    for (long long r = 0; r < group_.rank; ++r) m.at(r, col) = h.free[r];
    for (long long r = 0; r < k; ++r) m.at(group_.rank + r, col) = h.tors[r];
  }
  for (long long r = 0; r < k; ++r) m.at(group_.rank + r, t + r) = group_.torsion[r];
  auto sol = solve_integer(m, a.v);
  if (!sol) return std::nullopt;
  return std::vector<BigInt>(sol->begin(), sol->begin() + t);
}

GroupModel::Element AbelianModel::from_subgroup(const std::vector<BigInt>& h) const {
  if (static_cast<long long>(h.size()) != static_cast<long long>(hgens_.size()))
    throw InvalidInput("subgroup coordinate length mismatch");
  GroupElement acc = zero_element(group_);
  for (size_t i = 0; i < hgens_.size(); ++i)
    acc = add(group_, acc, scale(group_, h[i], hgens_[i]));
  return from_group(acc);
}

SubgroupTransversal make_transversal(const GroupModel& model, const std::vector<Word>& reps) {
  if (reps.empty()) throw InvalidInput("a transversal needs at least one representative");
  SubgroupTransversal t;
  t.rep_words = reps;
  for (const Word& w : reps) t.reps.push_back(model.eval(w));

  const auto& gens = model.presentation().generators;
  for (size_t i = 0; i < t.reps.size(); ++i)
    for (size_t j = i + 1; j < t.reps.size(); ++j) {
      auto diff = model.mul(model.inverse(t.reps[j]), t.reps[i]);
      if (model.factor_in_subgroup(diff))
        throw CertificateFailure("representatives " + word_str(reps[i], gens) + " and " +
                                 word_str(reps[j], gens) + " lie in the same coset");
    }

  t.cocycle.resize(gens.size());
  for (size_t s = 0; s < gens.size(); ++s) {
    t.cocycle[s].resize(t.reps.size());
    GroupModel::Element gen = model.generator(static_cast<long long>(s));
    for (size_t i = 0; i < t.reps.size(); ++i) {
      GroupModel::Element moved = model.mul(gen, t.reps[i]);
      bool placed = false;
      for (size_t j = 0; j < t.reps.size(); ++j) {
        auto h = model.factor_in_subgroup(model.mul(model.inverse(t.reps[j]), moved));
        if (h) {
          t.cocycle[s][i] = {static_cast<long long>(j), *h};
          placed = true;
          break;
        }
      }
      if (!placed)
        throw CertificateFailure("representatives do not cover the coset of " + gens[s] + " * " +
                                 word_str(reps[i], gens) + "; not a transversal");
    }
  }
  return t;
}

std::vector<std::pair<long long, std::vector<BigInt>>> conjugate_trace_set(
    const GroupModel& model, const SubgroupTransversal& t, const Word& g) {
  std::vector<std::pair<long long, std::vector<BigInt>>> out;
  GroupModel::Element e = model.eval(g);
  for (long long i = 0; i < t.count(); ++i) {
    auto conj = model.mul(model.mul(model.inverse(t.reps[i]), e), t.reps[i]);
    if (auto h = model.factor_in_subgroup(conj)) out.emplace_back(i, *h);
  }
  return out;
}

PermutationAction induce(const GroupModel& model, const SubgroupTransversal& t,
                         const PermutationAction& h_action) {
  if (h_action.presentation().generators.size() !=
      model.subgroup_presentation().generators.size())
    throw InvalidInput("H-action generator count does not match the subgroup presentation");
  const long long nx = h_action.points();
  const long long k = t.count();
  std::vector<Perm> gens;
  for (size_t s = 0; s < model.presentation().generators.size(); ++s) {
    std::vector<long long> img(k * nx);
    for (long long i = 0; i < k; ++i) {
      const auto& entry = t.cocycle[s][i];
      Perm hp = h_action.evaluate_coords(entry.h);
      for (long long x = 0; x < nx; ++x) img[i * nx + x] = entry.target * nx + hp(x);
    }
    gens.push_back(Perm::from_images(std::move(img)));
  }
  return action_from_generators(model.presentation(), std::move(gens));
}

long long induced_fixed_points_via_trace(const GroupModel& model, const SubgroupTransversal& t,
                                         const PermutationAction& h_action, const Word& g) {
  long long total = 0;
  for (const auto& [i, h] : conjugate_trace_set(model, t, g))
    total += h_action.evaluate_coords(h).fixed_points();
  return total;
}

}  // namespace qrok
