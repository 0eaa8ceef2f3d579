#pragma once

#include <qrok/abelian.hpp>
#include <qrok/action.hpp>

#include <memory>
#include <optional>

namespace qrok {

// Concrete group with a normal form, a distinguished subgroup H, and exact
// factorization into H-generator coordinates. The two shipped models are
// finitely generated abelian groups and the Klein bottle group.
class GroupModel {
 public:
  struct Element {
    std::vector<BigInt> v;
    bool operator==(const Element& o) const { return v == o.v; }
  };

  virtual ~GroupModel() = default;
  virtual const GroupPresentation& presentation() const = 0;
  virtual const GroupPresentation& subgroup_presentation() const = 0;

  virtual Element identity() const = 0;
  virtual Element generator(long long i) const = 0;  // 0-based
  virtual Element mul(const Element& a, const Element& b) const = 0;
  virtual Element inverse(const Element& a) const = 0;
  virtual std::string str(const Element& a) const = 0;

  // H-generator coordinates of a, or nullopt when a is outside H.
  virtual std::optional<std::vector<BigInt>> factor_in_subgroup(const Element& a) const = 0;
  virtual Element from_subgroup(const std::vector<BigInt>& h) const = 0;

  Element eval(const Word& w) const;
  bool is_identity(const Element& a) const { return a == identity(); }
};

// Klein bottle group <a, b | b a b^{-1} = a^{-1}>, normal form a^m b^n with
// element coordinates (m, n). H = <a, b^2> is free abelian of rank 2 and has
// index 2.
class KleinBottleModel : public GroupModel {
 public:
  KleinBottleModel();
  const GroupPresentation& presentation() const override { return pres_; }
  const GroupPresentation& subgroup_presentation() const override { return sub_; }
  Element identity() const override { return {{BigInt(0), BigInt(0)}}; }
  Element generator(long long i) const override;
  Element mul(const Element& a, const Element& b) const override;
  Element inverse(const Element& a) const override;
  std::string str(const Element& a) const override;
  std::optional<std::vector<BigInt>> factor_in_subgroup(const Element& a) const override;
  Element from_subgroup(const std::vector<BigInt>& h) const override;

 private:
  GroupPresentation pres_, sub_;
};

// Finitely generated abelian group with H generated by explicit elements.
// Membership and factorization are exact via integer linear solving.
class AbelianModel : public GroupModel {
 public:
  AbelianModel(FgAbelianGroup g, std::vector<GroupElement> subgroup_gens);
  const GroupPresentation& presentation() const override { return pres_; }
  const GroupPresentation& subgroup_presentation() const override { return sub_; }
  Element identity() const override;
  Element generator(long long i) const override;
  Element mul(const Element& a, const Element& b) const override;
  Element inverse(const Element& a) const override;
  std::string str(const Element& a) const override;
  std::optional<std::vector<BigInt>> factor_in_subgroup(const Element& a) const override;
  Element from_subgroup(const std::vector<BigInt>& h) const override;

  const FgAbelianGroup& group() const { return group_; }

 private:
  GroupElement to_group(const Element& e) const;
  Element from_group(const GroupElement& e) const;

  FgAbelianGroup group_;
  std::vector<GroupElement> hgens_;
  GroupPresentation pres_, sub_;
};

// Left transversal g_1, ..., g_k for G/H with the full cocycle table:
// s * g_i = g_j * h with h in H-generator coordinates.
struct SubgroupTransversal {
  std::vector<Word> rep_words;
  std::vector<GroupModel::Element> reps;
  struct Entry {
    long long target = 0;
    std::vector<BigInt> h;
  };
  std::vector<std::vector<Entry>> cocycle;  // [generator][coset]

  long long count() const { return static_cast<long long>(reps.size()); }
};

// Builds and validates the cocycle: representatives must lie in pairwise
// distinct cosets and every generator translate must land in a covered coset.
SubgroupTransversal make_transversal(const GroupModel& model, const std::vector<Word>& reps);

// Coset indices i with g_i^{-1} g g_i in H, together with the H-coordinates
// of those conjugates. At most k entries; the fixed-point count of g on the
// induced space is the sum of the fixed points of these H-elements.
std::vector<std::pair<long long, std::vector<BigInt>>> conjugate_trace_set(
    const GroupModel& model, const SubgroupTransversal& t, const Word& g);

// Induced G-action on (cosets) x (H-space X): g.(i, x) = (j, h.x) through the
// cocycle. Points are ordered coset-major: (i, x) <-> i * |X| + x. The result
// is validated against the G presentation.
PermutationAction induce(const GroupModel& model, const SubgroupTransversal& t,
                         const PermutationAction& h_action);

// Independent route to fix counts on the induced space (via the trace set),
// used to cross-check induce().
long long induced_fixed_points_via_trace(const GroupModel& model, const SubgroupTransversal& t,
                                         const PermutationAction& h_action, const Word& g);

}  // namespace qrok
