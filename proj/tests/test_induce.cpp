#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <qrok/family.hpp>
#include <qrok/induce.hpp>

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace qrok;

namespace {

SubgroupTransversal klein_transversal(const KleinBottleModel& model) {
  return make_transversal(model, {Word{}, parse_word("b", model.presentation().generators)});
}

// Words of length <= 4 that act trivially on the induced space at torus level
// 1 over p = 3, checked against an independent brute-force enumeration.
const std::set<std::string> kTrivialLevel1{
    "a^3",          "a^-3",          "a b a b^-1",        "a b^-1 a b",
    "a^-1 b a^-1 b^-1", "a^-1 b^-1 a^-1 b", "b a b^-1 a",        "b a^-1 b^-1 a^-1",
    "b^-1 a b a",   "b^-1 a^-1 b a^-1"};

// At level 2 the a^{+-3} words survive (3 is nonzero mod 9), leaving only the
// conjugated-commutator shapes.
const std::set<std::string> kTrivialLevel2{
    "a b a b^-1",        "a b^-1 a b",        "a^-1 b a^-1 b^-1", "a^-1 b^-1 a^-1 b",
    "b a b^-1 a",        "b a^-1 b^-1 a^-1",  "b^-1 a b a",       "b^-1 a^-1 b a^-1"};

}  // namespace

TEST_CASE("Klein bottle normal form arithmetic") {
  KleinBottleModel m;
  auto a = m.generator(0), b = m.generator(1);

  // b a b^-1 = a^-1 is the defining relation.
  auto conj = m.mul(m.mul(b, a), m.inverse(b));
  CHECK(conj == m.inverse(a));
  CHECK(m.eval(m.presentation().relators[0]) == m.identity());

  CHECK(m.str(m.mul(a, b)) == "a b");
  CHECK(m.str(m.identity()) == "1");
  CHECK(m.str(m.eval(Word{1, 1, 2, 2, 2})) == "a^2 b^3");

  // H membership is parity of the b-exponent.
  CHECK_FALSE(m.factor_in_subgroup(b).has_value());
  auto ha = m.factor_in_subgroup(a);
  REQUIRE(ha.has_value());
  CHECK(*ha == std::vector<BigInt>{BigInt(1), BigInt(0)});
  auto hb2 = m.factor_in_subgroup(m.mul(b, b));
  REQUIRE(hb2.has_value());
  CHECK(*hb2 == std::vector<BigInt>{BigInt(0), BigInt(1)});
  CHECK(m.from_subgroup(*hb2) == m.mul(b, b));
}

TEST_CASE("transversal construction and its cocycle") {
  KleinBottleModel m;
  SubgroupTransversal t = klein_transversal(m);
  CHECK(t.count() == 2);

  // a * 1 = 1 * a, a * b = b * (b^-1 a b) = b * a^-1.
  CHECK(t.cocycle[0][0].target == 0);
  CHECK(t.cocycle[0][0].h == std::vector<BigInt>{BigInt(1), BigInt(0)});
  CHECK(t.cocycle[0][1].target == 1);
  CHECK(t.cocycle[0][1].h == std::vector<BigInt>{BigInt(-1), BigInt(0)});
  // b * 1 = b * 1, b * b = 1 * b^2.
  CHECK(t.cocycle[1][0].target == 1);
  CHECK(t.cocycle[1][0].h == std::vector<BigInt>{BigInt(0), BigInt(0)});
  CHECK(t.cocycle[1][1].target == 0);
  CHECK(t.cocycle[1][1].h == std::vector<BigInt>{BigInt(0), BigInt(1)});

  // a lies in H, so {1, a} hits one coset twice; {1} misses the coset of b.
  CHECK_THROWS_AS(make_transversal(m, {Word{}, Word{1}}), CertificateFailure);
  CHECK_THROWS_AS(make_transversal(m, {Word{}}), CertificateFailure);
  CHECK_THROWS_AS(make_transversal(m, {}), InvalidInput);
}

TEST_CASE("conjugate trace sets") {
  KleinBottleModel m;
  SubgroupTransversal t = klein_transversal(m);

  auto ts_a = conjugate_trace_set(m, t, Word{1});
  REQUIRE(ts_a.size() == 2);
  CHECK(ts_a[0] == std::pair<long long, std::vector<BigInt>>{0, {BigInt(1), BigInt(0)}});
  CHECK(ts_a[1] == std::pair<long long, std::vector<BigInt>>{1, {BigInt(-1), BigInt(0)}});

  CHECK(conjugate_trace_set(m, t, Word{2}).empty());

  auto ts_b2 = conjugate_trace_set(m, t, Word{2, 2});
  REQUIRE(ts_b2.size() == 2);
  CHECK(ts_b2[0].second == std::vector<BigInt>{BigInt(0), BigInt(1)});
  CHECK(ts_b2[1].second == std::vector<BigInt>{BigInt(0), BigInt(1)});
}

TEST_CASE("induced Klein bottle action at level 1 over p = 3") {
  KleinBottleModel m;
  SubgroupTransversal t = klein_transversal(m);
  KleinBottleFamily fam(3);
  PermutationAction h_act = fam.level_action(1);
  CHECK(h_act.points() == 9);

  PermutationAction g_act = induce(m, t, h_act);
  CHECK(g_act.points() == 18);

  std::set<std::string> trivial;
  for (const Word& w : enumerate_words(2, 4)) {
    long long fp = g_act.fixed_points(w);
    // Semiregular dichotomy: a word fixes nothing or everything.
    CHECK((fp == 0 || fp == 18));
    CHECK(fp == induced_fixed_points_via_trace(m, t, h_act, w));
    if (fp == 18) trivial.insert(word_str(w, m.presentation().generators));
  }
  CHECK(trivial == kTrivialLevel1);
}

TEST_CASE("induced Klein bottle action at level 2 over p = 3") {
  KleinBottleModel m;
  SubgroupTransversal t = klein_transversal(m);
  KleinBottleFamily fam(3);
  PermutationAction h_act = fam.level_action(2);
  PermutationAction g_act = induce(m, t, h_act);
  CHECK(g_act.points() == 162);

  std::set<std::string> trivial;
  for (const Word& w : enumerate_words(2, 4)) {
    long long fp = g_act.fixed_points(w);
    CHECK((fp == 0 || fp == 162));
    CHECK(fp == induced_fixed_points_via_trace(m, t, h_act, w));
    if (fp == 162) trivial.insert(word_str(w, m.presentation().generators));
  }
  CHECK(trivial == kTrivialLevel2);
  CHECK(g_act.fixed_points(parse_word("a^3", m.presentation().generators)) == 0);
}

TEST_CASE("inducing the regular subgroup action regenerates the regular action") {
  // G = Z/4, H = <g^2> of index 2, H acting regularly on two points.
  AbelianModel m(FgAbelianGroup{0, {4}}, {element(FgAbelianGroup{0, {4}}, {BigInt(2)})});
  SubgroupTransversal t = make_transversal(m, {Word{}, Word{1}});
  PermutationAction h_act =
      action_from_generators(m.subgroup_presentation(), {Perm::translation(2, BigInt(1))});
  PermutationAction g_act = induce(m, t, h_act);
  CHECK(g_act.points() == 4);
  CHECK(g_act.evaluate(Word{1}).order() == 4);
  CHECK(g_act.fixed_points(Word{1}) == 0);
  CHECK(g_act.fixed_points(Word{1, 1}) == 0);
  CHECK(g_act.evaluate(Word{1, 1, 1, 1}).is_identity());
}

TEST_CASE("induction from a finite-index subgroup of Z") {
  // G = Z, H = 2Z acting on Z/4 by translation; the induced action is the
  // translation action of Z on Z/8 up to relabeling.
  FgAbelianGroup z{1, {}};
  AbelianModel m(z, {element(z, {BigInt(2)})});
  SubgroupTransversal t = make_transversal(m, {Word{}, Word{1}});
  PermutationAction h_act =
      action_from_generators(m.subgroup_presentation(), {Perm::translation(4, BigInt(1))});
  PermutationAction g_act = induce(m, t, h_act);
  CHECK(g_act.points() == 8);
  CHECK(g_act.evaluate(Word{1}).order() == 8);
  for (long long k = 1; k < 8; ++k)
    CHECK(g_act.evaluate(Word{1}).power(k).fixed_points() == 0);
  CHECK(g_act.evaluate(Word{1}).power(8).is_identity());

  // Generator count mismatch between H-action and subgroup presentation.
  PermutationAction wrong(GroupPresentation{{"x", "y"}, {}},
                          {Perm::identity(3), Perm::identity(3)});
  CHECK_THROWS_AS(induce(m, t, wrong), InvalidInput);
}
