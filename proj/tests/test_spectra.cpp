#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <qrok/bratteli.hpp>
#include <qrok/characters.hpp>
#include <qrok/cyclotomic.hpp>

#include <doctest.h>

#include "oracle_helpers.hpp"

using namespace qrok;

namespace {

IntMat make_mat(long long n, std::vector<long long> entries) {
  IntMat m(n, n);
  for (long long r = 0; r < n; ++r)
    for (long long c = 0; c < n; ++c) m.at(r, c) = entries[static_cast<size_t>(r * n + c)];
  return m;
}

PermutationAction cyclic_action(long long d, Perm image) {
  GroupPresentation pres;
  pres.generators = {"h"};
  pres.relators = {Word(static_cast<size_t>(d), 1)};
  return action_from_generators(pres, {std::move(image)});
}

}  // namespace

TEST_CASE("cyclotomic polynomials match the textbook table") {
  CHECK(cyclotomic_poly(1) == std::vector<BigInt>{-1, 1});
  CHECK(cyclotomic_poly(2) == std::vector<BigInt>{1, 1});
  CHECK(cyclotomic_poly(3) == std::vector<BigInt>{1, 1, 1});
  CHECK(cyclotomic_poly(4) == std::vector<BigInt>{1, 0, 1});
  CHECK(cyclotomic_poly(6) == std::vector<BigInt>{1, -1, 1});
  CHECK(cyclotomic_poly(12) == std::vector<BigInt>{1, 0, -1, 0, 1});
  CHECK_THROWS_AS(cyclotomic_poly(0), InvalidInput);
}

TEST_CASE("cyclotomic ring arithmetic in Z[i]") {
  CycloReducer red(4);
  CHECK(red.degree() == 2);
  auto i = red.root_power(BigInt(1));
  auto minus_one = red.mul(i, i);
  CHECK(red.as_integer(minus_one) == BigInt(-1));
  CHECK_FALSE(red.as_integer(i).has_value());

  // 1 + i + i^2 + i^3 = 0.
  auto s = red.zero();
  for (long long j = 0; j < 4; ++j) s = red.add(s, red.root_power(BigInt(j)));
  CHECK(red.is_zero(s));

  // Root powers wrap mod D, including negatives.
  CHECK(red.root_power(BigInt(5)) == red.root_power(BigInt(1)));
  CHECK(red.root_power(BigInt(-1)) == red.root_power(BigInt(3)));

  CHECK(red.as_integer(red.scaled(red.one(), BigInt(7))) == BigInt(7));
}

TEST_CASE("root-of-unity sums vanish in every order used by small groups") {
  for (long long D : {2, 3, 4, 6, 12}) {
    CycloReducer red(D);
    auto s = red.zero();
    for (long long j = 0; j < D; ++j) s = red.add(s, red.root_power(BigInt(j)));
    CHECK(red.is_zero(s));
  }
}

TEST_CASE("character table indexing and duality") {
  CharacterTable t({2, 3});
  CHECK(t.group_order() == 6);
  CHECK(t.root_order() == 6);
  CHECK(t.tuple(0) == std::vector<long long>{0, 0});
  CHECK(t.tuple(1) == std::vector<long long>{0, 1});
  CHECK(t.tuple(3) == std::vector<long long>{1, 0});
  for (long long i = 0; i < t.count(); ++i) CHECK(t.index(t.tuple(i)) == i);

  // chi_(1,0) evaluated at h = (1,0) is zeta_6^3 = -1.
  CHECK(t.exponent(3, {BigInt(1), BigInt(0)}) == 3);
  CHECK(t.reducer().as_integer(t.value(3, {BigInt(1), BigInt(0)})) == BigInt(-1));

  CHECK(t.dual_mul(1, 2) == 0);  // (0,1) + (0,2) = (0,0)
  CHECK(t.dual_inverse(1) == 2);
  CHECK(t.dual_inverse(0) == 0);
  CHECK(t.label(0) == "chi(0,0)");

  CHECK(t.elements().size() == 6);
  CHECK(t.elements()[1] == std::vector<BigInt>{BigInt(0), BigInt(1)});
}

TEST_CASE("orthogonality holds exactly for the small duals") {
  for (const auto& torsion : std::vector<std::vector<long long>>{
           {2}, {3}, {4}, {2, 2}, {6}, {2, 4}}) {
    CharacterTable t(torsion);
    CHECK(t.check_orthogonality());
  }
}

TEST_CASE("character table limits") {
  CHECK_NOTHROW(CharacterTable({}));  // the trivial group has one character
  CHECK(CharacterTable({}).count() == 1);
  CHECK_THROWS_AS(CharacterTable({1}), InvalidInput);
  CHECK_THROWS_AS(CharacterTable({317, 317}), CapExceeded);
}

TEST_CASE("inclusion steps match hand-computed matrices") {
  CharacterTable z2({2});
  CHECK(bratteli_step(z2, cyclic_action(2, Perm::translation(2, BigInt(1)))) ==
        make_mat(2, {1, 1, 1, 1}));
  CHECK(bratteli_step(z2, cyclic_action(2, Perm::parse_cycles("(1 2)", 3))) ==
        make_mat(2, {2, 1, 1, 2}));
  CHECK(bratteli_step(z2, cyclic_action(2, Perm::identity(2))) == make_mat(2, {2, 0, 0, 2}));
  CHECK(bratteli_step(z2, cyclic_action(2, Perm::parse_cycles("(1 2)(3 4)", 4))) ==
        make_mat(2, {2, 2, 2, 2}));

  CharacterTable z3({3});
  CHECK(bratteli_step(z3, cyclic_action(3, Perm::translation(3, BigInt(1)))) ==
        make_mat(3, {1, 1, 1, 1, 1, 1, 1, 1, 1}));

  CharacterTable z4({4});
  CHECK(bratteli_step(z4, cyclic_action(4, Perm::translation(4, BigInt(1)))) ==
        make_mat(4, std::vector<long long>(16, 1)));
  // Generator of Z/4 acting with image order 2.
  CHECK(bratteli_step(z4, cyclic_action(4, Perm::parse_cycles("(1 2)", 2))) ==
        make_mat(4, {1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1}));

  CharacterTable z6({6});
  CHECK(bratteli_step(z6, cyclic_action(6, Perm::translation(6, BigInt(1)))) ==
        make_mat(6, std::vector<long long>(36, 1)));

  // Klein four-group: regular, and first generator swapping two points.
  GroupPresentation v4;
  v4.generators = {"s", "t"};
  v4.relators = {Word{1, 1}, Word{2, 2}, Word{1, 2, -1, -2}};
  CharacterTable tv({2, 2});
  PermutationAction reg = action_from_generators(
      v4, {Perm::parse_cycles("(1 2)(3 4)", 4), Perm::parse_cycles("(1 3)(2 4)", 4)});
  CHECK(bratteli_step(tv, reg) == make_mat(4, std::vector<long long>(16, 1)));
  PermutationAction halftriv =
      action_from_generators(v4, {Perm::parse_cycles("(1 2)", 2), Perm::identity(2)});
  CHECK(bratteli_step(tv, halftriv) ==
        make_mat(4, {1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1}));

  // Trivial group: one vertex, the step is the point count.
  CharacterTable t1({});
  PermutationAction five(GroupPresentation{}, {}, 5);
  IntMat m1 = bratteli_step(t1, five);
  CHECK(m1.rows == 1);
  CHECK(m1.at(0, 0) == 5);
}

TEST_CASE("step columns sum to the point count") {
  CharacterTable t({4});
  PermutationAction act = cyclic_action(4, Perm::parse_cycles("(1 2 3 4)(5 6)", 7));
  IntMat m = bratteli_step(t, act);
  for (long long c = 0; c < m.cols; ++c) {
    BigInt s = 0;
    for (long long r = 0; r < m.rows; ++r) s += m.at(r, c);
    CHECK(s == 7);
  }
}

TEST_CASE("multiplicities agree with the orbit-stabilizer oracle") {
  using qrok_test::orbit_multiplicities;
  using qrok_test::orbits_on_pairs;
  using qrok_test::step_from_multiplicities;

  struct Case {
    std::vector<long long> torsion;
    std::vector<Perm> gens;
    long long points;
  };
  std::vector<Case> cases = {
      {{2}, {Perm::parse_cycles("(1 2)", 5)}, 5},
      {{2}, {Perm::parse_cycles("(1 2)(3 4)", 5)}, 5},
      {{4}, {Perm::parse_cycles("(1 2 3 4)(5 6)", 6)}, 6},
      {{4}, {Perm::parse_cycles("(1 2)", 4)}, 4},
      {{3}, {Perm::parse_cycles("(1 2 3)(4 5 6)", 6)}, 6},
      {{2, 2}, {Perm::parse_cycles("(1 2)", 4), Perm::parse_cycles("(3 4)", 4)}, 4},
      {{2, 3}, {Perm::parse_cycles("(1 2)", 5), Perm::parse_cycles("(3 4 5)", 5)}, 5},
  };
  for (const auto& c : cases) {
    CharacterTable table(c.torsion);
    GroupPresentation pres;
    for (size_t i = 0; i < c.gens.size(); ++i) pres.generators.push_back("g" + std::to_string(i));
    for (size_t i = 0; i < c.torsion.size(); ++i)
      pres.relators.push_back(Word(static_cast<size_t>(c.torsion[i]), static_cast<int>(i + 1)));
    PermutationAction act = action_from_generators(pres, c.gens);

    std::vector<long long> oracle = orbit_multiplicities(c.torsion, c.gens, c.points);
    long long orbit_count = 0;
    {
      // Burnside check rides along: m(trivial) equals the orbit count.
      std::vector<char> seen(static_cast<size_t>(c.points), 0);
      for (long long x = 0; x < c.points; ++x) {
        if (seen[static_cast<size_t>(x)]) continue;
        ++orbit_count;
        for (const auto& h : qrok_test::all_tuples(c.torsion))
          seen[static_cast<size_t>(qrok_test::eval_tuple(c.gens, h, c.points)(x))] = 1;
      }
    }
    CHECK(oracle[0] == orbit_count);
    CHECK(perm_character_multiplicity(table, act, 0) == orbit_count);

    long long schur = 0;
    for (long long chi = 0; chi < table.count(); ++chi) {
      long long m = perm_character_multiplicity(table, act, chi);
      CHECK(m == oracle[static_cast<size_t>(chi)]);
      schur += m * m;
    }
    CHECK(schur == orbits_on_pairs(c.torsion, c.gens, c.points));

    CHECK(bratteli_step(table, act) == step_from_multiplicities(c.torsion, oracle));
  }
}

TEST_CASE("a dishonest action is caught by the multiplicity integrality check") {
  GroupPresentation pres;
  pres.generators = {"h"};
  pres.relators = {Word{1, 1}};
  // A 3-cycle pretending to have order 2; the raw constructor lets it through.
  PermutationAction fake(pres, {Perm::parse_cycles("(1 2 3)", 3)});
  CharacterTable t({2});
  CHECK_THROWS_AS(perm_character_multiplicity(t, fake, 1), Inconsistency);
}

TEST_CASE("telescope analysis of the regular-multiple family") {
  CyclicHomFamily fam(2, FactorSequence::linear(), CyclicHomFamily::Mode::RegularMultiple);
  CrossedProductAnalysis an = analyze_crossed_product(fam, 8);
  CHECK(an.verdict == CrossedProductAnalysis::Verdict::UHF);
  CHECK(an.supernatural.universal);
  CHECK(an.supernatural.complete);
  CHECK(an.cuts == std::vector<long long>{1, 3, 5, 7});

  const BratteliDiagram& d = an.diagram;
  CHECK(d.labels == std::vector<std::string>{"chi(0)", "chi(1)"});
  REQUIRE(d.sizes.size() == 9);
  CHECK(d.sizes[0] == std::vector<BigInt>{1, 1});
  CHECK(d.sizes[1] == std::vector<BigInt>{2, 2});
  CHECK(d.sizes[2] == std::vector<BigInt>{6, 6});
  CHECK(d.steps[0] == make_mat(2, {1, 1, 1, 1}));
  CHECK(d.steps[1] == make_mat(2, {3, 0, 0, 3}));
  CHECK(d.steps[2] == make_mat(2, {2, 2, 2, 2}));
  CHECK(d.to_text().find("characters: chi(0) chi(1)") == 0);
}

TEST_CASE("telescope analysis failure and unknown verdicts") {
  CyclicHomFamily triv(2, FactorSequence::linear(), CyclicHomFamily::Mode::Trivial);
  CrossedProductAnalysis bad = analyze_crossed_product(triv, 6);
  CHECK(bad.verdict == CrossedProductAnalysis::Verdict::NotUHF);
  CHECK(bad.cuts.empty());
  CHECK(bad.reason.find("keeps fixed points") != std::string::npos);

  CyclicHomFamily open(3, FactorSequence::table({3, 5}), CyclicHomFamily::Mode::RegularMultiple);
  CrossedProductAnalysis unk = analyze_crossed_product(open, 8);
  CHECK(unk.verdict == CrossedProductAnalysis::Verdict::Undetermined);
  CHECK(unk.reason.find("no tail certificate") != std::string::npos);
  // The diagram itself was clipped at the table end.
  CHECK(unk.diagram.steps.size() == 2);

  KleinBottleFamily infinite(3);
  CHECK_THROWS_AS(crossed_product_diagram(infinite, 3), InvalidInput);
  CyclicHomFamily fam(2, FactorSequence::linear(), CyclicHomFamily::Mode::RegularMultiple);
  CHECK_THROWS_AS(crossed_product_diagram(fam, 0), InvalidInput);
}
