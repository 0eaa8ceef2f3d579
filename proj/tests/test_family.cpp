#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <qrok/family.hpp>

#include <doctest.h>

#include <set>

using namespace qrok;
using Kind = ActionFamily::Freeness::Kind;

TEST_CASE("cyclic family over the linear sequence acts on free levels cofinally") {
  CyclicHomFamily fam(2, FactorSequence::linear(), CyclicHomFamily::Mode::RegularMultiple);
  CHECK(fam.h_torsion() == std::vector<long long>{2});
  CHECK_FALSE(fam.levels().has_value());
  CHECK(fam.recurring_set_shared());
  CHECK(fam.divisibility_recurs());

  // n_1 = 2 is even: regular translation. n_2 = 3 is odd: the hom collapses.
  CHECK(fam.level_action(1).evaluate(Word{1}) == Perm::translation(2, BigInt(1)));
  CHECK(fam.level_action(2).evaluate(Word{1}).is_identity());
  CHECK(fam.level_action(3).evaluate(Word{1}) == Perm::translation(4, BigInt(2)));

  auto f = fam.freeness_tail({BigInt(1)});
  CHECK(f.kind == Kind::FreeRecurring);
  auto id = fam.freeness_tail({BigInt(2)});
  CHECK(id.kind == Kind::NeverFreeBeyond);
  CHECK(fam.element_is_identity({BigInt(2)}));
  CHECK_FALSE(fam.element_is_identity({BigInt(-1)}));

  CHECK(fam.mixing_recurrence().has_value());
  CHECK_FALSE(fam.never_mixes().has_value());

  SupernaturalNumber s = fam.accumulated_supernatural(4);
  CHECK(s.universal);
  CHECK(s.complete);
}

TEST_CASE("cyclic family divisibility tails per sequence rule") {
  CyclicHomFamily even(2, FactorSequence::constant(4), CyclicHomFamily::Mode::RegularMultiple);
  CHECK(even.freeness_tail({BigInt(1)}).kind == Kind::FreeTail);
  CHECK(even.mixing_recurrence().has_value());

  CyclicHomFamily odd(2, FactorSequence::constant(3), CyclicHomFamily::Mode::RegularMultiple);
  CHECK(odd.freeness_tail({BigInt(1)}).kind == Kind::NeverFreeBeyond);
  CHECK(odd.never_mixes().has_value());
  CHECK_FALSE(odd.divisibility_recurs());

  CyclicHomFamily pp(4, FactorSequence::prime_power(2), CyclicHomFamily::Mode::RegularMultiple);
  auto f = pp.freeness_tail({BigInt(1)});
  CHECK(f.kind == Kind::FreeTail);
  CHECK(f.from == 1);  // 4 divides 2^l from l = 2 on

  CyclicHomFamily fac(6, FactorSequence::factorial(), CyclicHomFamily::Mode::RegularMultiple);
  auto g = fac.freeness_tail({BigInt(1)});
  CHECK(g.kind == Kind::FreeTail);
  CHECK(g.from == 1);  // 3! = 6

  CyclicHomFamily tab(3, FactorSequence::table({3, 5}), CyclicHomFamily::Mode::RegularMultiple);
  auto u = tab.freeness_tail({BigInt(1)});
  CHECK(u.kind == Kind::Unknown);
  CHECK(u.from == 2);
  CHECK_THROWS_AS(tab.level_action(3), InvalidInput);

  CHECK_THROWS_AS(CyclicHomFamily(1, FactorSequence::linear(),
                                  CyclicHomFamily::Mode::RegularMultiple),
                  InvalidInput);
}

TEST_CASE("trivial mode never acts freely") {
  CyclicHomFamily fam(2, FactorSequence::linear(), CyclicHomFamily::Mode::Trivial);
  CHECK(fam.level_action(1).evaluate(Word{1}).is_identity());
  CHECK(fam.level_action(5).evaluate(Word{1}).is_identity());
  CHECK(fam.freeness_tail({BigInt(1)}).kind == Kind::NeverFreeBeyond);
  CHECK(fam.never_mixes().has_value());
  CHECK_FALSE(fam.mixing_recurrence().has_value());
}

TEST_CASE("Klein bottle level family") {
  KleinBottleFamily fam(3);
  CHECK(fam.prime() == 3);
  CHECK(fam.level_action(1).points() == 9);
  CHECK(fam.level_action(2).points() == 81);
  CHECK_FALSE(fam.h_torsion().has_value());

  CHECK(fam.element_is_identity({BigInt(0), BigInt(0)}));
  CHECK(fam.freeness_tail({BigInt(0), BigInt(0)}).kind == Kind::NeverFreeBeyond);

  auto f1 = fam.freeness_tail({BigInt(1), BigInt(0)});
  CHECK(f1.kind == Kind::FreeTail);
  CHECK(f1.from == 0);
  auto f3 = fam.freeness_tail({BigInt(3), BigInt(0)});
  CHECK(f3.kind == Kind::FreeTail);
  CHECK(f3.from == 1);
  // The valuation of the vector is the smaller coordinate valuation.
  auto fmix = fam.freeness_tail({BigInt(9), BigInt(1)});
  CHECK(fmix.from == 0);

  // No level mixes for the full rank-2 group at once.
  CHECK_FALSE(fam.mixing_recurrence().has_value());

  SupernaturalNumber s = fam.accumulated_supernatural(5);
  CHECK(s.complete);
  CHECK(s.divides_infinitely(BigInt(3)));
  CHECK_FALSE(s.divides_infinitely(BigInt(2)));

  CHECK_THROWS_AS(KleinBottleFamily(4), InvalidInput);
  CHECK_THROWS_AS(fam.level_action(0), InvalidInput);
}

TEST_CASE("pattern family translates by pattern coordinates") {
  EmbeddingPattern pat(FgAbelianGroup{0, {2}}, FactorSequence::constant(4),
                       {CoordinateRule::quotient_mod(BigInt(2))});
  PatternFamily fam(pat);
  CHECK(fam.h_torsion() == std::vector<long long>{2});
  CHECK_FALSE(fam.levels().has_value());
  CHECK(fam.level_action(1).evaluate(Word{1}) == Perm::translation(4, BigInt(2)));

  CHECK(fam.freeness_tail({BigInt(1)}).kind == Kind::FreeTail);
  CHECK(fam.freeness_tail({BigInt(2)}).kind == Kind::NeverFreeBeyond);
  CHECK(fam.mixing_recurrence().has_value());

  // A bounded open-ended table caps the usable levels.
  EmbeddingPattern tab(FgAbelianGroup{0, {2}}, FactorSequence::table({2, 4, 4}),
                       {CoordinateRule::custom({BigInt(1), BigInt(2)}, false)});
  PatternFamily bounded(tab);
  CHECK(bounded.levels() == 2);
  CHECK(bounded.freeness_tail({BigInt(1)}).kind == Kind::Unknown);
}

TEST_CASE("resequenced pattern families certify recurring freeness") {
  EmbeddingPattern base(FgAbelianGroup{0, {2}}, FactorSequence::table({2, 2}),
                        {CoordinateRule::quotient_mod(BigInt(1))});
  PatternFamily fam(diagonal_resequence(base));
  CHECK_FALSE(fam.levels().has_value());
  CHECK(fam.freeness_tail({BigInt(1)}).kind == Kind::FreeRecurring);

  SupernaturalNumber s = fam.accumulated_supernatural(4);
  CHECK(s.complete);
  CHECK(s.divides_infinitely(BigInt(2)));
}

TEST_CASE("induced family certificates ride on the conjugate trace set") {
  KleinBottleModel model;
  SubgroupTransversal t =
      make_transversal(model, {Word{}, parse_word("b", model.presentation().generators)});
  KleinBottleFamily base(3);
  InducedFamily fam(model, t, base);

  // The defining relator is trivial in the group.
  auto rel = fam.word_certificate(Word{2, 1, -2, 1});
  CHECK(rel.trivial_in_group);
  CHECK(rel.freeness.kind == Kind::NeverFreeBeyond);

  // b has no conjugate in the subgroup, so it is free at every level.
  auto b = fam.word_certificate(Word{2});
  CHECK_FALSE(b.trivial_in_group);
  CHECK(b.trace_set.empty());
  CHECK(b.freeness.kind == Kind::FreeTail);
  CHECK(fam.fixed_points(Word{2}, 1) == 0);

  // a conjugates to (1, 0) and (-1, 0); both are free from the start.
  auto a = fam.word_certificate(Word{1});
  CHECK(a.trace_set.size() == 2);
  CHECK(a.freeness.kind == Kind::FreeTail);
  CHECK(a.freeness.from == 0);

  // a^3 collapses at level 1 and is free beyond it.
  auto a3 = fam.word_certificate(Word{1, 1, 1});
  CHECK(a3.freeness.kind == Kind::FreeTail);
  CHECK(a3.freeness.from == 1);
  CHECK(fam.fixed_points(Word{1, 1, 1}, 1) == 18);
  CHECK(fam.fixed_points(Word{1, 1, 1}, 2) == 0);

  CyclicHomFamily wrong(2, FactorSequence::linear(), CyclicHomFamily::Mode::RegularMultiple);
  CHECK_THROWS_AS(InducedFamily(model, t, wrong), InvalidInput);
}

TEST_CASE("regrouping interleaves free levels in Cantor block order") {
  KleinBottleModel model;
  SubgroupTransversal t =
      make_transversal(model, {Word{}, parse_word("b", model.presentation().generators)});
  KleinBottleFamily base(3);
  InducedFamily fam(model, t, base);

  RegroupSchedule sched = regroup_free_levels(fam, {Word{1}, Word{2}}, 6, 6);
  CHECK_FALSE(sched.exhausted);
  REQUIRE(sched.entries.size() == 6);
  CHECK(sched.entries[0].word_index == 1);
  CHECK(sched.entries[0].level == 1);
  CHECK(sched.entries[1].word_index == 1);
  CHECK(sched.entries[1].level == 2);
  CHECK(sched.entries[2].word_index == 2);
  CHECK(sched.entries[2].level == 3);
  CHECK(sched.entries[3].word_index == 1);
  CHECK(sched.entries[4].word_index == 2);
  CHECK(sched.entries[5].word_index == 1);
  // No level is consumed twice.
  std::set<long long> seen;
  for (const auto& e : sched.entries) CHECK(seen.insert(e.level).second);

  // a^3 keeps every point at level 1; with horizon 1 there is nothing to take.
  RegroupSchedule dry = regroup_free_levels(fam, {Word{1, 1, 1}}, 1, 1);
  CHECK(dry.exhausted);
  CHECK(dry.note.find("a^3") != std::string::npos);

  CHECK_THROWS_AS(regroup_free_levels(fam, {}, 4, 2), InvalidInput);
}
