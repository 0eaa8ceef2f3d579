#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <qrok/pattern.hpp>

#include <doctest.h>

using namespace qrok;

namespace {

EmbeddingPattern factorial_z() {
  return EmbeddingPattern(FgAbelianGroup{1, {}}, FactorSequence::factorial(),
                          {CoordinateRule::factorial_mod()});
}

}  // namespace

TEST_CASE("pattern construction checks rule count") {
  CHECK_THROWS_AS(EmbeddingPattern(FgAbelianGroup{2, {}}, FactorSequence::linear(),
                                   {CoordinateRule::quotient_mod()}),
                  InvalidInput);
}

TEST_CASE("validation rejects ill-defined torsion images and names the spot") {
  // Z/4 -> Z/6 by 1 is not a homomorphism: 4 * 1 != 0 mod 6.
  EmbeddingPattern bad(FgAbelianGroup{0, {4}}, FactorSequence::constant(6),
                       {CoordinateRule::quotient_mod()});
  CHECK_THROWS_WITH_AS(bad.validate(4), doctest::Contains("not well defined"), InvalidInput);

  // Z/4 -> Z/8 by 2 is fine: 4 * 2 = 8 = 0 mod 8.
  EmbeddingPattern good(FgAbelianGroup{0, {4}}, FactorSequence::constant(8),
                        {CoordinateRule::quotient_mod(BigInt(2))});
  CHECK_NOTHROW(good.validate(4));
}

TEST_CASE("factorial images are the multiples of the generator") {
  EmbeddingPattern pat = factorial_z();
  pat.validate(6);
  GroupElement g = element(pat.group(), {BigInt(5)});
  CHECK(pat.coordinate(g, 1) == 5 % 2);
  CHECK(pat.coordinate(g, 2) == 5 % 6);
  CHECK(pat.coordinate(g, 3) == 5);  // 5 < 24
  CHECK(pat.modulus(3) == 24);
}

TEST_CASE("p-adic rule realizes the inverse at every level") {
  // 1/3 in Z_2: at level l the image y satisfies 3 y = 1 mod 2^l.
  EmbeddingPattern pat(FgAbelianGroup{1, {}}, FactorSequence::prime_power(2),
                       {CoordinateRule::padic(2, rat(1, 3))});
  pat.validate(8);
  GroupElement g = element(pat.group(), {BigInt(1)});
  for (long long l = 1; l <= 8; ++l) {
    BigInt y = pat.coordinate(g, l);
    BigInt mod = pat.modulus(l);
    CHECK((3 * y - 1) % mod == 0);
  }
}

TEST_CASE("p-adic rule rejects denominators divisible by p") {
  EmbeddingPattern pat(FgAbelianGroup{1, {}}, FactorSequence::prime_power(2),
                       {CoordinateRule::padic(2, rat(1, 2))});
  CHECK_THROWS_AS(pat.validate(4), InvalidInput);
}

TEST_CASE("table rules serve their window and then throw or vanish") {
  CoordinateRule open = CoordinateRule::custom({BigInt(1), BigInt(2)}, false);
  EmbeddingPattern pat(FgAbelianGroup{1, {}}, FactorSequence::linear(), {open});
  pat.validate(8);
  GroupElement g = element(pat.group(), {BigInt(1)});
  CHECK(pat.coordinate(g, 2) == 2);
  CHECK(pat.coordinate_known(2));
  CHECK_FALSE(pat.coordinate_known(3));
  CHECK_THROWS_AS(pat.coordinate(g, 3), InvalidInput);
  CHECK(pat.known_horizon(8) == 2);

  CoordinateRule closed = CoordinateRule::custom({BigInt(1), BigInt(2)}, true);
  EmbeddingPattern pat2(FgAbelianGroup{1, {}}, FactorSequence::linear(), {closed});
  CHECK(pat2.coordinate(g, 5) == 0);
  CHECK(pat2.known_horizon(8) == 8);
}

TEST_CASE("resequencing revisits base levels in Cantor block order") {
  // Unbounded base: 1; 1,2; 1,2,3; ...
  CHECK(resequence_source(1, 0) == 1);
  CHECK(resequence_source(2, 0) == 1);
  CHECK(resequence_source(3, 0) == 2);
  CHECK(resequence_source(4, 0) == 1);
  CHECK(resequence_source(6, 0) == 3);
  CHECK(resequence_source(7, 0) == 1);

  // Bounded base of 2 levels: blocks cap at 1; 1,2; 1,2; ...
  CHECK(resequence_source(1, 2) == 1);
  CHECK(resequence_source(2, 2) == 1);
  CHECK(resequence_source(3, 2) == 2);
  CHECK(resequence_source(4, 2) == 1);
  CHECK(resequence_source(5, 2) == 2);

  EmbeddingPattern base(FgAbelianGroup{0, {6}}, FactorSequence::table({2, 3}),
                        {CoordinateRule::quotient_mod()});
  EmbeddingPattern res = diagonal_resequence(base);
  CHECK(res.resequenced());
  CHECK(res.supports_level(1000));
  CHECK(res.modulus(3) == 3);
  CHECK(res.modulus(4) == 2);
  CHECK_THROWS_AS(diagonal_resequence(res), InvalidInput);
}

TEST_CASE("element profiles classify tails by rule") {
  EmbeddingPattern pat = factorial_z();
  GroupElement g = element(pat.group(), {BigInt(7)});
  ElementImageProfile prof = element_profile(pat, g, 10);
  CHECK(prof.tail == ElementImageProfile::Tail::NonzeroInfinitely);
  CHECK_FALSE(prof.nonzero_levels.empty());

  ElementImageProfile zero = element_profile(pat, zero_element(pat.group()), 10);
  CHECK(zero.identically_zero());

  // Constant modulus kills any multiple of it.
  EmbeddingPattern cst(FgAbelianGroup{0, {256}}, FactorSequence::constant(128),
                       {CoordinateRule::quotient_mod()});
  ElementImageProfile dead = element_profile(cst, element(cst.group(), {BigInt(128)}), 10);
  CHECK(dead.tail == ElementImageProfile::Tail::EventuallyZero);
  CHECK(dead.identically_zero());

  // Open-ended table: unknown beyond its window.
  EmbeddingPattern tab(FgAbelianGroup{1, {}}, FactorSequence::linear(),
                       {CoordinateRule::custom({BigInt(1)}, false)});
  ElementImageProfile unk = element_profile(tab, element(tab.group(), {BigInt(1)}), 10);
  CHECK(unk.tail == ElementImageProfile::Tail::Unknown);
}

TEST_CASE("trivial intersection trichotomy") {
  // Factorial on Z: proven trivial.
  TrivialIntersectionVerdict t1 = trivial_intersection(factorial_z(), 12, 10);
  CHECK(t1.kind == TrivialIntersectionVerdict::Kind::ProvenTrivial);

  // Torsion generator supported on one level and zero beyond: counterexample.
  EmbeddingPattern single(FgAbelianGroup{0, {4}}, FactorSequence::constant(4),
                          {CoordinateRule::custom({BigInt(1)}, true)});
  TrivialIntersectionVerdict t2 = trivial_intersection(single, 12, 3);
  CHECK(t2.kind == TrivialIntersectionVerdict::Kind::Counterexample);
  REQUIRE(t2.witness.has_value());
  CHECK(t2.vanish_from == 1);

  // Open-ended table: unknown at the horizon.
  EmbeddingPattern open(FgAbelianGroup{1, {}}, FactorSequence::linear(),
                        {CoordinateRule::custom({BigInt(1), BigInt(1)}, false)});
  TrivialIntersectionVerdict t3 = trivial_intersection(open, 12, 3);
  CHECK(t3.kind == TrivialIntersectionVerdict::Kind::UnknownUpTo);

  // The prufer stand-in: 128 in Z/256 against constant 128 dies everywhere.
  EmbeddingPattern prufer(FgAbelianGroup{0, {256}}, FactorSequence::constant(128),
                          {CoordinateRule::quotient_mod()});
  TrivialIntersectionVerdict t4 = trivial_intersection(prufer, 12, 256);
  CHECK(t4.kind == TrivialIntersectionVerdict::Kind::Counterexample);
  REQUIRE(t4.witness.has_value());
  CHECK(t4.witness->tors[0] == 128);
}

TEST_CASE("injectivity of the factorial embedding on a box") {
  InjectivityVerdict v = injectivity(factorial_z(), 12, 10);
  CHECK(v.kind == InjectivityVerdict::Kind::Injective);

  EmbeddingPattern cst(FgAbelianGroup{0, {256}}, FactorSequence::constant(128),
                       {CoordinateRule::quotient_mod()});
  InjectivityVerdict nv = injectivity(cst, 12, 256);
  CHECK(nv.kind == InjectivityVerdict::Kind::NotInjective);
  REQUIRE(nv.witness.has_value());
}

TEST_CASE("divisible obstruction: bounded valuation forces vanishing forever") {
  DivisibleObstruction ob = divisible_obstruction(2, 8, FactorSequence::constant(128), 12);
  CHECK(ob.forced_forever);
  CHECK(ob.all_levels_forced);
  CHECK(ob.forced_zero_levels.size() == 12);

  // Factorial valuations grow without bound, so only early levels force.
  DivisibleObstruction fac = divisible_obstruction(2, 4, FactorSequence::factorial(), 12);
  CHECK_FALSE(fac.forced_forever);
  CHECK_FALSE(fac.all_levels_forced);
  CHECK_FALSE(fac.forced_zero_levels.empty());
  // v_2((l+1)!) >= 4 from l = 5 on (6! = 720 has v_2 = 4).
  for (long long l : fac.forced_zero_levels) CHECK(l < 5);

  CHECK_THROWS_AS(divisible_obstruction(6, 4, FactorSequence::constant(8), 4), InvalidInput);
}

TEST_CASE("dims_prefix respects the cap") {
  EmbeddingPattern pat = factorial_z();
  CHECK(pat.dims_prefix(2) == std::vector<long long>{2, 6});
  CHECK_THROWS_AS(pat.dims_prefix(8, 4096), CapExceeded);
}
