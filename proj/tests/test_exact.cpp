#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <qrok/matrix.hpp>
#include <qrok/perm.hpp>
#include <qrok/smith.hpp>

#include <doctest.h>

#include <random>

using namespace qrok;

TEST_CASE("rat canonicalizes and rejects zero denominators") {
  CHECK(rat(2, 4) == rat(1, 2));
  CHECK(rat(-6, -4) == rat(3, 2));
  CHECK(rat(0, 5) == rat(0, 1));
  CHECK_THROWS_AS(rat(1, 0), InvalidInput);
}

TEST_CASE("rat_parse accepts integers and fractions, rejects junk") {
  CHECK(rat_parse("3") == rat(3));
  CHECK(rat_parse("-7/2") == rat(-7, 2));
  CHECK(rat_parse("0") == rat(0));
  CHECK(rat_parse("6/4") == rat(3, 2));
  CHECK_THROWS_AS(rat_parse(""), InvalidInput);
  CHECK_THROWS_AS(rat_parse("1/0"), InvalidInput);
  CHECK_THROWS_AS(rat_parse("abc"), InvalidInput);
  CHECK_THROWS_AS(rat_parse("1.5"), InvalidInput);
  CHECK_THROWS_AS(rat_parse("1/2/3"), InvalidInput);
}

TEST_CASE("rat_str round-trips through rat_parse") {
  for (const Rational& q : {rat(0), rat(5), rat(-3, 7), rat(22, 6)})
    CHECK(rat_parse(rat_str(q)) == q);
}

TEST_CASE("int_pow, valuation, is_prime, factorize on knowns") {
  CHECK(int_pow(BigInt(2), 10) == 1024);
  CHECK(int_pow(BigInt(7), 0) == 1);
  CHECK(valuation(BigInt(48), BigInt(2)) == 4);
  CHECK(valuation(BigInt(48), BigInt(3)) == 1);
  CHECK(valuation(BigInt(-8), BigInt(2)) == 3);
  CHECK(is_prime(BigInt(2)));
  CHECK(is_prime(BigInt(97)));
  CHECK_FALSE(is_prime(BigInt(1)));
  CHECK_FALSE(is_prime(BigInt(91)));  // 7 * 13

  auto f = factorize(BigInt(360));
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<BigInt, long>(BigInt(2), 3));
  CHECK(f[1] == std::pair<BigInt, long>(BigInt(3), 2));
  CHECK(f[2] == std::pair<BigInt, long>(BigInt(5), 1));
}

TEST_CASE("to_ll rejects values outside long long") {
  CHECK(to_ll(BigInt(-5)) == -5);
  BigInt huge = int_pow(BigInt(2), 80);
  CHECK_THROWS_AS(to_ll(huge), InvalidInput);
}

TEST_CASE("RatMat arithmetic and transpose") {
  RatMat a(2, 2), b(2, 2);
  a.at(0, 0) = rat(1, 2);
  a.at(0, 1) = rat(1);
  a.at(1, 0) = rat(0);
  a.at(1, 1) = rat(2);
  b.at(0, 0) = rat(2);
  b.at(0, 1) = rat(0);
  b.at(1, 0) = rat(1);
  b.at(1, 1) = rat(-1);

  RatMat c = a * b;
  CHECK(c.at(0, 0) == rat(2));   // 1/2*2 + 1*1
  CHECK(c.at(0, 1) == rat(-1));  // 1/2*0 + 1*(-1)
  CHECK(c.at(1, 0) == rat(2));
  CHECK(c.at(1, 1) == rat(-2));

  CHECK((a + b) - b == a);
  CHECK(a.transpose().transpose() == a);
  CHECK((a * b).transpose() == b.transpose() * a.transpose());
  CHECK(a.trace() == rat(5, 2));
  CHECK(RatMat::identity(3).is_identity());
  CHECK(RatMat::zero(2, 3).is_zero());
}

TEST_CASE("RatMat diagonal fast paths agree with full products") {
  std::vector<Rational> d = {rat(1, 3), rat(-2), rat(0), rat(5)};
  RatMat diag = RatMat::diagonal(d);
  CHECK(diag.is_diagonal());
  CHECK(diag.diagonal_entries() == d);

  std::mt19937 rng(42);
  std::uniform_int_distribution<int> dist(-5, 5);
  RatMat m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m.at(i, j) = rat(dist(rng), 3);
  CHECK(m.scale_rows(d) == diag * m);
  CHECK(m.scale_cols(d) == m * diag);
}

TEST_CASE("kron has the little-endian layout: left factor varies slowest") {
  RatMat a(2, 2), b(3, 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a.at(i, j) = rat(10 * (i + 1) + (j + 1));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b.at(i, j) = rat(i == j ? i + 1 : 0);
  RatMat k = kron(a, b);
  REQUIRE(k.rows() == 6);
  // (i1,i2),(j1,j2) entry is a[i1][j1] * b[i2][j2] at flat index i1*3+i2.
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 3; ++i2)
      for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 3; ++j2)
          CHECK(k.at(i1 * 3 + i2, j1 * 3 + j2) == a.at(i1, j1) * b.at(i2, j2));
}

TEST_CASE("rational_rank on knowns") {
  RatMat m(3, 3);
  m.at(0, 0) = rat(1);
  m.at(0, 1) = rat(2);
  m.at(0, 2) = rat(3);
  m.at(1, 0) = rat(2);
  m.at(1, 1) = rat(4);
  m.at(1, 2) = rat(6);
  m.at(2, 0) = rat(1);
  m.at(2, 1) = rat(0);
  m.at(2, 2) = rat(1);
  CHECK(rational_rank(m) == 2);
  CHECK(rational_rank(RatMat::identity(4)) == 4);
  CHECK(rational_rank(RatMat::zero(3, 5)) == 0);
}

TEST_CASE("Perm validates, composes left-to-right, inverts") {
  CHECK_THROWS_AS(Perm::from_images({0, 0, 1}), InvalidInput);
  CHECK_THROWS_AS(Perm::from_images({0, 3, 1}), InvalidInput);

  Perm s = Perm::from_images({1, 2, 0});  // 0->1->2->0
  Perm t = Perm::from_images({1, 0, 2});  // swap 0,1
  CHECK((s * t)(0) == s(t(0)));
  CHECK((s * s * s).is_identity());
  CHECK(s.inverse() * s == Perm::identity(3));
  CHECK(s.order() == 3);
  CHECK(s.power(BigInt(-1)) == s.inverse());
  CHECK(s.power(BigInt(302)) == s * s);
}

TEST_CASE("Perm translation and cycle parsing") {
  Perm tr = Perm::translation(5, BigInt(2));
  CHECK(tr(0) == 2);
  CHECK(tr(4) == 1);
  CHECK(Perm::translation(5, BigInt(-1)) == Perm::translation(5, BigInt(4)));
  CHECK(Perm::translation(5, BigInt(7)) == Perm::translation(5, BigInt(2)));

  Perm p = Perm::parse_cycles("(1 2 3)(5 6)", 6);
  CHECK(p(0) == 1);
  CHECK(p(2) == 0);
  CHECK(p(3) == 3);
  CHECK(p(4) == 5);
  CHECK(Perm::parse_cycles("()", 4).is_identity());
  CHECK(Perm::parse_cycles(p.cycle_str(), 6) == p);
}

TEST_CASE("Perm orbits, fixed points, free-orbit detection") {
  Perm p = Perm::parse_cycles("(1 2)(3 4)", 5);
  CHECK(p.fixed_points() == 1);
  CHECK(p.orbits().size() == 3);
  CHECK_FALSE(p.all_orbits_have_length(2));  // the fixed point is an orbit of 1
  Perm q = Perm::parse_cycles("(1 2)(3 4)(5 6)", 6);
  CHECK(q.all_orbits_have_length(2));
}

TEST_CASE("Perm product acts on the mixed-radix flat index") {
  Perm a = Perm::translation(2, BigInt(1));
  Perm b = Perm::translation(3, BigInt(1));
  Perm pr = Perm::product(a, b);
  REQUIRE(pr.degree() == 6);
  for (long long i = 0; i < 2; ++i)
    for (long long j = 0; j < 3; ++j) CHECK(pr(i * 3 + j) == ((i + 1) % 2) * 3 + (j + 1) % 3);
}

TEST_CASE("IntMat determinant on knowns") {
  IntMat m(3, 3);
  long long vals[3][3] = {{2, 0, 1}, {1, 3, 2}, {1, 1, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = vals[i][j];
  CHECK(m.det() == 0);  // rows 0 and 1 sum to 3x row 2
  CHECK(IntMat::identity(4).det() == 1);
  IntMat sw = IntMat::identity(2);
  std::swap(sw.at(0, 0), sw.at(0, 1));
  std::swap(sw.at(1, 0), sw.at(1, 1));
  CHECK(sw.det() == -1);
}
