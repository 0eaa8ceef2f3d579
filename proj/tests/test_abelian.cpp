#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <qrok/abelian.hpp>

#include <doctest.h>

#include <set>

using namespace qrok;

TEST_CASE("group basics: ngens, order, str") {
  FgAbelianGroup g{2, {4, 6}};
  CHECK(g.ngens() == 4);
  CHECK_FALSE(g.is_finite());
  CHECK_THROWS_AS(g.order(), InvalidInput);

  FgAbelianGroup f{0, {4, 6}};
  CHECK(f.order() == 24);
  CHECK(f.is_finite());
  CHECK(FgAbelianGroup{}.is_trivial());
}

TEST_CASE("elements reduce torsion coordinates into range") {
  FgAbelianGroup g{1, {5}};
  GroupElement e = element(g, {BigInt(-3), BigInt(7)});
  CHECK(e.free == std::vector<BigInt>{BigInt(-3)});
  CHECK(e.tors == std::vector<BigInt>{BigInt(2)});
  CHECK_THROWS_AS(element(g, {BigInt(1)}), InvalidInput);  // wrong coordinate count

  GroupElement neg = negate(g, e);
  CHECK(neg.free[0] == 3);
  CHECK(neg.tors[0] == 3);
  CHECK(is_zero(add(g, e, neg)));
  CHECK(scale(g, BigInt(5), element(g, {BigInt(0), BigInt(1)})).tors[0] == 0);
}

TEST_CASE("element order divides the group exponent") {
  FgAbelianGroup g{0, {4, 6}};
  CHECK(element_order(g, element(g, {BigInt(2), BigInt(0)})) == BigInt(2));
  CHECK(element_order(g, element(g, {BigInt(1), BigInt(1)})) == BigInt(12));
  CHECK(element_order(g, zero_element(g)) == BigInt(1));

  FgAbelianGroup z{1, {}};
  CHECK_FALSE(element_order(z, element(z, {BigInt(3)})).has_value());
  CHECK(element_order(z, zero_element(z)) == BigInt(1));
}

TEST_CASE("canonical decomposition puts quotients in invariant factor form") {
  // Z^2 / <(2,0),(0,3)> = Z/2 + Z/3 = Z/6.
  IntMat rel(2, 2);
  rel.at(0, 0) = 2;
  rel.at(1, 1) = 3;
  FgAbelianGroup q = canonical_decomposition(rel, 2);
  CHECK(q.rank == 0);
  CHECK(q.torsion == std::vector<long long>{6});

  // Z^3 / <(2,0,0)> = Z/2 + Z^2.
  IntMat rel2(1, 3);
  rel2.at(0, 0) = 2;
  FgAbelianGroup q2 = canonical_decomposition(rel2, 3);
  CHECK(q2.rank == 2);
  CHECK(q2.torsion == std::vector<long long>{2});

  // Unimodular relations kill nothing visible: Z^2 / <(1,1)> = Z.
  IntMat rel3(1, 2);
  rel3.at(0, 0) = 1;
  rel3.at(0, 1) = 1;
  FgAbelianGroup q3 = canonical_decomposition(rel3, 2);
  CHECK(q3.rank == 1);
  CHECK(q3.torsion.empty());
}

TEST_CASE("enumerate_all walks the whole finite group, rightmost fastest") {
  FgAbelianGroup g{0, {2, 3}};
  auto all = enumerate_all(g);
  REQUIRE(all.size() == 6);
  CHECK(all[0].tors == std::vector<BigInt>{BigInt(0), BigInt(0)});
  CHECK(all[1].tors == std::vector<BigInt>{BigInt(0), BigInt(1)});
  CHECK(all[3].tors == std::vector<BigInt>{BigInt(1), BigInt(0)});
  std::set<std::vector<BigInt>> seen;
  for (const auto& e : all) seen.insert(e.tors);
  CHECK(seen.size() == 6);
}

TEST_CASE("enumerate_box is deterministic, nonzero, and smallest-first") {
  FgAbelianGroup g{1, {4}};
  auto box = enumerate_box(g, 2);
  REQUIRE(!box.empty());
  for (const auto& e : box) {
    CHECK_FALSE(is_zero(e));
    CHECK(e.free[0] >= -2);
    CHECK(e.free[0] <= 2);
    CHECK(e.tors[0] >= 0);
    CHECK(e.tors[0] <= 2);
  }
  // (2 box + 1) * (box + 1) combinations minus the zero element.
  CHECK(box.size() == 5 * 3 - 1);
  CHECK(box == enumerate_box(g, 2));

  // The first entries prefer small coordinates.
  CHECK(box[0].free[0] == 0);
  CHECK(box[0].tors[0] == 1);
}

TEST_CASE("element_str shows coordinates") {
  FgAbelianGroup g{1, {5}};
  std::string s = element_str(element(g, {BigInt(-2), BigInt(3)}));
  CHECK(s.find("-2") != std::string::npos);
  CHECK(s.find("3") != std::string::npos);
}
