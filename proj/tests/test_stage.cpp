#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <qrok/stage.hpp>

#include <doctest.h>

#include <random>

using namespace qrok;

namespace {

RatMat random_mat(long long n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 5);
  RatMat m(n, n);
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j) m.at(i, j) = rat(num(rng), den(rng));
  return m;
}

}  // namespace

TEST_CASE("stage elements know their stage and dimension") {
  StageElement x = StageElement::identity({2, 3});
  CHECK(x.stage() == 2);
  CHECK(x.dim() == 6);
  CHECK(x.is_projection());
  CHECK(x.is_unitary());

  StageElement s = StageElement::scalar(rat(5));
  CHECK(s.stage() == 0);
  CHECK(s.dim() == 1);

  CHECK_THROWS_AS(StageElement({2, 3}, RatMat::identity(5)), StageMismatch);
}

TEST_CASE("diagonal projections have the declared support") {
  StageElement p = StageElement::diagonal_projection({2, 2}, {0, 3});
  CHECK(p.is_projection());
  CHECK(p.matrix().at(0, 0) == rat(1));
  CHECK(p.matrix().at(1, 1) == rat(0));
  CHECK(p.matrix().at(3, 3) == rat(1));
  CHECK(normalized_trace(p) == rat(1, 2));
  CHECK_THROWS_AS(StageElement::diagonal_projection({2, 2}, {4}), InvalidInput);
}

TEST_CASE("arithmetic requires matching stages") {
  StageElement a = StageElement::identity({2});
  StageElement b = StageElement::identity({2, 2});
  CHECK_THROWS_AS(a + b, StageMismatch);
  CHECK_THROWS_AS(a * b, StageMismatch);
}

TEST_CASE("embedding is a unital trace-preserving homomorphism") {
  FactorSequence lin = FactorSequence::linear();
  StageElement x({2}, random_mat(2, 1));
  StageElement y({2}, random_mat(2, 2));

  StageElement ex = embed_stage(x, lin, 3);
  StageElement ey = embed_stage(y, lin, 3);
  CHECK(ex.stage() == 3);
  CHECK(ex.dim() == 24);
  CHECK(embed_stage(x * y, lin, 3) == ex * ey);
  CHECK(embed_stage(x + y, lin, 3) == ex + ey);
  CHECK(embed_stage(StageElement::identity({2}), lin, 3) == StageElement::identity({2, 3, 4}));
  CHECK(normalized_trace(ex) == normalized_trace(x));
  CHECK(embed_stage(x, lin, 1) == x);  // embedding into its own stage
}

TEST_CASE("embed_stage validates the prefix") {
  StageElement x = StageElement::identity({2, 3});
  CHECK_THROWS_AS(embed_stage(x, {3, 2, 4}), StageMismatch);
  CHECK(embed_stage(x, {2, 3, 4}).dim() == 24);
}

TEST_CASE("conditional expectation projects onto the stage prefix exactly") {
  FactorSequence lin = FactorSequence::linear();
  StageElement y({2}, random_mat(2, 5));
  StageElement ey = embed_stage(y, lin, 3);

  // E recovers an embedded element on the nose.
  StageElement back = conditional_expectation(ey, 1);
  CHECK(back.stage() == 1);
  CHECK(back == y);

  // E is trace preserving and idempotent in the module sense.
  StageElement z({2, 3, 4}, random_mat(24, 8));
  StageElement ez = conditional_expectation(z, 1);
  CHECK(normalized_trace(ez) == normalized_trace(z));
  CHECK(conditional_expectation(embed_stage(ez, lin, 3), 1) == ez);

  // Module property: E(embedded * z * embedded') = y * E(z) * y' on traces.
  StageElement lhs = conditional_expectation(ey * z, 1);
  CHECK(lhs == y * ez);
}

TEST_CASE("perm matrix convention: P e_j = e_{sigma(j)}") {
  Perm s = Perm::from_images({1, 2, 0});
  RatMat p = perm_matrix(s);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) CHECK(p.at(i, j) == (i == s(j) ? rat(1) : rat(0)));
}

TEST_CASE("perm unitaries act on one tensor factor") {
  FactorSequence lin = FactorSequence::linear();
  Perm swap2 = Perm::from_images({1, 0});
  StageElement u = perm_unitary(lin, swap2, 1, 2);
  CHECK(u.is_unitary());
  REQUIRE(u.dim() == 6);

  // Conjugation moves diagonal units: e_(i,j) -> e_(sigma(i),j).
  StageElement d = StageElement::diagonal_projection({2, 3}, {0});  // (0,0)
  StageElement moved = ad(u, d);
  CHECK(moved == StageElement::diagonal_projection({2, 3}, {3}));  // (1,0)

  StageElement u2 = perm_unitary(lin, Perm::translation(3, BigInt(1)), 2, 2);
  StageElement d2 = ad(u2, d);
  CHECK(d2 == StageElement::diagonal_projection({2, 3}, {1}));  // (0,1)

  CHECK_THROWS_AS(perm_unitary(lin, swap2, 2, 2), StageMismatch);  // degree 2 vs n_2 = 3
}

TEST_CASE("tensor translation is the product of cyclic shifts") {
  Perm t = tensor_translation({2, 3}, {BigInt(1), BigInt(2)});
  for (long long i = 0; i < 2; ++i)
    for (long long j = 0; j < 3; ++j) CHECK(t(i * 3 + j) == ((i + 1) % 2) * 3 + (j + 2) % 3);
  CHECK(tensor_translation({2, 3}, {BigInt(0), BigInt(0)}).is_identity());
  CHECK_THROWS_AS(tensor_translation({2, 3}, {BigInt(1)}), InvalidInput);
}

TEST_CASE("normalized trace of a permutation unitary is its fixed point fraction") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<long long> img(6);
    std::iota(img.begin(), img.end(), 0);
    std::shuffle(img.begin(), img.end(), rng);
    Perm s = Perm::from_images(img);
    StageElement u({6}, perm_matrix(s));
    CHECK(normalized_trace(u) == rat(s.fixed_points(), 6));
  }
}

TEST_CASE("ad validates unitarity") {
  StageElement not_u({2}, random_mat(2, 33));
  StageElement x = StageElement::identity({2});
  CHECK_THROWS_AS(ad(not_u, x), InvalidInput);
}

TEST_CASE("stage_dims enforces the cap") {
  CHECK(stage_dims(FactorSequence::linear(), 3) == std::vector<long long>{2, 3, 4});
  CHECK_THROWS_AS(stage_dims(FactorSequence::factorial(), 6, 4096), CapExceeded);
  CHECK(stage_dims(FactorSequence::linear(), 0).empty());
}
