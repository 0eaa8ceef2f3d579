#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <qrok/opnorm.hpp>

#include <doctest.h>

#include <random>

using namespace qrok;

namespace {

RatMat from_rows(const std::vector<std::vector<Rational>>& rows) {
  RatMat m(static_cast<long long>(rows.size()), static_cast<long long>(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

}  // namespace

TEST_CASE("norm bracket of the zero and identity matrices") {
  NormBracket z = op_norm_bracket(RatMat::zero(3, 3));
  CHECK(z.upper == 0.0);
  CHECK(z.lower == 0.0);

  NormBracket one = op_norm_bracket(RatMat::identity(4));
  CHECK(one.lower <= 1.0);
  CHECK(one.upper >= 1.0);
  CHECK(one.converged);
  CHECK(one.width() <= 1e-9);
}

TEST_CASE("norm bracket of a diagonal matrix straddles the largest entry") {
  RatMat d = RatMat::diagonal({rat(1, 2), rat(-3), rat(2)});
  NormBracket nb = op_norm_bracket(d);
  CHECK(nb.lower <= 3.0);
  CHECK(nb.upper >= 3.0);
  CHECK(nb.width() <= 1e-9 * 3);
}

TEST_CASE("norm bracket handles non-normal matrices") {
  // [[0, 2], [0, 0]] has spectral radius 0 but operator norm 2.
  RatMat n = from_rows({{rat(0), rat(2)}, {rat(0), rat(0)}});
  NormBracket nb = op_norm_bracket(n);
  CHECK(nb.lower <= 2.0);
  CHECK(nb.upper >= 2.0);
  CHECK(nb.upper <= 2.0 + 1e-8);
}

TEST_CASE("norm bracket of a symmetric matrix with known spectrum") {
  // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
  RatMat s = from_rows({{rat(2), rat(1)}, {rat(1), rat(2)}});
  NormBracket nb = op_norm_bracket(s);
  CHECK(nb.lower <= 3.0);
  CHECK(nb.upper >= 3.0);
  CHECK(nb.width() <= 1e-8);
}

TEST_CASE("scaling moves the bracket linearly") {
  RatMat s = from_rows({{rat(0), rat(1)}, {rat(1), rat(0)}});
  NormBracket one = op_norm_bracket(s);
  NormBracket three = op_norm_bracket(s * rat(3));
  CHECK(one.upper >= 1.0);
  CHECK(one.upper <= 1.0 + 1e-8);
  CHECK(three.upper >= 3.0);
  CHECK(three.upper <= 3.0 + 1e-8);
}

TEST_CASE("brackets are sound and tight on random matrices") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> num(-8, 8);
  std::uniform_int_distribution<int> den(1, 6);
  for (int trial = 0; trial < 25; ++trial) {
    long long n = 2 + trial % 5;
    RatMat m(n, n);
    for (long long i = 0; i < n; ++i)
      for (long long j = 0; j < n; ++j) m.at(i, j) = rat(num(rng), den(rng));
    NormBracket nb = op_norm_bracket(m);
    CHECK(nb.lower <= nb.upper);
    CHECK(nb.lower >= 0.0);
    if (nb.converged) CHECK(nb.width() <= 1e-9 * std::max(1.0, nb.upper));

    // Sound above any Rayleigh quotient: |M e_j| <= |M|.
    for (long long j = 0; j < n; ++j) {
      Rational col = 0;
      for (long long i = 0; i < n; ++i) col += m.at(i, j) * m.at(i, j);
      CHECK(rat_to_double(col) <= nb.upper * nb.upper * (1 + 1e-12) + 1e-300);
    }

    // Submultiplicative against itself.
    NormBracket sq = op_norm_bracket(m * m);
    CHECK(sq.lower <= nb.upper * nb.upper * (1 + 1e-9));
  }
}

TEST_CASE("unitary permutation elements get an exact bracket") {
  StageElement u = StageElement::identity({2, 3});
  NormBracket nb = op_norm_bracket(u);
  CHECK(nb.exact);
  CHECK(nb.lower == 1.0);
  CHECK(nb.upper == 1.0);
}

TEST_CASE("stage element bracket matches the raw matrix bracket") {
  RatMat m = from_rows({{rat(1), rat(1, 3)}, {rat(0), rat(-2)}});
  StageElement x({2}, m);
  NormBracket a = op_norm_bracket(x);
  NormBracket b = op_norm_bracket(m);
  CHECK(a.lower == b.lower);
  CHECK(a.upper == b.upper);
}
