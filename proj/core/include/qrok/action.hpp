#pragma once

#include <qrok/perm.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qrok {

// Word in group generators: nonzero signed 1-based indices, evaluated left to
// right (so {1, -2} means g1 * g2^{-1}).
using Word = std::vector<int>;

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
};

struct RelationViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Token format: whitespace-separated "a", "a^3", "b^-2".
Word parse_word(const std::string& text, const std::vector<std::string>& generators);
std::string word_str(const Word& w, const std::vector<std::string>& generators);
Word word_inverse(const Word& w);
// Cancel adjacent x x^{-1} pairs.
Word free_reduce(Word w);

// All freely reduced words of length 1..max_len, ordered by length and then
// lexicographically in the alphabet g1, g1^{-1}, g2, g2^{-1}, ...
std::vector<Word> enumerate_words(long long ngens, long long max_len);

// A group acting on {0..n-1} through images of the presentation generators.
// The explicit point count exists for presentations with no generators (the
// trivial group still acts).
class PermutationAction {
 public:
  PermutationAction(GroupPresentation pres, std::vector<Perm> gen_perms,
                    std::optional<long long> points = std::nullopt);

  const GroupPresentation& presentation() const { return pres_; }
  const std::vector<Perm>& generator_perms() const { return gens_; }
  long long points() const { return points_; }

  Perm evaluate(const Word& w) const;
  long long fixed_points(const Word& w) const { return evaluate(w).fixed_points(); }
  // Permutation of an abelian-style coordinate vector: prod gens[i]^{h[i]}.
  Perm evaluate_coords(const std::vector<BigInt>& h) const;

 private:
  GroupPresentation pres_;
  std::vector<Perm> gens_;
  long long points_ = 0;
};

// Validates every relator against the images; a violated relator is named in
// the exception text.
PermutationAction action_from_generators(GroupPresentation pres, std::vector<Perm> gen_perms);

// Diagonal action on the product of the point sets; presentations must agree.
PermutationAction product_action(const PermutationAction& a, const PermutationAction& b);

}  // namespace qrok
