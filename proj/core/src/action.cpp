#include <qrok/action.hpp>

#include <sstream>

namespace qrok {

Word parse_word(const std::string& text, const std::vector<std::string>& generators) {
  Word w;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    std::string name = tok;
    long long exp = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      try {
        exp = std::stoll(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw InvalidInput("bad exponent in word token \"" + tok + "\"");
      }
    }
    long long idx = -1;
    for (size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == name) {
        idx = static_cast<long long>(i) + 1;
        break;
      }
    if (idx < 0) throw InvalidInput("unknown generator \"" + name + "\" in word \"" + text + "\"");
    int letter = static_cast<int>(exp > 0 ? idx : -idx);
    for (long long k = 0; k < (exp > 0 ? exp : -exp); ++k) w.push_back(letter);
  }
  return w;
}

std::string word_str(const Word& w, const std::vector<std::string>& generators) {
  if (w.empty()) return "1";
  std::ostringstream os;
  size_t i = 0;
  bool first = true;
  while (i < w.size()) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    long long run = static_cast<long long>(j - i);
    long long idx = std::abs(w[i]) - 1;
    if (idx >= static_cast<long long>(generators.size()))
      throw InvalidInput("word references a missing generator");
    if (!first) os << ' ';
    os << generators[idx];
    long long exp = (w[i] > 0) ? run : -run;
    if (exp != 1) os << '^' << exp;
    first = false;
    i = j;
  }
  return os.str();
}

Word word_inverse(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (int& x : r) x = -x;
  return r;
}

Word free_reduce(Word w) {
  Word out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

std::vector<Word> enumerate_words(long long ngens, long long max_len) {
  if (ngens < 1) throw InvalidInput("word enumeration needs at least one generator");
  std::vector<int> alphabet;
  for (long long i = 1; i <= ngens; ++i) {
    alphabet.push_back(static_cast<int>(i));
    alphabet.push_back(static_cast<int>(-i));
  }
  std::vector<Word> out, frontier{{}};
  for (long long len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (int a : alphabet) {
        if (!w.empty() && w.back() == -a) continue;  // keep words freely reduced
        Word e = w;
        e.push_back(a);
        next.push_back(std::move(e));
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

PermutationAction::PermutationAction(GroupPresentation pres, std::vector<Perm> gen_perms,
                                     std::optional<long long> points)
    : pres_(std::move(pres)), gens_(std::move(gen_perms)) {
  if (pres_.generators.size() != gens_.size())
    throw InvalidInput("one permutation per presentation generator required");
  for (size_t i = 1; i < gens_.size(); ++i)
    if (gens_[i].degree() != gens_[0].degree())
      throw StageMismatch("generator permutations act on different point sets");
  if (!gens_.empty()) {
    points_ = gens_[0].degree();
    if (points && *points != points_)
      throw StageMismatch("declared point count disagrees with the generator degree");
  } else if (points) {
    if (*points < 1) throw InvalidInput("point count must be positive");
    points_ = *points;
  } else {
    throw InvalidInput("a generator-free action needs an explicit point count");
  }
}

Perm PermutationAction::evaluate(const Word& w) const {
  Perm r = Perm::identity(points());
  for (int x : w) {
    long long idx = std::abs(x) - 1;
    if (idx >= static_cast<long long>(gens_.size()))
      throw InvalidInput("word references generator " + std::to_string(std::abs(x)) +
                         " outside the presentation");
    r = r * (x > 0 ? gens_[idx] : gens_[idx].inverse());
  }
  return r;
}

Perm PermutationAction::evaluate_coords(const std::vector<BigInt>& h) const {
  if (h.size() != gens_.size())
    throw InvalidInput("coordinate vector length does not match the generator count");
  Perm r = Perm::identity(points());
  for (size_t i = 0; i < h.size(); ++i) r = r * gens_[i].power(h[i]);
  return r;
}

PermutationAction action_from_generators(GroupPresentation pres, std::vector<Perm> gen_perms) {
  PermutationAction act(std::move(pres), std::move(gen_perms));
  for (const Word& rel : act.presentation().relators) {
    if (!act.evaluate(rel).is_identity())
      throw RelationViolation("relator " + word_str(rel, act.presentation().generators) +
                              " is not satisfied by the generator images");
  }
  return act;
}

PermutationAction product_action(const PermutationAction& a, const PermutationAction& b) {
  if (a.presentation().generators != b.presentation().generators)
    throw InvalidInput("product action needs identical presentations");
  std::vector<Perm> gens;
  for (size_t i = 0; i < a.generator_perms().size(); ++i)
    gens.push_back(Perm::product(a.generator_perms()[i], b.generator_perms()[i]));
  return PermutationAction(a.presentation(), std::move(gens));
}

}  // namespace qrok
