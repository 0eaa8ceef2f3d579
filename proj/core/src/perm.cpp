#include <qrok/perm.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qrok {

Perm Perm::identity(long long n) {
  Perm p;
  p.img_.resize(n);
  std::iota(p.img_.begin(), p.img_.end(), 0);
  return p;
}

Perm Perm::from_images(std::vector<long long> images) {
  const long long n = static_cast<long long>(images.size());
  std::vector<char> seen(n, 0);
  for (long long v : images) {
    if (v < 0 || v >= n || seen[v]) throw InvalidInput("permutation images are not a bijection");
    seen[v] = 1;
  }
  Perm p;
  p.img_ = std::move(images);
  return p;
}

Perm Perm::translation(long long n, const BigInt& step) {
  if (n <= 0) throw InvalidInput("translation on empty set");
  BigInt s = step % BigInt(n);
  if (s < 0) s += BigInt(n);
  long long off = s.get_si();
  Perm p;
  p.img_.resize(n);
  for (long long i = 0; i < n; ++i) p.img_[i] = (i + off) % n;
  return p;
}

Perm Perm::parse_cycles(const std::string& text, long long n) {
  Perm p = identity(n);
  std::vector<char> used(n, 0);
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '\t')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw InvalidInput("expected '(' in cycle notation: " + text);
    ++i;
    std::vector<long long> cyc;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      size_t j = i;
      while (j < text.size() && isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw InvalidInput("expected digit in cycle notation: " + text);
      long long v = std::stoll(text.substr(i, j - i)) - 1;  // external format is 1-based
      if (v < 0 || v >= n) throw InvalidInput("cycle entry out of range in: " + text);
      if (used[v]) throw InvalidInput("repeated point in cycle notation: " + text);
      used[v] = 1;
      cyc.push_back(v);
      i = j;
      skip_ws();
    }
    if (i == text.size()) throw InvalidInput("unterminated cycle in: " + text);
    ++i;  // ')'
    for (size_t k = 0; k + 1 < cyc.size(); ++k) p.img_[cyc[k]] = cyc[k + 1];
    if (cyc.size() > 1) p.img_[cyc.back()] = cyc.front();
    skip_ws();
  }
  return p;
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw StageMismatch("composing permutations of different degree");
  Perm r;
  r.img_.resize(a.degree());
  for (long long i = 0; i < a.degree(); ++i) r.img_[i] = a.img_[b.img_[i]];
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.img_.resize(img_.size());
  for (size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<long long>(i);
  return r;
}

Perm Perm::power(const BigInt& k) const {
  BigInt e = k;
  Perm base = *this;
  if (e < 0) {
    base = inverse();
    e = -e;
  }
  Perm acc = identity(degree());
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool Perm::is_identity() const {
  for (size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != static_cast<long long>(i)) return false;
  return true;
}

long long Perm::fixed_points() const {
  long long c = 0;
  for (size_t i = 0; i < img_.size(); ++i)
    if (img_[i] == static_cast<long long>(i)) ++c;
  return c;
}

std::vector<std::vector<long long>> Perm::orbits() const {
  std::vector<std::vector<long long>> out;
  std::vector<char> seen(img_.size(), 0);
  for (size_t s = 0; s < img_.size(); ++s) {
    if (seen[s]) continue;
    std::vector<long long> orb;
    long long x = static_cast<long long>(s);
    do {
      seen[x] = 1;
      orb.push_back(x);
      x = img_[x];
    } while (x != static_cast<long long>(s));
    out.push_back(std::move(orb));
  }
  return out;
}

BigInt Perm::order() const {
  BigInt ord = 1;
  for (const auto& orb : orbits()) {
    BigInt len(static_cast<long>(orb.size()));
    mpz_lcm(ord.get_mpz_t(), ord.get_mpz_t(), len.get_mpz_t());
  }
  return ord;
}

bool Perm::all_orbits_have_length(long long len) const {
  for (const auto& orb : orbits())
    if (static_cast<long long>(orb.size()) != len) return false;
  return true;
}

std::string Perm::cycle_str() const {
  std::ostringstream os;
  bool any = false;
  for (const auto& orb : orbits()) {
    if (orb.size() < 2) continue;
    any = true;
    os << '(';
    for (size_t k = 0; k < orb.size(); ++k) {
      if (k) os << ' ';
      os << orb[k] + 1;
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

Perm Perm::product(const Perm& a, const Perm& b) {
  const long long m = a.degree(), n = b.degree();
  Perm r;
  r.img_.resize(m * n);
  for (long long i = 0; i < m; ++i)
    for (long long j = 0; j < n; ++j) r.img_[i * n + j] = a.img_[i] * n + b.img_[j];
  return r;
}

}  // namespace qrok
