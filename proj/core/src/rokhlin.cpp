#include <qrok/rokhlin.hpp>

#include <algorithm>
#include <numeric>
#include <set>

namespace qrok {

namespace {

GroupElement reduced(const EmbeddingPattern& pat, const GroupElement& g) {
  return reduce(pat.group(), g);
}

// Largest level whose factor and coordinates are both available.
long long scan_top(const EmbeddingPattern& pat, long long horizon) {
  long long top = 0;
  for (long long l = 1; l <= horizon; ++l) {
    if (!pat.supports_level(l) || !pat.coordinate_known(l)) break;
    top = l;
  }
  return top;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

VanishingTraceProfile vanishing_trace_profile(const EmbeddingPattern& pat,
                                              const GroupElement& g, long long horizon) {
  if (horizon < 1) throw InvalidInput("horizon must be positive");
  GroupElement gg = reduced(pat, g);
  if (is_zero(gg))
    throw InvalidInput("the identity fixes everything; its trace never vanishes");
  VanishingTraceProfile out;
  out.horizon = scan_top(pat, horizon);
  // The permutation unitary of g at level l is the n_l-cycle to the power of
  // the image coordinate, so its trace vanishes exactly when that coordinate
  // is a nonzero residue.
  for (long long l = 1; l <= out.horizon; ++l)
    if (pat.coordinate(gg, l) != 0) out.vanishing_levels.push_back(l);
  ElementImageProfile prof = element_profile(pat, gg, horizon);
  if (prof.tail == ElementImageProfile::Tail::NonzeroInfinitely) {
    out.verdict = VanishingTraceProfile::Verdict::ProvenInfinite;
    out.certificate = prof.reason;
  } else {
    out.verdict = VanishingTraceProfile::Verdict::UnknownUpTo;
    out.certificate = prof.reason;
  }
  return out;
}

VanishingTraceProfile vanishing_trace_profile(const ActionFamily& fam,
                                              const std::vector<BigInt>& h, long long horizon) {
  if (horizon < 1) throw InvalidInput("horizon must be positive");
  if (fam.element_is_identity(h))
    throw InvalidInput("the identity fixes everything; its trace never vanishes");
  VanishingTraceProfile out;
  long long top = horizon;
  if (auto lim = fam.levels()) top = std::min(top, *lim);
  for (long long l = 1; l <= top; ++l) {
    long long fix = 0;
    try {
      fix = fam.level_action(l).evaluate_coords(h).fixed_points();
    } catch (const CapExceeded&) {
      break;  // level too large to materialize; the analytic tail still applies
    }
    out.horizon = l;
    if (fix == 0) out.vanishing_levels.push_back(l);
  }
  ActionFamily::Freeness f = fam.freeness_tail(h);
  using K = ActionFamily::Freeness::Kind;
  if (f.kind == K::FreeTail || f.kind == K::FreeRecurring) {
    out.verdict = VanishingTraceProfile::Verdict::ProvenInfinite;
  }
  out.certificate = f.reason;
  return out;
}

VanishingTraceProfile vanishing_trace_profile(const InducedFamily& fam, const Word& g,
                                              long long horizon) {
  if (horizon < 1) throw InvalidInput("horizon must be positive");
  InducedFamily::WordCertificate cert = fam.word_certificate(g);
  if (cert.trivial_in_group)
    throw InvalidInput("the word is trivial in the group; its trace never vanishes");
  VanishingTraceProfile out;
  long long top = horizon;
  if (auto lim = fam.base().levels()) top = std::min(top, *lim);
  for (long long l = 1; l <= top; ++l) {
    try {
      if (fam.fixed_points(g, l) == 0) out.vanishing_levels.push_back(l);
      out.horizon = l;
    } catch (const CapExceeded&) {
      break;
    }
  }
  using K = ActionFamily::Freeness::Kind;
  if (cert.freeness.kind == K::FreeTail || cert.freeness.kind == K::FreeRecurring)
    out.verdict = VanishingTraceProfile::Verdict::ProvenInfinite;
  out.certificate = cert.freeness.reason;
  return out;
}

// ---------------------------------------------------------------------------
// Outerness witness

namespace {

// P x Q for diagonal 0/1 projections P, Q given by their diagonals.
RatMat cut_both_sides(const RatMat& x, const std::vector<Rational>& left,
                      const std::vector<Rational>& right) {
  return x.scale_rows(left).scale_cols(right);
}

std::vector<Rational> diagonal_of(const StageElement& e) { return e.matrix().diagonal_entries(); }

}  // namespace

OuternessWitness outerness_witness(const EmbeddingPattern& pat, const GroupElement& g,
                                   const StageElement& a, const StageElement& p,
                                   const Rational& epsilon, long long level, long long cap) {
  if (epsilon < 0) throw InvalidInput("epsilon must be nonnegative");
  if (!p.is_projection()) throw InvalidInput("p must be an exact projection");
  if (p.matrix().is_zero()) throw InvalidInput("p must be a nonzero projection");
  const long long L = p.stage();
  if (level <= L) throw InvalidInput("the cutting level must lie beyond the projection's stage");
  if (a.stage() > level) throw InvalidInput("the test element lives beyond the cutting level");

  std::vector<long long> dims = pat.dims_prefix(level, cap);
  StageElement big_a = embed_stage(a, dims);
  StageElement big_p = embed_stage(p, dims);
  GroupElement gg = reduced(pat, g);

  const long long n = dims.back();
  const long long c = to_ll(pat.coordinate(gg, level));
  const long long k = n / std::gcd(n, c == 0 ? n : c);
  if (k == 1)
    throw InvalidInput("the image of g has order 1 at level " + std::to_string(level));

  OuternessWitness w;
  w.level = level;
  w.k = k;
  w.certified = Rational(13) * epsilon;

  NormBracket na = op_norm_bracket(big_a);
  if (na.lower > 1) throw InvalidInput("the test element has operator norm above 1");

  // Shifting by c moves each of the k index blocks of the level factor
  // completely off itself; this is the exact mechanism behind the witness.
  const long long block = n / k;
  for (long long i = 0; i < n; ++i)
    if ((i + c) % n / block == i / block)
      throw Inconsistency("block shifted onto itself; the image order computation is wrong");

  StageElement staged = conditional_expectation(big_a, L);
  StageElement big_b = embed_stage(staged, dims);
  StageElement adiff = big_a - big_b;
  w.staging_defect = adiff.matrix().is_zero() ? Rational(0) : op_norm_bracket(adiff).upper;

  std::vector<BigInt> steps;
  for (long long l = 1; l <= level; ++l) steps.push_back(pat.coordinate(gg, l));
  Perm sigma = tensor_translation(dims, steps);

  const long long N = big_a.dim();
  const long long head = N / n;
  std::vector<StageElement> alpha_pj;
  if (big_p.matrix().is_diagonal()) {
    std::vector<Rational> pd = diagonal_of(big_p);
    for (long long j = 0; j < k; ++j) {
      std::vector<long long> sup, asup;
      for (long long r = 0; r < head; ++r)
        for (long long i = j * block; i < (j + 1) * block; ++i) {
          long long idx = r * n + i;
          if (pd[static_cast<size_t>(idx)] == 1) {
            sup.push_back(idx);
            asup.push_back(sigma(idx));
          } else if (pd[static_cast<size_t>(idx)] != 0) {
            throw Inconsistency("diagonal projection with an entry that is neither 0 nor 1");
          }
        }
      std::sort(asup.begin(), asup.end());
      w.projections.push_back(StageElement::diagonal_projection(dims, sup));
      alpha_pj.push_back(StageElement::diagonal_projection(dims, asup));
    }
  } else {
    StageElement u(dims, perm_matrix(sigma));
    for (long long j = 0; j < k; ++j) {
      std::vector<long long> sup;
      for (long long r = 0; r < head; ++r)
        for (long long i = j * block; i < (j + 1) * block; ++i) sup.push_back(r * n + i);
      StageElement qj = StageElement::diagonal_projection(dims, sup);
      StageElement pj = big_p * qj;
      w.projections.push_back(pj);
      alpha_pj.push_back(ad(u, pj));
    }
  }

  StageElement sum = w.projections[0];
  for (long long j = 1; j < k; ++j) sum = sum + w.projections[j];
  if (!(sum == big_p)) throw Inconsistency("cut projections do not sum to p");

  w.exact_zero = true;
  w.achieved_max = 0;
  const bool diag_path = big_p.matrix().is_diagonal();
  for (long long j = 0; j < k; ++j) {
    RatMat mid, full;
    if (diag_path) {
      std::vector<Rational> lft = diagonal_of(w.projections[j]);
      std::vector<Rational> rgt = diagonal_of(alpha_pj[j]);
      mid = cut_both_sides(big_b.matrix(), lft, rgt);
      full = cut_both_sides(big_a.matrix(), lft, rgt);
    } else {
      mid = (w.projections[j] * big_b * alpha_pj[j]).matrix();
      full = (w.projections[j] * big_a * alpha_pj[j]).matrix();
    }
    // p_j b alpha(p_j) = 0 exactly for every b staged below the cutting
    // level; anything else means the construction is broken.
    if (!mid.is_zero())
      throw CertificateFailure("the staged cut-down failed to vanish exactly");
    if (full.is_zero()) {
      w.achieved.emplace_back(0);
    } else {
      w.exact_zero = false;
      NormBracket nb = op_norm_bracket(StageElement(dims, std::move(full)));
      w.achieved.emplace_back(nb.upper);
      w.achieved_max = std::max(w.achieved_max, Rational(nb.upper));
    }
  }
  w.within_contract = w.achieved_max <= w.certified;
  return w;
}

// ---------------------------------------------------------------------------
// Tower synthesis and verification

RokhlinTower tower_synthesize(const EmbeddingPattern& pat, const GroupElement& g,
                              const std::vector<StageElement>& test_elements,
                              long long horizon, long long cap) {
  GroupElement gg = reduced(pat, g);
  std::optional<BigInt> ord = element_order(pat.group(), gg);
  if (!ord) throw InvalidInput("towers need an element of finite order");
  const long long k = to_ll(*ord);

  const long long L = test_elements.empty() ? 0 : test_elements[0].stage();
  std::vector<long long> prefix = pat.dims_prefix(L, cap);
  for (const StageElement& f : test_elements)
    if (f.dims() != prefix)
      throw StageMismatch("test elements must all live at stage " + std::to_string(L));

  RokhlinTower t;
  t.k = k;
  t.prefix_stage = L;
  if (k == 1) {
    t.dims = prefix;
    t.projections = {StageElement::identity(prefix)};
    t.construction = "the element is the identity, so the tower is the unit alone";
    return t;
  }

  // One fresh level per prime power of k, each carrying an image order
  // divisible by that prime power.
  std::vector<std::string> missing, found_notes;
  for (const auto& [P, r] : factorize(BigInt(k))) {
    const BigInt target = int_pow(P, static_cast<unsigned long>(r));
    bool found = false;
    for (long long l = L + 1; l <= horizon; ++l) {
      if (!pat.supports_level(l) || !pat.coordinate_known(l)) break;
      if (std::find(t.levels.begin(), t.levels.end(), l) != t.levels.end()) continue;
      const BigInt n = pat.modulus(l);
      const BigInt c = pat.coordinate(gg, l);
      const BigInt o = n / gcd(n, c == 0 ? n : c);
      if (o % target == 0) {
        t.levels.push_back(l);
        found_notes.push_back("level " + std::to_string(l) + " has image order " + int_str(o) +
                              ", divisible by " + int_str(target));
        found = true;
        break;
      }
    }
    if (!found) missing.push_back(int_str(P) + "^" + std::to_string(r));
  }
  if (!missing.empty())
    throw CertificateFailure("no level up to " + std::to_string(horizon) +
                             " carries an image order divisible by: " + join(missing, ", "));
  std::sort(t.levels.begin(), t.levels.end());

  std::vector<long long> cdims;
  std::vector<BigInt> csteps;
  BigInt total = 1;
  for (long long d : prefix) total *= d;
  for (long long l : t.levels) {
    cdims.push_back(pat.modulus_ll(l));
    csteps.push_back(pat.coordinate(gg, l));
    total *= cdims.back();
  }
  if (total > cap)
    throw CapExceeded("tower stage dimension " + int_str(total) + " exceeds the cap " +
                      std::to_string(cap));
  t.dims = prefix;
  t.dims.insert(t.dims.end(), cdims.begin(), cdims.end());

  // The image of g on the product of the chosen factors: a translation, so
  // every orbit has the same length m, and k | m by the level choices.
  Perm sigma = tensor_translation(cdims, csteps);
  const long long m = to_ll(sigma.order());
  if (m % k != 0) throw Inconsistency("orbit length is not divisible by the element order");

  long long M = 1;
  for (long long d : cdims) M *= d;
  std::vector<long long> cls(static_cast<size_t>(M), -1);
  for (long long x = 0; x < M; ++x) {
    if (cls[static_cast<size_t>(x)] >= 0) continue;
    // x is the minimal point of a fresh orbit; positions count steps from it
    long long y = x, pos = 0;
    do {
      cls[static_cast<size_t>(y)] = pos % k;
      y = sigma(y);
      ++pos;
    } while (y != x);
    if (pos != m) throw Inconsistency("orbit of unexpected length under the translation");
  }

  long long head = 1;
  for (long long d : prefix) head *= d;
  std::vector<std::vector<long long>> supports(static_cast<size_t>(k));
  for (long long r = 0; r < head; ++r)
    for (long long posn = 0; posn < M; ++posn)
      supports[static_cast<size_t>(cls[static_cast<size_t>(posn)])].push_back(r * M + posn);
  for (long long i = 0; i < k; ++i)
    t.projections.push_back(StageElement::diagonal_projection(t.dims, supports[static_cast<size_t>(i)]));

  // The cyclic shift identity, checked exactly on the index sets.
  for (long long i = 0; i < k; ++i) {
    std::vector<long long> image;
    for (long long posn = 0; posn < M; ++posn)
      if (cls[static_cast<size_t>(posn)] == i) image.push_back(sigma(posn));
    std::sort(image.begin(), image.end());
    std::vector<long long> expect;
    for (long long posn = 0; posn < M; ++posn)
      if (cls[static_cast<size_t>(posn)] == (i + 1) % k) expect.push_back(posn);
    if (image != expect) throw Inconsistency("shift identity failed on the orbit positions");
  }

  t.construction = join(found_notes, "; ");
  return t;
}

TowerCheck tower_verify(const RokhlinTower& tower, const EmbeddingPattern& pat,
                        const GroupElement& g, const std::vector<StageElement>& test_elements,
                        const Rational& epsilon) {
  if (epsilon < 0) throw InvalidInput("epsilon must be nonnegative");
  if (tower.projections.empty()) throw InvalidInput("empty tower");
  TowerCheck chk;
  chk.epsilon = epsilon;
  const std::vector<long long>& dims = tower.dims;
  const long long k = static_cast<long long>(tower.projections.size());

  StageElement sum = tower.projections[0];
  for (long long i = 1; i < k; ++i) sum = sum + tower.projections[static_cast<size_t>(i)];
  StageElement sdiff = sum - StageElement::identity(dims);
  chk.sum_defect = sdiff.matrix().is_zero() ? Rational(0) : op_norm_bracket(sdiff).upper;

  // Rebuild the shift. Prefix coordinates that a silent table hides are
  // irrelevant: tower projections are the identity on those factors.
  GroupElement gg = reduced(pat, g);
  std::vector<BigInt> steps;
  for (long long l = 1; l <= tower.prefix_stage; ++l)
    steps.push_back(pat.coordinate_known(l) ? pat.coordinate(gg, l) : BigInt(0));
  for (long long l : tower.levels) steps.push_back(pat.coordinate(gg, l));
  Perm sigma = tensor_translation(dims, steps);
  StageElement u(dims, perm_matrix(sigma));

  chk.shift_defect = 0;
  for (long long i = 0; i < k; ++i) {
    StageElement moved = ad(u, tower.projections[static_cast<size_t>(i)]);
    StageElement diff = moved - tower.projections[static_cast<size_t>((i + 1) % k)];
    if (!diff.matrix().is_zero())
      chk.shift_defect = std::max(chk.shift_defect, Rational(op_norm_bracket(diff).upper));
  }

  for (const StageElement& a : test_elements) {
    StageElement big = embed_stage(a, dims);
    Rational worst = 0;
    for (const StageElement& p : tower.projections) {
      StageElement comm = p * big - big * p;
      if (!comm.matrix().is_zero())
        worst = std::max(worst, Rational(op_norm_bracket(comm).upper));
    }
    chk.commutator_defects.push_back(worst);
  }

  chk.exact = chk.sum_defect == 0 && chk.shift_defect == 0;
  chk.pass = chk.sum_defect <= epsilon && chk.shift_defect <= epsilon;
  for (const Rational& d : chk.commutator_defects) chk.pass = chk.pass && d <= epsilon;
  return chk;
}

// ---------------------------------------------------------------------------
// Classification

RokhlinClassification rokhlin_classify(const EmbeddingPattern& pat, const GroupElement& g,
                                       long long horizon, long long power_bound) {
  if (horizon < 1 || power_bound < 1) throw InvalidInput("horizon and power bound must be positive");
  GroupElement gg = reduced(pat, g);
  if (is_zero(gg)) throw InvalidInput("classification needs a nontrivial element");

  RokhlinClassification out;
  using Kind = RokhlinClassification::Kind;
  using Tail = ElementImageProfile::Tail;
  std::optional<BigInt> ord = element_order(pat.group(), gg);

  if (ord) {
    const long long k = to_ll(*ord);
    out.order = k;
    bool unknown = false;
    for (const auto& [P, r] : factorize(BigInt(k))) {
      const BigInt target = int_pow(P, static_cast<unsigned long>(r));
      // The image order at level l is divisible by P^r exactly when (k/P) g
      // still has a nonzero image there.
      GroupElement h = reduce(pat.group(), scale(pat.group(), BigInt(k) / P, gg));
      ElementImageProfile prof = element_profile(pat, h, horizon);
      if (prof.tail == Tail::EventuallyZero) {
        out.kind = Kind::Fails;
        out.certificate = "beyond level " + std::to_string(prof.tail_from) +
                          " the image of g never has order divisible by " + int_str(target) +
                          ", so no order-" + std::to_string(k) +
                          " tower exists past that stage (" + prof.reason + ")";
        return out;
      }
      if (prof.tail == Tail::Unknown) {
        unknown = true;
        out.evidence.push_back({to_ll(target), "undecided: " + prof.reason});
      } else {
        out.evidence.push_back({to_ll(target),
                                "image order divisible by " + int_str(target) +
                                    " recurs: " + prof.reason});
      }
    }
    if (unknown) {
      out.kind = Kind::Undetermined;
      out.certificate = "some prime-power divisibility is undecided within the table";
    } else {
      out.kind = Kind::FiniteOrderRokhlin;
      out.certificate = "every prime power of " + std::to_string(k) +
                        " divides the image order at levels that recur without end";
    }
    return out;
  }

  bool unknown = false;
  for (long long j = 1; j <= power_bound; ++j) {
    GroupElement h = reduce(pat.group(), scale(pat.group(), BigInt(j), gg));
    ElementImageProfile prof = element_profile(pat, h, horizon);
    if (prof.tail == Tail::EventuallyZero) {
      out.kind = Kind::Fails;
      out.certificate = "the image of the " + std::to_string(j) +
                        "-th power vanishes beyond level " + std::to_string(prof.tail_from) +
                        ", so that power is not uniformly outer (" + prof.reason + ")";
      return out;
    }
    if (prof.tail == Tail::Unknown) {
      unknown = true;
      out.evidence.push_back({j, "undecided: " + prof.reason});
    } else {
      out.evidence.push_back({j, prof.reason});
    }
  }
  if (unknown) {
    out.kind = Kind::Undetermined;
    out.certificate = "some power's image is undecided within the table";
  } else {
    out.kind = Kind::InfiniteOrderUniformlyOuter;
    out.certificate = "every power up to " + std::to_string(power_bound) +
                      " keeps a nonzero image cofinally, certified by the sequence rule";
  }
  return out;
}

}  // namespace qrok
