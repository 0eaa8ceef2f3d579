#pragma once

#include <qrok/family.hpp>
#include <qrok/opnorm.hpp>
#include <qrok/pattern.hpp>
#include <qrok/stage.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qrok {

// Levels where the permutation unitary of g has trace zero, i.e. where the
// image of g acts without fixed points.
struct VanishingTraceProfile {
  enum class Verdict { ProvenInfinite, UnknownUpTo };
  Verdict verdict = Verdict::UnknownUpTo;
  long long horizon = 0;                    // levels actually inspected
  std::vector<long long> vanishing_levels;  // trace 0 within the horizon
  std::string certificate;  // analytic reason when proven, otherwise a note
};

VanishingTraceProfile vanishing_trace_profile(const EmbeddingPattern& pat,
                                              const GroupElement& g, long long horizon);
VanishingTraceProfile vanishing_trace_profile(const ActionFamily& fam,
                                              const std::vector<BigInt>& h, long long horizon);
VanishingTraceProfile vanishing_trace_profile(const InducedFamily& fam, const Word& g,
                                              long long horizon);

// Uniform-outerness data at one level: k projections cutting p along the
// level-l factor so that each p_j a alpha_g(p_j) is provably small.
struct OuternessWitness {
  long long level = 0;  // tensor factor carrying the cut
  long long k = 0;      // order of the image of g at that factor
  std::vector<StageElement> projections;  // p_0..p_{k-1}, summing to p exactly
  Rational certified;       // the contractual bound 13 epsilon
  Rational staging_defect;  // upper bound on |a - E_L(a)|, 0 when a is staged
  std::vector<Rational> achieved;  // upper bound on |p_j a alpha_g(p_j)| per j
  Rational achieved_max;
  bool exact_zero = false;  // every p_j a alpha_g(p_j) vanished identically
  bool within_contract = false;  // achieved_max <= certified
};

// p must be a nonzero projection at a stage L < level; a lives at any stage
// up to `level` and is expected within epsilon of something staged at L.
// The cut-down along the level factor is exact because p never touches it.
OuternessWitness outerness_witness(const EmbeddingPattern& pat, const GroupElement& g,
                                   const StageElement& a, const StageElement& p,
                                   const Rational& epsilon, long long level,
                                   long long cap = kDefaultStageCap);

// Tower of k diagonal projections cyclically shifted by alpha_g, living on
// the test stage L extended by one factor per prime power of k.
struct RokhlinTower {
  long long k = 1;
  long long prefix_stage = 0;             // stage the test elements live in
  std::vector<long long> levels;          // pattern levels backing the shift factors
  std::vector<long long> dims;            // prefix sizes then the chosen level sizes
  std::vector<StageElement> projections;  // p_0 .. p_{k-1}
  std::string construction;               // how the levels were chosen
};

struct TowerCheck {
  bool pass = false;
  Rational epsilon;
  Rational sum_defect;       // |sum p_i - 1|
  Rational shift_defect;     // max_i |alpha_g(p_i) - p_{i+1 mod k}|
  std::vector<Rational> commutator_defects;  // per test element: max_i |[p_i, a]|
  bool exact = false;        // sum and shift defects are exactly zero
};

// Chooses one fresh level per prime power of ord(g) beyond the stage of the
// test elements, then places projections along orbit positions mod k. The
// output satisfies the sum, orthogonality and shift identities exactly.
RokhlinTower tower_synthesize(const EmbeddingPattern& pat, const GroupElement& g,
                              const std::vector<StageElement>& test_elements,
                              long long horizon, long long cap = kDefaultStageCap);

TowerCheck tower_verify(const RokhlinTower& tower, const EmbeddingPattern& pat,
                        const GroupElement& g, const std::vector<StageElement>& test_elements,
                        const Rational& epsilon);

// Which Rokhlin-type behaviour the pattern certifies for g.
struct RokhlinClassification {
  enum class Kind { FiniteOrderRokhlin, InfiniteOrderUniformlyOuter, Fails, Undetermined };
  Kind kind = Kind::Undetermined;
  long long order = 0;  // ord(g) when finite
  std::string certificate;
  struct PowerEvidence {
    long long j = 0;  // power of g, or the prime-power index in the finite case
    std::string note;
  };
  std::vector<PowerEvidence> evidence;
};

RokhlinClassification rokhlin_classify(const EmbeddingPattern& pat, const GroupElement& g,
                                       long long horizon, long long power_bound = 10);

}  // namespace qrok
