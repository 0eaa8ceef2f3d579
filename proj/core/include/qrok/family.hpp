#pragma once

#include <qrok/action.hpp>
#include <qrok/induce.hpp>
#include <qrok/pattern.hpp>
#include <qrok/supernatural.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qrok {

// One H-action per level of a tower of point sets, together with analytic
// certificates about where elements act freely.
class ActionFamily {
 public:
  struct Freeness {
    enum class Kind {
      FreeTail,       // fixed-point free at every level > from
      FreeRecurring,  // fixed-point free on a level set that recurs cofinally
      NeverFreeBeyond,  // keeps fixed points at every level > from
      Unknown,
    };
    Kind kind = Kind::Unknown;
    long long from = 0;
    std::string reason;
  };

  virtual ~ActionFamily() = default;
  virtual const GroupPresentation& h_presentation() const = 0;
  // Torsion orders when H is finite abelian; nullopt for infinite H.
  virtual std::optional<std::vector<long long>> h_torsion() const = 0;
  virtual std::optional<long long> levels() const = 0;  // nullopt = unbounded
  virtual PermutationAction level_action(long long l) const = 0;

  virtual bool element_is_identity(const std::vector<BigInt>& h) const = 0;
  virtual Freeness freeness_tail(const std::vector<BigInt>& h) const = 0;

  // Whether all FreeRecurring certificates of this family refer to one shared
  // level set, so that certificates of distinct elements may be intersected.
  virtual bool recurring_set_shared() const { return false; }

  // Supernatural number of the product of the first `stages` point counts.
  // The default multiplies concrete counts and reports an incomplete result;
  // families with an analytic rule override it to certify the full tail.
  virtual SupernaturalNumber accumulated_supernatural(long long stages) const;

  // Certificate that levels where the action is fully mixing (every
  // nontrivial element fixed-point free) recur infinitely often.
  virtual std::optional<std::string> mixing_recurrence() const { return std::nullopt; }
  // Certificate that no level ever mixes (e.g. the trivial action).
  virtual std::optional<std::string> never_mixes() const { return std::nullopt; }
};

// H = Z/d mapping into each level quotient Z/n_l either by a regular
// multiple (generator -> n_l/d when d | n_l, a free semiregular action) or
// trivially. The trivial mode exists to witness failure paths.
class CyclicHomFamily : public ActionFamily {
 public:
  enum class Mode { RegularMultiple, Trivial };
  CyclicHomFamily(long long d, FactorSequence seq, Mode mode);

  const GroupPresentation& h_presentation() const override { return pres_; }
  std::optional<std::vector<long long>> h_torsion() const override;
  std::optional<long long> levels() const override { return seq_.length(); }
  PermutationAction level_action(long long l) const override;
  bool element_is_identity(const std::vector<BigInt>& h) const override;
  Freeness freeness_tail(const std::vector<BigInt>& h) const override;
  bool recurring_set_shared() const override { return true; }
  SupernaturalNumber accumulated_supernatural(long long stages) const override;
  std::optional<std::string> mixing_recurrence() const override;
  std::optional<std::string> never_mixes() const override;

  const FactorSequence& sequence() const { return seq_; }
  long long order() const { return d_; }
  Mode mode() const { return mode_; }
  // Does d divide n_l at infinitely many levels, by the sequence rule?
  bool divisibility_recurs() const;

 private:
  long long d_;
  FactorSequence seq_;
  Mode mode_;
  GroupPresentation pres_;
};

// H-side of the Klein bottle example: H = <a, b^2> acting on (Z/p^l)^2 by
// coordinate translations. Point counts are p^(2l).
class KleinBottleFamily : public ActionFamily {
 public:
  explicit KleinBottleFamily(long long p);

  const GroupPresentation& h_presentation() const override { return pres_; }
  std::optional<std::vector<long long>> h_torsion() const override { return std::nullopt; }
  std::optional<long long> levels() const override { return std::nullopt; }
  PermutationAction level_action(long long l) const override;
  bool element_is_identity(const std::vector<BigInt>& h) const override;
  Freeness freeness_tail(const std::vector<BigInt>& h) const override;
  SupernaturalNumber accumulated_supernatural(long long stages) const override;
  std::optional<std::string> mixing_recurrence() const override;

  long long prime() const { return p_; }

 private:
  long long p_;
  GroupPresentation pres_;
};

// Finite abelian H acting through an embedding pattern: each generator
// translates Z/n_l by its pattern coordinate.
class PatternFamily : public ActionFamily {
 public:
  explicit PatternFamily(EmbeddingPattern pat);

  const GroupPresentation& h_presentation() const override { return pres_; }
  std::optional<std::vector<long long>> h_torsion() const override;
  std::optional<long long> levels() const override;
  PermutationAction level_action(long long l) const override;
  bool element_is_identity(const std::vector<BigInt>& h) const override;
  Freeness freeness_tail(const std::vector<BigInt>& h) const override;
  SupernaturalNumber accumulated_supernatural(long long stages) const override;
  std::optional<std::string> mixing_recurrence() const override;

  const EmbeddingPattern& pattern() const { return pat_; }
  const FactorSequence& sequence() const { return pat_.sequence(); }

 private:
  EmbeddingPattern pat_;
  GroupPresentation pres_;
};

// G-action per level obtained by inducing a family of H-actions through a
// transversal. Freeness of a G-word is decided by the conjugate trace set:
// the word is fixed-point free at a level exactly when every conjugate
// landing in H is.
class InducedFamily {
 public:
  InducedFamily(const GroupModel& model, SubgroupTransversal t,
                const ActionFamily& base);

  const GroupModel& model() const { return model_; }
  const SubgroupTransversal& transversal() const { return trans_; }
  const ActionFamily& base() const { return base_; }

  PermutationAction level_action(long long l) const;
  long long fixed_points(const Word& g, long long l) const;

  struct WordCertificate {
    ActionFamily::Freeness freeness;
    bool trivial_in_group = false;  // g = 1, acts as the identity everywhere
    std::vector<std::pair<long long, std::vector<BigInt>>> trace_set;
  };
  WordCertificate word_certificate(const Word& g) const;

 private:
  const GroupModel& model_;
  SubgroupTransversal trans_;
  const ActionFamily& base_;
};

// Interleaving schedule: for each word its free levels (within the horizon)
// are consumed in Cantor block order word_1; word_1, word_2; ... so every
// word's free levels recur throughout the schedule. Levels are consumed at
// most once across the whole schedule.
struct RegroupSchedule {
  struct Entry {
    long long word_index = 0;
    long long level = 0;
  };
  std::vector<Entry> entries;
  bool exhausted = false;  // some word ran out of free levels within the horizon
  std::string note;
};
RegroupSchedule regroup_free_levels(const InducedFamily& fam, const std::vector<Word>& words,
                                    long long horizon, long long count);

}  // namespace qrok
