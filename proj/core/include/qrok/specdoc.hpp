#pragma once

#include <qrok/family.hpp>
#include <qrok/induce.hpp>
#include <qrok/pattern.hpp>
#include <qrok/stage.hpp>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qrok {

// Schema violations name the JSON path of the offending node, e.g.
// "$.group.rank: expected an integer >= 0". The CLI maps these to exit 64.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One task entry. Fields the task kind does not use keep their defaults and
// are not echoed back.
struct TaskSpec {
  std::string command;  // analyze | induce | tower | witness | bratteli | kgroups

  std::vector<std::vector<BigInt>> elements;  // group elements in generator coords
  long long horizon = 12;
  long long box = 10;
  long long power_bound = 10;
  long long level = 1;
  long long word_len = 4;
  long long stages = 8;
  long long test_stage = 0;  // tower: stage of the canonical test battery
  Rational epsilon = rat(1, 100);
  long long stage_cap = kDefaultStageCap;

  // kgroups
  long long prime_bound = 97;
  long long successor_stages = 12;
  bool rokhlin_flag = false;
  bool infinite_rank = false;
  std::optional<long long> kg_rank;
  std::optional<std::vector<long long>> kg_torsion;

  // witness
  long long p_stage = 1;
  std::vector<long long> p_support = {0};
  long long a_stage = 0;  // 0 = reuse p as the staged element
  std::vector<std::vector<std::string>> a_matrix;  // rational entry strings
};

struct SpecDocument {
  std::string name;
  std::string description;

  bool has_group = false;
  FgAbelianGroup group;

  bool has_sequence = false;
  FactorSequence sequence = FactorSequence::linear();

  bool has_pattern = false;
  std::vector<CoordinateRule> rules;
  bool resequence = false;

  enum class FamilyKind { None, CyclicHom, Pattern, KleinBottle };
  FamilyKind family_kind = FamilyKind::None;
  long long cyclic_d = 2;
  CyclicHomFamily::Mode cyclic_mode = CyclicHomFamily::Mode::RegularMultiple;
  long long klein_p = 3;

  bool has_induction = false;
  long long induction_p = 3;
  std::vector<std::string> transversal;  // words over the ambient generators

  bool has_divisible = false;
  long long divisible_p = 2;
  long long divisible_truncation = 8;

  std::vector<TaskSpec> tasks;

  // Assembled objects. Both throw InvalidInput if the needed blocks are
  // missing, but parse_spec_text already cross-checks per task command.
  EmbeddingPattern build_pattern() const;
  std::unique_ptr<ActionFamily> build_family() const;
};

SpecDocument parse_spec_text(const std::string& text);

// Reads a file path or resolves "builtin:<name>".
SpecDocument load_spec(const std::string& path_or_builtin);

// Deterministic normalized re-serialization; parse(canonical(d)) == d.
std::string canonical_spec_json(const SpecDocument& doc);

// Shipped example documents, embedded so the binary works from any directory.
const std::vector<std::pair<std::string, std::string>>& builtin_specs();

}  // namespace qrok
