#pragma once

#include <qrok/characters.hpp>
#include <qrok/family.hpp>
#include <qrok/smith.hpp>
#include <qrok/supernatural.hpp>

#include <string>
#include <vector>

namespace qrok {

// Stagewise Bratteli data for the crossed product of a finite abelian group
// acting level by level.  Vertices at every stage are the characters of H;
// the incidence matrix of stage l counts how often each character occurs in
// the permutation module of the level-l action, shifted by the dual group.
struct BratteliDiagram {
  std::vector<std::string> labels;          // one per character, fixed across stages
  std::vector<std::vector<BigInt>> sizes;   // sizes[0] is all ones
  std::vector<IntMat> steps;                // steps[m] maps stage m to stage m+1

  std::string to_text() const;
};

struct CrossedProductAnalysis {
  enum class Verdict { UHF, NotUHF, Undetermined };

  BratteliDiagram diagram;
  Verdict verdict = Verdict::Undetermined;
  SupernaturalNumber supernatural;  // meaningful when verdict == UHF
  std::string reason;
  std::vector<long long> cuts;  // stages where the telescoped step became flat
};

BratteliDiagram crossed_product_diagram(const ActionFamily& fam, long long stages);

CrossedProductAnalysis analyze_crossed_product(const ActionFamily& fam, long long stages);

}  // namespace qrok
