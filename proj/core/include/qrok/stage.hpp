#pragma once

#include <qrok/matrix.hpp>
#include <qrok/perm.hpp>
#include <qrok/supernatural.hpp>

#include <vector>

namespace qrok {

// Hard ceiling on the total matrix dimension of any materialized stage.
inline constexpr long long kDefaultStageCap = 4096;

// Element of the stage-L finite-dimensional algebra M_{n_1} x ... x M_{n_L},
// realized as one dim x dim rational matrix with dim = n_1 * ... * n_L.
// Index convention: factor 1 varies slowest, so the flat index of the
// elementary tensor basis vector (i_1, ..., i_L) is
// ((i_1 * n_2 + i_2) * n_3 + i_3) * ... . Embedding into a later stage is
// kron with identity on the right.
class StageElement {
 public:
  StageElement(std::vector<long long> dims, RatMat m);

  static StageElement scalar(const Rational& value);  // stage 0
  static StageElement identity(std::vector<long long> dims);
  static StageElement zero(std::vector<long long> dims);
  // Diagonal projection supported on the given flat indices.
  static StageElement diagonal_projection(std::vector<long long> dims,
                                          const std::vector<long long>& support);

  long long stage() const { return static_cast<long long>(dims_.size()); }
  long long dim() const { return mat_.rows(); }
  const std::vector<long long>& dims() const { return dims_; }
  const RatMat& matrix() const { return mat_; }
  RatMat& matrix() { return mat_; }

  bool same_stage(const StageElement& o) const { return dims_ == o.dims_; }

  // Arithmetic only combines equal stages; embed explicitly first.
  StageElement operator+(const StageElement& o) const;
  StageElement operator-(const StageElement& o) const;
  StageElement operator*(const StageElement& o) const;
  StageElement operator*(const Rational& s) const;
  StageElement adjoint() const;  // entries are rational, so this is transpose
  bool operator==(const StageElement& o) const;

  bool is_projection() const;  // p = p* = p^2, exactly
  bool is_unitary() const;     // u u* = 1, exactly

 private:
  std::vector<long long> dims_;
  RatMat mat_;
};

// First L factors of the sequence as a dims vector, checked against the cap.
std::vector<long long> stage_dims(const FactorSequence& seq, long long L,
                                  long long cap = kDefaultStageCap);

// x at stage x.stage() of seq, embedded into stage L (x tensor identity).
StageElement embed_stage(const StageElement& x, const FactorSequence& seq, long long L,
                         long long cap = kDefaultStageCap);

// Same embedding into an explicit factor list; x.dims() must be a prefix.
StageElement embed_stage(const StageElement& x, const std::vector<long long>& dims);

// Trace-preserving conditional expectation onto the first prefix_len factors:
// normalized partial trace over the remaining ones. The nearest staged
// element in the sense that |x - E(x)| <= 2 dist(x, stage prefix_len).
StageElement conditional_expectation(const StageElement& x, long long prefix_len);

// Permutation matrix P with P[i][j] = [i == sigma(j)]; conjugation by P sends
// the diagonal unit e_jj to e_{sigma(j) sigma(j)}.
RatMat perm_matrix(const Perm& sigma);

// Unitary at stage L acting as sigma on tensor factor `factor_index` (1-based)
// and trivially elsewhere. sigma must have degree n_{factor_index}.
StageElement perm_unitary(const FactorSequence& seq, const Perm& sigma, long long factor_index,
                          long long L, long long cap = kDefaultStageCap);

// The permutation of flat indices induced by translating each factor j by
// steps[j] (mod n_j). This is the diagonal-product action of an abelian
// group element whose level coordinates are `steps`.
Perm tensor_translation(const std::vector<long long>& dims, const std::vector<BigInt>& steps);

// u x u*; validates that u is unitary (exactly) and stages match.
StageElement ad(const StageElement& u, const StageElement& x);

// trace / dim; equals the fixed-point fraction on permutation unitaries.
Rational normalized_trace(const StageElement& x);

}  // namespace qrok
