#pragma once

#include <qrok/stage.hpp>

namespace qrok {

// Certified two-sided operator-norm estimate. Everything else in the library
// is exact; this is the one binary64 computation, and it reports an interval
// rather than a point so downstream contracts can quote a sound bound.
struct NormBracket {
  double lower = 0;
  double upper = 0;
  bool converged = false;
  bool exact = false;  // endpoints equal and provably exact (e.g. unitaries)

  double width() const { return upper - lower; }
};

// Bracket for the operator norm of x. The upper bound comes from iterated
// squaring of x^T x with Frobenius rescaling (lambda_max <= prod f_j^(1/2^j));
// the lower from Rayleigh quotients, seeded with the squared iterates so the
// two sides meet quickly. Endpoints are inflated/deflated by a small relative
// margin to absorb binary64 rounding. If the width target tol * max(1, norm)
// is not reached within max_steps squarings, the widest valid bracket is
// returned with converged = false.
NormBracket op_norm_bracket(const RatMat& x, double tol = 1e-10, int max_steps = 48);
NormBracket op_norm_bracket(const StageElement& x, double tol = 1e-10, int max_steps = 48);

}  // namespace qrok
