#include <qrok/stage.hpp>

#include <sstream>

namespace qrok {

namespace {

BigInt dims_product(const std::vector<long long>& dims) {
  BigInt d = 1;
  for (long long n : dims) {
    if (n < 1) throw InvalidInput("stage factor dimensions must be >= 1");
    d *= n;
  }
  return d;
}

void check_cap(const BigInt& dim, long long cap) {
  if (dim > cap) {
    std::ostringstream os;
    os << "stage dimension " << int_str(dim) << " exceeds the cap " << cap;
    throw CapExceeded(os.str());
  }
}

}  // namespace

StageElement::StageElement(std::vector<long long> dims, RatMat m)
    : dims_(std::move(dims)), mat_(std::move(m)) {
  BigInt d = dims_product(dims_);
  if (mat_.rows() != mat_.cols() || BigInt(static_cast<long>(mat_.rows())) != d)
    throw StageMismatch("matrix size does not match the stage dimensions");
}

StageElement StageElement::scalar(const Rational& value) {
  RatMat m(1, 1);
  m.at(0, 0) = value;
  return StageElement({}, std::move(m));
}

StageElement StageElement::identity(std::vector<long long> dims) {
  long long d = to_ll(dims_product(dims));
  return StageElement(std::move(dims), RatMat::identity(d));
}

StageElement StageElement::zero(std::vector<long long> dims) {
  long long d = to_ll(dims_product(dims));
  return StageElement(std::move(dims), RatMat::zero(d, d));
}

StageElement StageElement::diagonal_projection(std::vector<long long> dims,
                                               const std::vector<long long>& support) {
  long long d = to_ll(dims_product(dims));
  RatMat m(d, d);
  for (long long i : support) {
    if (i < 0 || i >= d) throw InvalidInput("diagonal support index out of range");
    m.at(i, i) = 1;
  }
  return StageElement(std::move(dims), std::move(m));
}

StageElement StageElement::operator+(const StageElement& o) const {
  if (!same_stage(o)) throw StageMismatch("adding elements of different stages");
  return StageElement(dims_, mat_ + o.mat_);
}

StageElement StageElement::operator-(const StageElement& o) const {
  if (!same_stage(o)) throw StageMismatch("subtracting elements of different stages");
  return StageElement(dims_, mat_ - o.mat_);
}

StageElement StageElement::operator*(const StageElement& o) const {
  if (!same_stage(o)) throw StageMismatch("multiplying elements of different stages");
  return StageElement(dims_, mat_ * o.mat_);
}

StageElement StageElement::operator*(const Rational& s) const {
  return StageElement(dims_, mat_ * s);
}

StageElement StageElement::adjoint() const { return StageElement(dims_, mat_.transpose()); }

bool StageElement::operator==(const StageElement& o) const {
  return dims_ == o.dims_ && mat_ == o.mat_;
}

bool StageElement::is_projection() const {
  return mat_ == mat_.transpose() && mat_ * mat_ == mat_;
}

bool StageElement::is_unitary() const { return (mat_ * mat_.transpose()).is_identity(); }

std::vector<long long> stage_dims(const FactorSequence& seq, long long L, long long cap) {
  if (L < 0) throw InvalidInput("negative stage");
  std::vector<long long> dims;
  dims.reserve(L);
  BigInt total = 1;
  for (long long l = 1; l <= L; ++l) {
    BigInt n = seq.factor(l);
    total *= n;
    check_cap(total, cap);
    dims.push_back(to_ll(n));
  }
  return dims;
}

StageElement embed_stage(const StageElement& x, const FactorSequence& seq, long long L,
                         long long cap) {
  if (L < x.stage()) throw StageMismatch("cannot embed into an earlier stage");
  std::vector<long long> target = stage_dims(seq, L, cap);
  for (long long l = 0; l < x.stage(); ++l)
    if (target[l] != x.dims()[l])
      throw StageMismatch("element dimensions disagree with the factor sequence at level " +
                          std::to_string(l + 1));
  long long rest = 1;
  for (long long l = x.stage(); l < L; ++l) rest *= target[l];
  return StageElement(std::move(target), kron(x.matrix(), RatMat::identity(rest)));
}

StageElement embed_stage(const StageElement& x, const std::vector<long long>& dims) {
  if (static_cast<long long>(dims.size()) < x.stage())
    throw StageMismatch("cannot embed into an earlier stage");
  for (long long l = 0; l < x.stage(); ++l)
    if (dims[static_cast<size_t>(l)] != x.dims()[static_cast<size_t>(l)])
      throw StageMismatch("element dimensions are not a prefix of the target stage");
  long long rest = 1;
  for (size_t l = static_cast<size_t>(x.stage()); l < dims.size(); ++l) rest *= dims[l];
  return StageElement(dims, kron(x.matrix(), RatMat::identity(rest)));
}

StageElement conditional_expectation(const StageElement& x, long long prefix_len) {
  if (prefix_len < 0 || prefix_len > x.stage())
    throw InvalidInput("prefix length outside the element's stage");
  long long head = 1;
  for (long long l = 0; l < prefix_len; ++l) head *= x.dims()[static_cast<size_t>(l)];
  long long tail = x.dim() / head;
  RatMat m(head, head);
  for (long long r1 = 0; r1 < head; ++r1)
    for (long long r2 = 0; r2 < head; ++r2) {
      Rational acc = 0;
      for (long long s = 0; s < tail; ++s) acc += x.matrix().at(r1 * tail + s, r2 * tail + s);
      m.at(r1, r2) = acc / rat(tail);
    }
  std::vector<long long> dims(x.dims().begin(), x.dims().begin() + prefix_len);
  return StageElement(std::move(dims), std::move(m));
}

RatMat perm_matrix(const Perm& sigma) {
  RatMat m(sigma.degree(), sigma.degree());
  for (long long j = 0; j < sigma.degree(); ++j) m.at(sigma(j), j) = 1;
  return m;
}

StageElement perm_unitary(const FactorSequence& seq, const Perm& sigma, long long factor_index,
                          long long L, long long cap) {
  if (factor_index < 1 || factor_index > L)
    throw InvalidInput("perm_unitary factor index out of range");
  std::vector<long long> dims = stage_dims(seq, L, cap);
  if (sigma.degree() != dims[factor_index - 1])
    throw StageMismatch("permutation degree does not match factor " +
                        std::to_string(factor_index));
  long long before = 1, after = 1;
  for (long long l = 0; l < factor_index - 1; ++l) before *= dims[l];
  for (long long l = factor_index; l < L; ++l) after *= dims[l];
  RatMat u = kron(kron(RatMat::identity(before), perm_matrix(sigma)), RatMat::identity(after));
  return StageElement(std::move(dims), std::move(u));
}

Perm tensor_translation(const std::vector<long long>& dims, const std::vector<BigInt>& steps) {
  if (dims.size() != steps.size())
    throw InvalidInput("tensor_translation needs one step per factor");
  Perm p = Perm::identity(1);
  for (size_t l = 0; l < dims.size(); ++l)
    p = Perm::product(p, Perm::translation(dims[l], steps[l]));
  return p;
}

StageElement ad(const StageElement& u, const StageElement& x) {
  if (!u.same_stage(x)) throw StageMismatch("ad with mismatched stages");
  if (!u.is_unitary()) throw InvalidInput("ad requires a unitary conjugator");
  return StageElement(x.dims(), u.matrix() * x.matrix() * u.matrix().transpose());
}

Rational normalized_trace(const StageElement& x) {
  return x.matrix().trace() / rat(x.dim());
}

}  // namespace qrok
