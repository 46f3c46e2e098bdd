#include "gramq/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gramq/error.hpp"

namespace gramq {

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0)
    throw Error(ErrorKind::InvariantViolation, "state has no amplitudes");
  const double norm = amplitudes_.norm();
  if (!(std::abs(norm - 1.0) <= kNormTolerance))
    throw Error(ErrorKind::InvariantViolation, "state norm is " + std::to_string(norm));
}

PureState PureState::normalized(const ComplexVector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0)) throw Error(ErrorKind::InvariantViolation, "cannot normalize a zero vector");
  return PureState(v / norm);
}

PureState PureState::basis(Index dim, Index k) {
  ComplexVector v = ComplexVector::Zero(dim);
  v[k] = 1.0;
  return PureState(std::move(v));
}

Ensemble::Ensemble(std::vector<Member> members, std::string label)
    : members_(std::move(members)), label_(std::move(label)) {
  if (members_.empty()) throw Error(ErrorKind::InvariantViolation, "ensemble has no members");
  dim_ = members_.front().state.dim();
  double total = 0.0;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const Member& m = members_[i];
    if (!(m.p > 0.0))
      throw Error(ErrorKind::InvariantViolation,
                  "member " + std::to_string(i) + " has non-positive probability " + std::to_string(m.p));
    if (m.state.dim() != dim_)
      throw Error(ErrorKind::DimensionMismatch,
                  "member " + std::to_string(i) + " has dimension " + std::to_string(m.state.dim()) +
                      ", expected " + std::to_string(dim_));
    total += m.p;
  }
  if (!(std::abs(total - 1.0) <= kProbabilitySumTolerance))
    throw Error(ErrorKind::InvariantViolation, "probabilities sum to " + std::to_string(total));
}

std::vector<double> Ensemble::probabilities() const {
  std::vector<double> p;
  p.reserve(members_.size());
  for (const Member& m : members_) p.push_back(m.p);
  return p;
}

ComplexMatrix Ensemble::average_state() const {
  ComplexMatrix avg = ComplexMatrix::Zero(dim_, dim_);
  for (const Member& m : members_) avg += m.p * m.state.projector();
  return avg;
}

Ensemble Ensemble::with_label(std::string label) const {
  Ensemble copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

ComplexMatrix cross_gram(const Ensemble& e, const Ensemble& f) {
  if (e.dim() != f.dim())
    throw Error(ErrorKind::DimensionMismatch, "cross Gram of ensembles with different dimensions");
  ComplexMatrix g(e.size(), f.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t k = 0; k < f.size(); ++k)
      g(i, k) = std::sqrt(e[i].p * f[k].p) * e[i].state.inner(f[k].state);
  return g;
}

ComplexMatrix gram_matrix(const Ensemble& e) {
  return cross_gram(e, e);
}

GramMatrix gram(const Ensemble& e) {
  return GramMatrix(gram_matrix(e));
}

Ensemble apply_unitary(const Ensemble& e, const ComplexMatrix& u) {
  if (u.rows() != e.dim() || u.cols() != e.dim())
    throw Error(ErrorKind::DimensionMismatch, "unitary dimension does not match the ensemble");
  const double defect = max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
  if (defect > 1e-10) throw Error(ErrorKind::NotUnitary, "max |U^dagger U - I| = " + std::to_string(defect));
  std::vector<Member> out;
  out.reserve(e.size());
  // Renormalize so that the 1e-10 unitarity slack cannot push norms out of range.
  for (const Member& m : e.members())
    out.push_back({m.p, PureState::normalized(u * m.state.amplitudes())});
  return Ensemble(std::move(out), e.label());
}

Ensemble tensor(const Ensemble& e, const Ensemble& f) {
  std::vector<Member> out;
  out.reserve(e.size() * f.size());
  double total = 0.0;
  for (const Member& a : e.members())
    for (const Member& b : f.members()) {
      out.push_back({a.p * b.p, PureState::normalized(kron(a.state.amplitudes(), b.state.amplitudes()))});
      total += a.p * b.p;
    }
  for (Member& m : out) m.p /= total;
  std::string label = e.label().empty() && f.label().empty() ? "" : e.label() + "(x)" + f.label();
  return Ensemble(std::move(out), std::move(label));
}

HadamardProduct hadamard_product(const Ensemble& e, const Ensemble& f) {
  if (e.size() != f.size())
    throw Error(ErrorKind::LengthMismatch, "Hadamard product needs ensembles of equal length (" +
                                               std::to_string(e.size()) + " vs " + std::to_string(f.size()) + ")");
  double c = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) c += e[i].p * f[i].p;
  if (!(c > 0.0)) throw Error(ErrorKind::DegenerateEnsemble, "sum p_i q_i vanished");
  std::vector<Member> out;
  out.reserve(e.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    out.push_back({e[i].p * f[i].p / c,
                   PureState::normalized(kron(e[i].state.amplitudes(), f[i].state.amplitudes()))});
  std::string label = e.label().empty() && f.label().empty() ? "" : e.label() + "(o)" + f.label();
  return {Ensemble(std::move(out), std::move(label)), c};
}

std::string_view to_string(CanonicalName name) {
  switch (name) {
    case CanonicalName::b92: return "b92";
    case CanonicalName::diag: return "diag";
    case CanonicalName::trine: return "trine";
    case CanonicalName::bb84: return "bb84";
    case CanonicalName::tetrad: return "tetrad";
    case CanonicalName::six: return "six";
  }
  return "";
}

bool is_canonical_name(std::string_view name) {
  for (CanonicalName c : kCanonicalNames)
    if (to_string(c) == name) return true;
  return false;
}

CanonicalName parse_canonical_name(std::string_view name) {
  for (CanonicalName c : kCanonicalNames)
    if (to_string(c) == name) return c;
  throw Error(ErrorKind::UnknownName, "unknown canonical ensemble '" + std::string(name) + "'");
}

namespace {

PureState qubit(Complex a0, Complex a1) {
  ComplexVector v(2);
  v << a0, a1;
  return PureState(std::move(v));
}

Ensemble uniform(std::vector<PureState> states, std::string_view label) {
  std::vector<Member> members;
  const double p = 1.0 / static_cast<double>(states.size());
  for (PureState& s : states) members.push_back({p, std::move(s)});
  return Ensemble(std::move(members), std::string(label));
}

}  // namespace

Ensemble canonical(CanonicalName name, double x) {
  using std::numbers::pi;
  const double r2 = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, 1.0};
  const std::string_view label = to_string(name);
  switch (name) {
    case CanonicalName::b92: {
      if (!(x >= 0.0 && x <= 1.0))
        throw Error(ErrorKind::ParameterOutOfRange, "B92 overlap x must lie in [0, 1], got " + std::to_string(x));
      const double theta = std::asin(x);
      const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
      return uniform({qubit(c, s), qubit(s, c)}, label);
    }
    case CanonicalName::diag:
      return uniform({qubit(1, 0), qubit(0, 1), qubit(r2, r2)}, label);
    case CanonicalName::trine: {
      const double h = std::sqrt(3.0) / 2.0;
      return uniform({qubit(1, 0), qubit(0.5, h), qubit(0.5, -h)}, label);
    }
    case CanonicalName::bb84:
      return uniform({qubit(1, 0), qubit(0, 1), qubit(r2, r2), qubit(r2, -r2)}, label);
    case CanonicalName::tetrad: {
      const double a = 1.0 / std::sqrt(3.0), b = std::sqrt(2.0 / 3.0);
      return uniform({qubit(1, 0), qubit(a, b), qubit(a, std::polar(b, 2.0 * pi / 3.0)),
                      qubit(a, std::polar(b, 4.0 * pi / 3.0))},
                     label);
    }
    case CanonicalName::six:
      return uniform({qubit(r2, r2), qubit(r2, -r2), qubit(r2, i * r2), qubit(r2, -i * r2), qubit(1, 0),
                      qubit(0, 1)},
                     label);
  }
  throw Error(ErrorKind::UnknownName, "unknown canonical ensemble");
}

Ensemble canonical(std::string_view name, double x) {
  return canonical(parse_canonical_name(name), x);
}

}  // namespace gramq
