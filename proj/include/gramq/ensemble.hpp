#pragma once

// Pure-state ensembles and their Gram matrices.

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "gramq/matfun.hpp"

namespace gramq {

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kProbabilitySumTolerance = 1e-10;

/// Unit-norm amplitude vector.
class PureState {
 public:
  /// Throws InvariantViolation if the norm differs from 1 by more than 1e-10.
  explicit PureState(ComplexVector amplitudes);
  static PureState normalized(const ComplexVector& v);
  static PureState basis(Index dim, Index k);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  Index dim() const { return amplitudes_.size(); }
  Complex inner(const PureState& other) const { return amplitudes_.dot(other.amplitudes_); }
  ComplexMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

  bool operator==(const PureState& other) const { return amplitudes_ == other.amplitudes_; }

 private:
  ComplexVector amplitudes_;
};

struct Member {
  double p;
  PureState state;

  bool operator==(const Member&) const = default;
};

/// Ordered list of (probability, pure state) pairs.
class Ensemble {
 public:
  /// Throws InvariantViolation naming the offending member when a
  /// probability is non-positive, the probabilities do not sum to 1 or the
  /// state dimensions disagree.
  explicit Ensemble(std::vector<Member> members, std::string label = {});

  const std::vector<Member>& members() const { return members_; }
  const Member& operator[](std::size_t i) const { return members_[i]; }
  std::size_t size() const { return members_.size(); }
  Index dim() const { return dim_; }
  const std::string& label() const { return label_; }
  std::vector<double> probabilities() const;

  /// Σ p_i |ψ_i><ψ_i|
  ComplexMatrix average_state() const;

  Ensemble with_label(std::string label) const;

  bool operator==(const Ensemble& other) const {
    return dim_ == other.dim_ && label_ == other.label_ && members_ == other.members_;
  }

 private:
  std::vector<Member> members_;
  Index dim_ = 0;
  std::string label_;
};

using GramMatrix = DensityMatrix;

/// G_ij = sqrt(p_i p_j) <ψ_i|ψ_j>
GramMatrix gram(const Ensemble& e);
ComplexMatrix gram_matrix(const Ensemble& e);

/// n x m matrix sqrt(p_i q_k) <ψ_i|φ_k>. Throws DimensionMismatch.
ComplexMatrix cross_gram(const Ensemble& e, const Ensemble& f);

/// U e = {(p_i, U|ψ_i>)}. Throws NotUnitary, DimensionMismatch.
Ensemble apply_unitary(const Ensemble& e, const ComplexMatrix& u);

/// Members (p_i q_k, |ψ_i> ⊗ |φ_k>) in row-major (i, k) order.
Ensemble tensor(const Ensemble& e, const Ensemble& f);

struct HadamardProduct {
  Ensemble ensemble;
  /// Σ p_i q_i; the unnormalized Gram matrix G_e ∘ G_f equals
  /// normalization * gram(ensemble).
  double normalization;
};

/// Order-aligned product (p_i q_i / c, |ψ_i> ⊗ |φ_i>) with c = Σ p_i q_i.
/// Throws LengthMismatch.
HadamardProduct hadamard_product(const Ensemble& e, const Ensemble& f);

enum class CanonicalName { b92, diag, trine, bb84, tetrad, six };

inline constexpr CanonicalName kCanonicalNames[] = {CanonicalName::b92,  CanonicalName::diag,
                                                    CanonicalName::trine, CanonicalName::bb84,
                                                    CanonicalName::tetrad, CanonicalName::six};

/// Default B92 overlap <ψ_1|ψ_2> = 1/√2.
inline const double kB92DefaultOverlap = 1.0 / std::sqrt(2.0);

std::string_view to_string(CanonicalName name);
/// Throws UnknownName.
CanonicalName parse_canonical_name(std::string_view name);
bool is_canonical_name(std::string_view name);

/// The six reference ensembles. `x` is the B92 overlap sin θ and must lie in
/// [0, 1] (ParameterOutOfRange otherwise); it is ignored for the others.
Ensemble canonical(CanonicalName name, double x = kB92DefaultOverlap);
Ensemble canonical(std::string_view name, double x = kB92DefaultOverlap);

}  // namespace gramq
