#pragma once

// Quantumness of pure-state ensembles: the coherence of the Gram matrix under
// the α-z Rényi divergence, plus the comparison quantifiers it is measured
// against.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gramq/coherence.hpp"
#include "gramq/ensemble.hpp"

namespace gramq {

enum class Quantifier { Qaz, Qaz_normalized, Ql1, Qcomm, Qbig, QHol, QFS_ref, Qclon_ref };
enum class Method { closed_form, generic_eq3, optimizer, oracle, reference_constant, limit };

std::string_view to_string(Quantifier q);
std::string_view to_string(Method m);
/// Accepts the enum spellings case-insensitively ("qaz", "QHol", ...). Throws UnknownName.
Quantifier parse_quantifier(std::string_view name);
/// "bits" for QHol, "nats" for the α -> 1 limit, "none" otherwise.
std::string_view units(Quantifier q, Method m);

struct QuantumnessRecord {
  std::string ensemble;
  Quantifier quantifier;
  std::optional<double> alpha;  // present iff quantifier is Qaz or Qaz_normalized
  std::optional<double> z;
  double value;
  Method method;
  bool converged = true;
};

struct QuantumnessValue {
  double value;
  Method method;
  bool converged = true;
};

/// Q_{α,z}(e) = C_{α,z}(G_e). Uses the α -> 1 limit inside kAlphaOneWindow,
/// the z = 1 closed form for α ∈ (0,1)∪(1,2], and the simplex optimizer otherwise.
QuantumnessValue quantumness_detailed(const Ensemble& e, const AlphaZ& p, const OptimizerConfig& cfg = {});
double quantumness(const Ensemble& e, const AlphaZ& p, const OptimizerConfig& cfg = {});

/// Q_{α,z}(e) / n with n the number of members.
double quantumness_normalized(const Ensemble& e, const AlphaZ& p, const OptimizerConfig& cfg = {});

/// Explicit z = 1 formulas for the six reference ensembles. `x` is the B92
/// overlap. Throws ParameterOutOfRange unless α ∈ (0,1)∪(1,2].
double closed_form_reference(CanonicalName name, double alpha, double x = kB92DefaultOverlap);

/// Σ_{i≠j} sqrt(p_i p_j) |<ψ_i|ψ_j>|
double q_l1(const Ensemble& e);
/// Q = -Σ_{ij} sqrt(p_i p_j) Tr[ρ_i, ρ_j]^2
double q_commutator_weighted(const Ensemble& e);
/// Q_comm = -Σ_{ij} p_i p_j Tr[ρ_i, ρ_j]^2
double q_commutator(const Ensemble& e);

/// Holevo quantity in bits; for pure states the entropy of the average state.
double holevo_chi(const Ensemble& e);

/// POVM with elements summing to the identity.
struct Povm {
  std::vector<ComplexMatrix> elements;

  std::size_t outcomes() const { return elements.size(); }
  /// Every element PSD and Σ M_k = I, both within `tol`.
  bool is_valid(double tol = 1e-9) const;
};

/// M_k = A^{-1/2} v_k v_k† A^{-1/2} with A = Σ v_k v_k†; A must be full rank.
Povm rank_one_povm(std::span<const ComplexVector> vectors);

/// I(M(E)) in bits for the joint distribution q_ik = p_i <ψ_i|M_k|ψ_i>.
double mutual_information(const Ensemble& e, const Povm& m);

struct AccessibleInfoResult {
  double bits = 0.0;
  Povm povm;
  bool converged = true;
};

/// Best mutual information over rank-1 POVMs with 2..outcomes_max outcomes,
/// found by multi-start Nelder-Mead (cfg.restarts starts per outcome count).
/// A lower bound on the accessible information.
AccessibleInfoResult accessible_info(const Ensemble& e, int outcomes_max, const OptimizerConfig& cfg = {});

struct QHolResult {
  double value = 0.0;
  double chi = 0.0;
  double accessible = 0.0;
  bool converged = true;
};

/// χ - χ_0 in bits with up to d² outcomes.
QHolResult q_hol_detailed(const Ensemble& e, const OptimizerConfig& cfg = {});
double q_hol(const Ensemble& e, const OptimizerConfig& cfg = {});

/// Reference comparison values (two decimals) for the six reference
/// ensembles: Ql1, QFS_ref, Qclon_ref, QHol, Qcomm, Qbig.
std::map<Quantifier, double> reference_constants(CanonicalName name);

}  // namespace gramq
