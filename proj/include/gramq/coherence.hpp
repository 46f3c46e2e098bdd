#pragma once

// α-z Rényi divergence and the coherence it induces:
//
//   D_{α,z}(ρ, σ) = (f_{α,z}(ρ, σ)^{1/α} - 1) / (α - 1)
//   C_{α,z}(ρ)    = min over diagonal σ of D_{α,z}(ρ, σ)
//
// All quantities are base-free; the α -> 1 limit is in nats.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "gramq/matfun.hpp"

namespace gramq {

/// Parameter regimes in which C_{α,z} is a proper coherence measure.
enum class Validity {
  case_i,    // 0 < α < 1, z >= max(α, 1 - α)
  case_ii,   // 1 < α <= 2, z = 1
  case_iii,  // 1 < α <= 2, z = α / 2
  case_iv,   // α > 1, z = α
  outside,
};

std::string_view to_string(Validity v);

class AlphaZ {
 public:
  /// Throws InvalidParameter for non-finite values or z <= 0.
  AlphaZ(double alpha, double z = 1.0);

  double alpha() const { return alpha_; }
  double z() const { return z_; }
  Validity validity() const { return validity_; }
  bool is_valid_measure() const { return validity_ != Validity::outside; }

 private:
  double alpha_;
  double z_;
  Validity validity_;
};

Validity classify(double alpha, double z);

/// Width of the window around α = 1 inside which the α -> 1 limit is used.
inline constexpr double kAlphaOneWindow = 1e-6;

struct OptimizerConfig {
  int restarts = 16;
  int max_iters = 2000;
  double convergence_tol = 1e-10;
  /// Smallest coordinate an iterate may take on the simplex.
  double boundary_floor = 1e-14;
  std::uint64_t seed = 0;
};

/// D_{α,z}(ρ, σ). Propagates f_alpha_z errors.
double divergence(const DensityMatrix& rho, const DensityMatrix& sigma, const AlphaZ& p);

/// D_{α,z}(ρ, diag(q)) with ρ^{α/z} precomputed.
double divergence_incoherent(const ComplexMatrix& rho_factor, std::span<const double> q, const AlphaZ& p,
                             const Tolerances& tol = {});

/// (Σ_i <i|ρ^α|i>^{1/α} - 1) / (α - 1), the z = 1 coherence. Within
/// kAlphaOneWindow of 1 the α -> 1 limit is returned instead.
/// Throws ParameterOutOfRange unless α ∈ (0, 2].
double coherence_closed_z1(const DensityMatrix& rho, double alpha);

/// S(diag ρ) - S(ρ) in nats.
double coherence_limit_alpha1(const DensityMatrix& rho);

struct CoherenceResult {
  double value = 0.0;
  RealVector argmin;  // diagonal of the minimizing incoherent state
  bool converged = true;
  /// Some coordinate of the minimizer sits near the simplex boundary.
  bool at_boundary = false;
  long evaluations = 0;
};

/// Multi-start minimization of D_{α,z}(ρ, diag(q)) over the simplex.
/// Starts are the uniform point, diag(ρ), any caller-supplied warm starts and
/// Dirichlet(1) samples drawn from cfg.seed, up to cfg.restarts in total.
/// A non-converged run is reported through `converged`, not thrown.
CoherenceResult coherence_optimized(const DensityMatrix& rho, const AlphaZ& p, const OptimizerConfig& cfg = {},
                                    std::span<const RealVector> warm_starts = {});

/// Brute-force minimum over the regular simplex grid {k/steps}, followed by a
/// pairwise mass-transfer pattern search around the best grid point.
/// Throws DimensionTooLarge for dim(ρ) > 4 and InvalidParameter for steps < 50.
double oracle_grid(const DensityMatrix& rho, const AlphaZ& p, int steps);

}  // namespace gramq
