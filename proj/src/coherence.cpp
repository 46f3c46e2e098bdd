#include "gramq/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>

#include "gramq/error.hpp"
#include "gramq/simplex_search.hpp"

namespace gramq {

std::string_view to_string(Validity v) {
  switch (v) {
    case Validity::case_i: return "case_i";
    case Validity::case_ii: return "case_ii";
    case Validity::case_iii: return "case_iii";
    case Validity::case_iv: return "case_iv";
    case Validity::outside: return "outside";
  }
  return "outside";
}

namespace {

bool same(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b));
}

}  // namespace

Validity classify(double alpha, double z) {
  if (alpha > 0.0 && alpha < 1.0 && z >= std::max(alpha, 1.0 - alpha) - 1e-12) return Validity::case_i;
  if (alpha > 1.0 && alpha <= 2.0 + 1e-12) {
    if (same(z, 1.0)) return Validity::case_ii;
    if (same(z, alpha / 2.0)) return Validity::case_iii;
  }
  if (alpha > 1.0 && same(z, alpha)) return Validity::case_iv;
  return Validity::outside;
}

AlphaZ::AlphaZ(double alpha, double z) : alpha_(alpha), z_(z) {
  if (!std::isfinite(alpha) || !std::isfinite(z))
    throw Error(ErrorKind::InvalidParameter, "alpha and z must be finite");
  if (!(z > 0.0)) throw Error(ErrorKind::InvalidParameter, "z must be positive, got " + std::to_string(z));
  validity_ = classify(alpha, z);
}

double divergence(const DensityMatrix& rho, const DensityMatrix& sigma, const AlphaZ& p) {
  const double f = f_alpha_z(rho, sigma, p.alpha(), p.z());
  return (std::pow(f, 1.0 / p.alpha()) - 1.0) / (p.alpha() - 1.0);
}

double divergence_incoherent(const ComplexMatrix& rho_factor, std::span<const double> q, const AlphaZ& p,
                             const Tolerances& tol) {
  const double f = f_alpha_z_incoherent(rho_factor, q, p.alpha(), p.z(), tol);
  return (std::pow(f, 1.0 / p.alpha()) - 1.0) / (p.alpha() - 1.0);
}

double coherence_limit_alpha1(const DensityMatrix& rho) {
  const RealVector d = rho.diagonal_entries().cwiseMax(0.0);
  return shannon_entropy(std::span<const double>(d.data(), static_cast<std::size_t>(d.size()))) -
         von_neumann_entropy(rho);
}

double coherence_closed_z1(const DensityMatrix& rho, double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw Error(ErrorKind::ParameterOutOfRange, "closed form needs alpha in (0,1)u(1,2], got " + std::to_string(alpha));
  if (std::abs(alpha - 1.0) < kAlphaOneWindow) return coherence_limit_alpha1(rho);
  const RealVector diag = rho.power(alpha).diagonal().real();
  double sum = 0.0;
  for (Index i = 0; i < diag.size(); ++i) sum += std::pow(std::max(diag[i], 0.0), 1.0 / alpha);
  return (sum - 1.0) / (alpha - 1.0);
}

namespace {

// Interior chart of the simplex: q = floor + (1 - n floor) softmax(t, 0).
class SimplexChart {
 public:
  SimplexChart(Index n, double floor) : n_(n), floor_(floor) {}

  Index free_dims() const { return n_ - 1; }

  void to_simplex(const RealVector& t, std::vector<double>& q) const {
    q.resize(static_cast<std::size_t>(n_));
    double shift = 0.0;
    for (Index i = 0; i < t.size(); ++i) shift = std::max(shift, t[i]);
    double total = 0.0;
    for (Index i = 0; i < n_; ++i) {
      const double logit = i < t.size() ? t[i] : 0.0;
      q[static_cast<std::size_t>(i)] = std::exp(logit - shift);
      total += q[static_cast<std::size_t>(i)];
    }
    const double scale = 1.0 - static_cast<double>(n_) * floor_;
    for (double& v : q) v = floor_ + scale * v / total;
  }

  RealVector from_simplex(const RealVector& q) const {
    const double scale = 1.0 - static_cast<double>(n_) * floor_;
    auto logit = [&](Index i) { return std::log(std::max((q[i] - floor_) / scale, 1e-300)); };
    RealVector t(free_dims());
    const double last = logit(n_ - 1);
    for (Index i = 0; i < free_dims(); ++i) t[i] = std::clamp(logit(i) - last, -700.0, 700.0);
    return t;
  }

 private:
  Index n_;
  double floor_;
};

RealVector dirichlet_one(Index n, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  RealVector q(n);
  for (Index i = 0; i < n; ++i) q[i] = expo(rng);
  return q / q.sum();
}

}  // namespace

CoherenceResult coherence_optimized(const DensityMatrix& rho, const AlphaZ& p, const OptimizerConfig& cfg,
                                    std::span<const RealVector> warm_starts) {
  if (p.alpha() == 1.0) throw Error(ErrorKind::InvalidParameter, "alpha must differ from 1");
  if (cfg.restarts <= 0 || cfg.max_iters <= 0 || !(cfg.convergence_tol > 0.0) || !(cfg.boundary_floor > 0.0))
    throw Error(ErrorKind::InvalidParameter, "optimizer configuration values must be positive");
  const Index n = rho.dim();
  CoherenceResult result;
  if (n == 1) {
    result.argmin = RealVector::Ones(1);
    result.value = divergence_incoherent(rho.power_factor(p.alpha() / p.z()), std::vector<double>{1.0}, p,
                                         rho.tolerances());
    result.evaluations = 1;
    return result;
  }

  const ComplexMatrix rho_factor = rho.power_factor(p.alpha() / p.z());
  const Tolerances& tol = rho.tolerances();
  const SimplexChart chart(n, cfg.boundary_floor);
  std::vector<double> q;
  long evaluations = 0;
  auto objective = [&](const RealVector& t) {
    ++evaluations;
    chart.to_simplex(t, q);
    const double v = divergence_incoherent(rho_factor, q, p, tol);
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
  };

  std::vector<RealVector> starts;
  starts.push_back(RealVector::Constant(n, 1.0 / static_cast<double>(n)));
  RealVector d = rho.diagonal_entries().cwiseMax(0.0);
  starts.push_back(d / d.sum());
  for (const RealVector& w : warm_starts) {
    if (w.size() != n) throw Error(ErrorKind::DimensionMismatch, "warm start has the wrong length");
    starts.push_back(w);
  }
  std::mt19937_64 rng(cfg.seed);
  while (std::ssize(starts) < cfg.restarts) starts.push_back(dirichlet_one(n, rng));

  NelderMeadOptions nm;
  nm.max_iters = cfg.max_iters;
  nm.ftol = cfg.convergence_tol;

  bool have_best = false;
  NelderMeadResult best;
  for (const RealVector& s : starts) {
    NelderMeadResult r = nelder_mead(objective, chart.from_simplex(s), nm);
    if (!have_best || r.value < best.value) {
      best = std::move(r);
      have_best = true;
    }
  }

  chart.to_simplex(best.x, q);
  result.argmin = Eigen::Map<const RealVector>(q.data(), n);
  result.value = best.value;
  result.converged = best.converged;
  result.at_boundary = result.argmin.minCoeff() < 1e-8;
  result.evaluations = evaluations;
  return result;
}

namespace {

void for_each_composition(int steps, Index parts, std::vector<int>& counts, Index at,
                          const std::function<void(const std::vector<int>&)>& visit) {
  if (at == parts - 1) {
    counts[static_cast<std::size_t>(at)] = steps;
    visit(counts);
    return;
  }
  for (int k = 0; k <= steps; ++k) {
    counts[static_cast<std::size_t>(at)] = k;
    for_each_composition(steps - k, parts, counts, at + 1, visit);
  }
}

}  // namespace

double oracle_grid(const DensityMatrix& rho, const AlphaZ& p, int steps) {
  const Index n = rho.dim();
  if (n > 4) throw Error(ErrorKind::DimensionTooLarge, "grid oracle supports dimension <= 4, got " + std::to_string(n));
  if (steps < 50) throw Error(ErrorKind::InvalidParameter, "grid oracle needs steps >= 50");
  if (p.alpha() == 1.0) throw Error(ErrorKind::InvalidParameter, "alpha must differ from 1");

  const Tolerances& tol = rho.tolerances();
  const ComplexMatrix rho_factor = rho.power_factor(p.alpha() / p.z());
  const RealVector rho_diag = rho.diagonal_entries();
  const double diag_cut = tol.support_cutoff * rho_diag.cwiseAbs().maxCoeff();

  // +inf where σ would not cover the support of ρ (α > 1 with a zero weight
  // on an occupied basis state).
  auto evaluate = [&](const std::vector<double>& q) {
    if (p.alpha() > 1.0)
      for (Index i = 0; i < n; ++i)
        if (q[static_cast<std::size_t>(i)] <= 0.0 && rho_diag[i] > diag_cut)
          return std::numeric_limits<double>::infinity();
    return divergence_incoherent(rho_factor, q, p, tol);
  };

  std::vector<double> best_q(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> counts(static_cast<std::size_t>(n));
  std::vector<double> q(static_cast<std::size_t>(n));
  for_each_composition(steps, n, counts, 0, [&](const std::vector<int>& c) {
    for (std::size_t i = 0; i < c.size(); ++i) q[i] = static_cast<double>(c[i]) / steps;
    const double v = evaluate(q);
    if (v < best) {
      best = v;
      best_q = q;
    }
  });

  // Pattern search: move mass δ between coordinate pairs, halving δ when no
  // move improves.
  double delta = 1.0 / steps;
  std::vector<double> trial(best_q);
  for (int guard = 0; delta > 1e-14 && guard < 200000; ++guard) {
    bool improved = false;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        if (i == j || best_q[static_cast<std::size_t>(j)] < delta) continue;
        trial = best_q;
        trial[static_cast<std::size_t>(i)] += delta;
        trial[static_cast<std::size_t>(j)] -= delta;
        const double v = evaluate(trial);
        if (v < best) {
          best = v;
          best_q = trial;
          improved = true;
        }
      }
    if (!improved) delta *= 0.5;
  }
  return best;
}

}  // namespace gramq
