// Acceptance gate: one PASS/FAIL line per criterion, each with its runtime budget.
// Exit status is non-zero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "gramq/crossings.hpp"
#include "gramq/quantifiers.hpp"
#include "gramq/random.hpp"
#include "gramq/sweep.hpp"
#include "oracles.hpp"

using namespace gramq;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string name(CanonicalName n) { return std::string(to_string(n)); }

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    o.require(false, fmt("runtime %.2f s exceeds budget %.0f s", secs, budget_s));
  }
  if (!o.ok) ++failures;
  std::printf("%s  [%d] %-44s %7.2f s / %3.0f s%s%s\n", o.ok ? "PASS" : "FAIL", id, title, secs, budget_s,
              o.detail.empty() ? "" : "  -- ", o.detail.c_str());
  std::fflush(stdout);
}

// 40 orders in (0,1)∪(1,2], none at 1.
std::vector<double> regression_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 40; ++k) g.push_back(0.05 * k - 0.025);
  return g;
}

Outcome closed_forms() {
  Outcome o;
  double worst = 0;
  for (CanonicalName n : kCanonicalNames) {
    const Ensemble e = canonical(n);
    for (double a : regression_grid()) {
      const QuantumnessValue v = quantumness_detailed(e, AlphaZ(a, 1.0));
      const double err = std::abs(v.value - oracle::curve(name(n), a));
      worst = std::max(worst, err);
      o.require(v.method == Method::generic_eq3, name(n) + " did not use the eigendecomposition pipeline");
      o.require(err < 1e-9, name(n) + fmt(" alpha=%.3f error %.2e", a, err));
    }
  }
  if (o.ok) o.detail = fmt("240 points, max |error| %.1e", worst);
  return o;
}

Outcome limits() {
  Outcome o;
  const std::map<CanonicalName, double> reference{{CanonicalName::b92, 0.28},   {CanonicalName::diag, 0.46},
                                                  {CanonicalName::trine, 0.41}, {CanonicalName::bb84, 0.69},
                                                  {CanonicalName::tetrad, 0.69}, {CanonicalName::six, 1.10}};
  double worst_exact = 0;
  for (auto [n, expected] : reference) {
    const QuantumnessValue v = quantumness_detailed(canonical(n), AlphaZ(1.0, 1.0));
    const double exact = oracle::limit(name(n));
    worst_exact = std::max(worst_exact, std::abs(v.value - exact));
    o.require(v.method == Method::limit, name(n) + " not evaluated as a limit");
    o.require(std::abs(v.value - exact) < 1e-12, name(n) + fmt(" limit %.15f vs exact %.15f", v.value, exact));
    o.require(std::abs(v.value - expected) <= 0.005, name(n) + fmt(" limit %.4f vs reference %.2f", v.value, expected));
    // Approaching from both sides through the generic pipeline.
    for (double h : {1e-5, -1e-5})
      o.require(std::abs(quantumness(canonical(n), AlphaZ(1 + h)) - exact) < 1e-4,
                name(n) + fmt(" one-sided value at 1%+.0e off", h));
  }
  if (o.ok) o.detail = fmt("max |limit - analytic| %.1e", worst_exact);
  return o;
}

Outcome table1() {
  Outcome o;
  const double r2 = std::numbers::sqrt2, r3 = std::numbers::sqrt3;
  // Exact values from the overlaps: Ql1 = Σ_{i≠j} √(p_i p_j)|<ψ_i|ψ_j>|; commutators 2(c - c²).
  const std::map<CanonicalName, std::array<double, 3>> exact{
      {CanonicalName::b92, {1 / r2, 0.25, 0.5}},
      {CanonicalName::diag, {2 * r2 / 3, 2.0 / 9.0, 2.0 / 3.0}},
      {CanonicalName::trine, {1.0, 0.25, 0.75}},
      {CanonicalName::bb84, {r2, 0.25, 1.0}},
      {CanonicalName::tetrad, {r3, 1.0 / 3.0, 4.0 / 3.0}},
      {CanonicalName::six, {2 * r2, 1.0 / 3.0, 2.0}}};
  OptimizerConfig cfg;
  cfg.restarts = 32;
  double worst_hol = 0;
  for (CanonicalName n : kCanonicalNames) {
    const Ensemble e = canonical(n);
    const auto ref = reference_constants(n);
    const auto& x = exact.at(n);
    const double got[3] = {q_l1(e), q_commutator(e), q_commutator_weighted(e)};
    const Quantifier qs[3] = {Quantifier::Ql1, Quantifier::Qcomm, Quantifier::Qbig};
    for (int k = 0; k < 3; ++k) {
      const std::string q(to_string(qs[k]));
      o.require(std::abs(got[k] - x[static_cast<std::size_t>(k)]) < 1e-12, name(n) + " " + q + " differs from exact");
      o.require(std::abs(ref.at(qs[k]) - got[k]) <= 0.005,
                name(n) + " " + q + fmt(" computed %.4f vs table %.2f", got[k], ref.at(qs[k])));
    }
    const double hol = q_hol(e, cfg);
    worst_hol = std::max(worst_hol, std::abs(hol - ref.at(Quantifier::QHol)));
    o.require(std::abs(hol - ref.at(Quantifier::QHol)) <= 0.01,
              name(n) + fmt(" QHol %.4f vs table %.2f", hol, ref.at(Quantifier::QHol)));
  }
  if (o.ok) o.detail = fmt("max |QHol - table| %.4f", worst_hol);
  return o;
}

Outcome crossings() {
  Outcome o;
  CrossingOptions opt;
  opt.include_computed = false;
  const std::vector<CrossingResult> rs = find_crossings(opt);
  int checked = 0;
  for (const CrossingResult& r : rs) {
    const std::string id = r.ensemble + " vs " + r.rhs;
    o.require(r.alpha_root.has_value(), id + " has no bracket");
    if (!r.alpha_root) continue;
    o.require(std::abs(r.residual) < 1e-8, id + fmt(" residual %.1e", r.residual));
    double tol = 0.02;
    if (r.rhs_source == "curve" || r.rhs == "Ql1" && r.ensemble == "trine") tol = 0.01;
    if (r.ensemble == "bb84" && r.rhs == "Qbig") tol = 1e-6;
    const double want = r.ensemble == "bb84" && r.rhs == "Qbig" ? 0.5 : *r.reference_alpha;
    o.require(std::abs(*r.alpha_root - want) <= tol, id + fmt(" root %.4f vs %.2f", *r.alpha_root, want));
    ++checked;
  }
  o.require(checked == 13, fmt("expected 13 roots, found %.0f", checked));
  if (o.ok) o.detail = fmt("%.0f roots", checked);
  return o;
}

Outcome special_values() {
  Outcome o;
  const double target = std::sqrt(1.5) - 1;
  o.require(std::abs(quantumness(canonical(CanonicalName::b92), AlphaZ(2.0)) - target) < 1e-10, "B92 at alpha=2");
  o.require(std::abs(quantumness(canonical(CanonicalName::trine), AlphaZ(2.0)) - target) < 1e-10, "trine at alpha=2");
  const Ensemble b = canonical(CanonicalName::bb84), t = canonical(CanonicalName::tetrad);
  for (double a : sweep_grid(SweepSpec{}))
    o.require(std::abs(quantumness(b, AlphaZ(a)) - quantumness(t, AlphaZ(a))) < 1e-10,
              fmt("bb84 != tetrad at alpha=%.2f", a));
  for (double a : regression_grid())
    o.require(std::abs(quantumness(b, AlphaZ(a)) - quantumness(t, AlphaZ(a))) < 1e-10,
              fmt("bb84 != tetrad at alpha=%.3f", a));
  return o;
}

Outcome properties() {
  Outcome o;
  Rng rng(20240611);
  std::uniform_int_distribution<int> small(1, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checks = 0;
  auto check = [&](bool cond, const std::string& what) {
    ++checks;
    o.require(cond, what);
  };
  OptimizerConfig cfg;
  cfg.restarts = 4;

  for (int k = 0; k < 500; ++k) {
    const Ensemble e = random_ensemble(1 + k % 8, 1 + k % 6, rng);
    const GramMatrix g = gram(e);
    bool diag_ok = true;
    for (std::size_t i = 0; i < e.size(); ++i)
      diag_ok = diag_ok && std::abs(g.matrix()(Index(i), Index(i)).real() - e[i].p) < 1e-10;
    check(std::abs(g.matrix().trace().real() - 1) < 1e-10 && g.spectrum().eigenvalues.minCoeff() >= 0 && diag_ok,
          "Gram invariants");
  }

  for (int k = 0; k < 60; ++k) {
    const Index d = 1 + small(rng);
    const Ensemble e = random_ensemble(static_cast<std::size_t>(small(rng)), d, rng);
    const Ensemble ue = apply_unitary(e, random_unitary(d, rng));
    check(max_abs(gram_matrix(ue) - gram_matrix(e)) < 1e-10, "Gram unitary invariance");
    for (auto [a, z] : {std::pair{0.5, 1.0}, {1.7, 1.0}, {0.6, 0.7}, {2.0, 2.0}})
      check(std::abs(quantumness(ue, AlphaZ(a, z), cfg) - quantumness(e, AlphaZ(a, z), cfg)) < 1e-9,
            fmt("quantumness unitary invariance at (%.1f, %.1f)", a, z));
  }

  for (int k = 0; k < 100; ++k) {
    const Ensemble e = random_ensemble(static_cast<std::size_t>(small(rng)), small(rng), rng);
    const Ensemble f = random_ensemble(static_cast<std::size_t>(small(rng)), small(rng), rng);
    check(max_abs(gram_matrix(tensor(e, f)) - kron(gram_matrix(e), gram_matrix(f))) < 1e-10, "tensor Gram");
    const Ensemble h = random_ensemble(e.size(), small(rng), rng);
    const HadamardProduct hp = hadamard_product(e, h);
    check(max_abs(hp.normalization * gram_matrix(hp.ensemble) - gram_matrix(e).cwiseProduct(gram_matrix(h))) < 1e-10,
          "Hadamard Gram");
  }

  for (int k = 0; k < 200; ++k) {
    const Index n = small(rng);
    const DensityMatrix rho = random_density(n, rng, 1 + static_cast<Index>(k) % n);
    const DensityMatrix sigma = random_density(n, rng);
    const double lo = 0.05 + 0.9 * unit(rng), hi = 1.05 + 1.95 * unit(rng), z = 0.2 + 2.8 * unit(rng);
    const double f_lo = f_alpha_z(rho, sigma, lo, z), f_hi = f_alpha_z(rho, sigma, hi, z);
    check(f_lo <= 1 + 1e-9, "f <= 1 for alpha < 1");
    check(f_hi >= 1 - 1e-9, "f >= 1 for alpha > 1");
    check(std::abs(f_lo - oracle::f_alpha_z(rho.matrix(), sigma.matrix(), lo, z)) < 1e-8, "f oracle (alpha<1)");
    check(divergence(rho, sigma, AlphaZ(lo, z)) >= -1e-9, "divergence >= 0 (alpha<1)");
    check(divergence(rho, sigma, AlphaZ(hi, z)) >= -1e-9, "divergence >= 0 (alpha>1)");
    const DensityMatrix rho2 = random_density(2, rng), sigma2 = random_density(2, rng);
    const double joint = f_alpha_z(DensityMatrix(kron(rho.matrix(), rho2.matrix())),
                                   DensityMatrix(kron(sigma.matrix(), sigma2.matrix())), hi, z);
    check(std::abs(joint - f_hi * f_alpha_z(rho2, sigma2, hi, z)) < 1e-8 * std::max(1.0, joint), "f multiplicative");
  }

  for (int k = 0; k < 20; ++k) {
    const Index d = 1 + small(rng);
    const Index n = 1 + static_cast<Index>(k) % d;
    const ComplexMatrix u = random_unitary(d, rng);
    const RealVector p = random_simplex_point(n, rng);
    std::vector<Member> members;
    for (Index i = 0; i < n; ++i) members.push_back({p[i], PureState::normalized(u.col(i))});
    const Ensemble classical(members);
    const Ensemble quantum = random_ensemble(static_cast<std::size_t>(std::max<Index>(n, 2)), d, rng);
    for (auto [a, z] : {std::pair{0.5, 1.0}, {0.4, 0.8}, {1.5, 1.0}, {1.5, 0.75}, {2.0, 2.0}}) {
      check(std::abs(quantumness(classical, AlphaZ(a, z), cfg)) <= 1e-9, "Q = 0 on orthogonal ensembles");
      check(quantumness(quantum, AlphaZ(a, z), cfg) > 1e-9, "Q > 0 on non-orthogonal ensembles");
    }
  }

  int violations = 0;
  OptimizerConfig sub_cfg;
  sub_cfg.restarts = 3;
  for (int k = 0; k < 100; ++k) {
    const Ensemble e = random_ensemble(static_cast<std::size_t>(small(rng)), small(rng), rng);
    const Ensemble f = random_ensemble(static_cast<std::size_t>(small(rng)), small(rng), rng);
    const Ensemble ef = tensor(e, f);
    const bool case_ii = k % 2 == 1;
    const double a = case_ii ? 1.05 + 0.95 * unit(rng) : 0.1 + 0.8 * unit(rng);
    const double z = case_ii ? 1.0 : std::max(a, 1 - a) + (1.5 - std::max(a, 1 - a)) * unit(rng);
    const AlphaZ p(a, z);
    double lhs, rhs;
    if (case_ii) {
      lhs = quantumness_normalized(ef, p);
      rhs = quantumness_normalized(e, p) + quantumness_normalized(f, p);
    } else {
      const CoherenceResult ce = coherence_optimized(gram(e), p, sub_cfg);
      const CoherenceResult cf = coherence_optimized(gram(f), p, sub_cfg);
      const RealVector product =
          kron(ComplexVector(ce.argmin.cast<Complex>()), ComplexVector(cf.argmin.cast<Complex>())).real();
      const CoherenceResult cef = coherence_optimized(gram(ef), p, sub_cfg, std::span(&product, 1));
      lhs = cef.value / static_cast<double>(ef.size());
      rhs = ce.value / static_cast<double>(e.size()) + cf.value / static_cast<double>(f.size());
    }
    if (!(lhs <= rhs + 1e-9)) ++violations;
    check(lhs <= rhs + 1e-9, fmt("subadditivity violated at alpha=%.3f z=%.3f by %.2e", a, z, lhs - rhs));
  }
  if (o.ok) o.detail = fmt("%.0f checks, %.0f subadditivity violations", checks, violations);
  return o;
}

Outcome optimizer_vs_oracle() {
  Outcome o;
  std::vector<std::pair<std::string, DensityMatrix>> cases;
  for (CanonicalName n : {CanonicalName::b92, CanonicalName::diag, CanonicalName::trine})
    cases.emplace_back(name(n), gram(canonical(n)));
  Rng rng(7);
  for (int k = 0; k < 2; ++k)
    cases.emplace_back("random", gram(random_ensemble(3, 2, rng)));
  cases.emplace_back("random2", gram(random_ensemble(2, 2, rng)));
  double worst = 0;
  for (const auto& [label, rho] : cases)
    for (auto [a, z] : {std::pair{0.5, 0.75}, {0.5, 1.0}, {1.5, 1.0}, {1.5, 0.75}, {2.0, 2.0}}) {
      const AlphaZ p(a, z);
      const double opt = coherence_optimized(rho, p).value;
      const double grid = oracle_grid(rho, p, 400);
      worst = std::max(worst, std::abs(opt - grid));
      o.require(std::abs(opt - grid) < 5e-4, label + fmt(" (%.2f, %.2f): gap %.2e", a, z, std::abs(opt - grid)));
    }
  if (o.ok) o.detail = fmt("%.0f cases, max gap %.1e", static_cast<double>(cases.size() * 5), worst);
  return o;
}

Outcome orderings() {
  Outcome o;
  std::vector<Ensemble> es;
  for (CanonicalName n : kCanonicalNames) es.push_back(canonical(n));
  const std::vector<SweepRow> rows = sweep(es, SweepSpec{});
  const std::size_t m = rows.size() / es.size();
  const double slack = 1e-9;
  for (std::size_t i = 0; i < m; ++i) {
    std::map<std::string, double> v;
    for (std::size_t k = 0; k < es.size(); ++k) v[rows[k * m + i].ensemble] = rows[k * m + i].value;
    const double a = rows[i].alpha;
    for (const auto& [n, q] : v) {
      o.require(v["b92"] <= q + slack, fmt("b92 not minimal at alpha=%.2f", a));
      o.require(v["six"] >= q - slack, fmt("six not maximal at alpha=%.2f", a));
    }
    o.require(v["b92"] <= v["trine"] + slack && v["trine"] <= v["bb84"] + slack &&
                  std::abs(v["bb84"] - v["tetrad"]) <= slack && v["tetrad"] <= v["six"] + slack,
              fmt("chain b92<=trine<=bb84=tetrad<=six fails at alpha=%.2f", a));
    o.require(v["b92"] <= v["diag"] + slack && v["diag"] <= v["bb84"] + slack,
              fmt("chain b92<=diag<=bb84 fails at alpha=%.2f", a));
  }
  if (o.ok) o.detail = fmt("%.0f grid points", static_cast<double>(m));
  return o;
}

}  // namespace

int main() {
  criterion(1, "closed-form regression", 1, closed_forms);
  criterion(2, "alpha -> 1 limits", 1, limits);
  criterion(3, "comparison table (computed columns)", 60, table1);
  criterion(4, "crossing points", 5, crossings);
  criterion(5, "special values", 1, special_values);
  criterion(6, "property suites", 120, properties);
  criterion(7, "optimizer vs grid oracle", 60, optimizer_vs_oracle);
  criterion(8, "curve orderings", 2, orderings);
  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
