#include "gramq/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "gramq/coherence.hpp"
#include "gramq/ensemble_io.hpp"
#include "gramq/quantifiers.hpp"
#include "gramq/random.hpp"

namespace gramq {

namespace {

std::string dump(const ComplexMatrix& m) {
  std::ostringstream out;
  out << std::setprecision(17) << m;
  return out.str();
}

class SuiteRunner {
 public:
  SuiteRunner(std::vector<SuiteReport>& reports, std::string name) : reports_(reports) {
    report_.name = std::move(name);
    start_ = std::chrono::steady_clock::now();
  }
  ~SuiteRunner() {
    report_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    reports_.push_back(std::move(report_));
  }

  void check(bool ok, const std::function<std::string()>& describe) {
    ++report_.cases;
    if (ok) return;
    ++report_.failures;
    if (report_.failing_inputs.size() < 5) report_.failing_inputs.push_back(describe());
  }

 private:
  std::vector<SuiteReport>& reports_;
  SuiteReport report_;
  std::chrono::steady_clock::time_point start_;
};

ComplexMatrix random_hermitian(Index dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  return hermitian_part(g);
}

Index pick(Rng& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

struct Params {
  double alpha, z;
};

const Params kValidParams[] = {{0.5, 1.0}, {0.5, 0.75}, {0.3, 0.9}, {1.5, 1.0}, {1.5, 0.75}, {2.0, 2.0}};

}  // namespace

std::vector<SuiteReport> run_verify(const VerifyOptions& options) {
  std::vector<SuiteReport> reports;
  Rng rng(options.seed);
  const int scale = options.quick ? 1 : 4;
  OptimizerConfig cfg;
  cfg.seed = options.seed;
  cfg.restarts = 6;

  std::vector<Ensemble> ensembles;
  for (CanonicalName c : kCanonicalNames) ensembles.push_back(canonical(c));
  for (const Ensemble& e : options.extra_ensembles) ensembles.push_back(e);

  {
    SuiteRunner s(reports, "eigh_reconstruction");
    for (int k = 0; k < 50 * scale; ++k) {
      const ComplexMatrix m = random_hermitian(pick(rng, 1, 8), rng);
      const SpectralDecomposition d = eigh(m);
      const Index n = m.rows();
      bool ok = max_abs(d.reconstruct() - m) < 1e-10 &&
                max_abs(d.eigenvectors.adjoint() * d.eigenvectors - ComplexMatrix::Identity(n, n)) < 1e-10;
      for (Index i = 1; i < n; ++i) ok = ok && d.eigenvalues[i - 1] >= d.eigenvalues[i];
      s.check(ok, [&] { return dump(m); });
    }
  }
  {
    SuiteRunner s(reports, "power_calculus");
    for (int k = 0; k < 25 * scale; ++k) {
      const Index n = pick(rng, 2, 6);
      const DensityMatrix rho = random_density(n, rng, pick(rng, 1, n));
      const double a = uniform(rng, 0.1, 2.0), b = uniform(rng, 0.1, 2.0);
      const ComplexMatrix composed = rho.power(a) * rho.power(b);
      s.check(max_abs(composed - rho.power(a + b)) < 1e-9, [&] { return dump(rho.matrix()); });
      const ComplexMatrix proj = rho.matrix() * rho.power(-1.0);
      s.check(max_abs(proj - rho.spectrum().support_projector()) < 1e-9, [&] { return dump(rho.matrix()); });
    }
  }
  {
    SuiteRunner s(reports, "gram_invariants");
    std::vector<Ensemble> cases = ensembles;
    for (int k = 0; k < 125 * scale; ++k)
      cases.push_back(random_ensemble(static_cast<std::size_t>(pick(rng, 1, 8)), pick(rng, 1, 6), rng));
    for (const Ensemble& e : cases) {
      bool ok = true;
      try {
        const GramMatrix g = gram(e);
        ok = std::abs(g.matrix().trace().real() - 1.0) < 1e-10 && g.spectrum().eigenvalues.minCoeff() >= -1e-10;
        for (std::size_t i = 0; i < e.size(); ++i)
          ok = ok && std::abs(g.matrix()(static_cast<Index>(i), static_cast<Index>(i)) - e[i].p) < 1e-10;
      } catch (const std::exception&) {
        ok = false;
      }
      s.check(ok, [&] { return serialize_ensemble(e); });
    }
  }
  {
    SuiteRunner s(reports, "unitary_invariance");
    std::vector<Ensemble> cases = ensembles;
    for (int k = 0; k < 10 * scale; ++k)
      cases.push_back(random_ensemble(static_cast<std::size_t>(pick(rng, 2, 4)), pick(rng, 2, 4), rng));
    for (const Ensemble& e : cases) {
      const ComplexMatrix u = random_unitary(e.dim(), rng);
      const Ensemble ue = apply_unitary(e, u);
      bool ok = max_abs(gram_matrix(ue) - gram_matrix(e)) < 1e-10;
      for (const Params& p : {Params{0.5, 1.0}, Params{2.0, 1.0}})
        ok = ok && std::abs(quantumness(ue, AlphaZ(p.alpha, p.z)) - quantumness(e, AlphaZ(p.alpha, p.z))) < 1e-9;
      s.check(ok, [&] { return serialize_ensemble(e) + "U=\n" + dump(u); });
    }
  }
  {
    SuiteRunner s(reports, "tensor_hadamard");
    for (int k = 0; k < 25 * scale; ++k) {
      const Ensemble e = random_ensemble(static_cast<std::size_t>(pick(rng, 1, 4)), pick(rng, 1, 3), rng);
      const Ensemble f = random_ensemble(static_cast<std::size_t>(pick(rng, 1, 4)), pick(rng, 1, 3), rng);
      s.check(max_abs(gram_matrix(tensor(e, f)) - kron(gram_matrix(e), gram_matrix(f))) < 1e-10,
              [&] { return serialize_ensemble(e) + serialize_ensemble(f); });
      const Ensemble g = random_ensemble(e.size(), pick(rng, 1, 3), rng);
      const HadamardProduct h = hadamard_product(e, g);
      const ComplexMatrix expected = gram_matrix(e).cwiseProduct(gram_matrix(g));
      s.check(max_abs(h.normalization * gram_matrix(h.ensemble) - expected) < 1e-10,
              [&] { return serialize_ensemble(e) + serialize_ensemble(g); });
    }
  }
  {
    SuiteRunner s(reports, "f_bounds");
    for (int k = 0; k < 25 * scale; ++k) {
      const Index n = pick(rng, 1, 4);
      const DensityMatrix rho = random_density(n, rng, pick(rng, 1, n));
      const DensityMatrix sigma = random_density(n, rng);
      const double lo_alpha = uniform(rng, 0.05, 0.95), hi_alpha = uniform(rng, 1.05, 3.0);
      const double z = uniform(rng, 0.2, 3.0);
      s.check(f_alpha_z(rho, sigma, lo_alpha, z) <= 1.0 + 1e-9, [&] { return dump(rho.matrix()) + "\n" + dump(sigma.matrix()); });
      s.check(f_alpha_z(rho, sigma, hi_alpha, z) >= 1.0 - 1e-9, [&] { return dump(rho.matrix()) + "\n" + dump(sigma.matrix()); });
      for (const double a : {lo_alpha, hi_alpha}) {
        const AlphaZ p(a, z);
        s.check(divergence(rho, sigma, p) >= -1e-9, [&] { return dump(rho.matrix()) + "\n" + dump(sigma.matrix()); });
      }
      const DensityMatrix rho2 = random_density(2, rng), sigma2 = random_density(2, rng);
      const DensityMatrix joint_rho(kron(rho.matrix(), rho2.matrix()));
      const DensityMatrix joint_sigma(kron(sigma.matrix(), sigma2.matrix()));
      const double lhs = std::pow(f_alpha_z(joint_rho, joint_sigma, hi_alpha, z), 1.0 / hi_alpha);
      const double rhs = std::pow(f_alpha_z(rho, sigma, hi_alpha, z), 1.0 / hi_alpha) *
                         std::pow(f_alpha_z(rho2, sigma2, hi_alpha, z), 1.0 / hi_alpha);
      s.check(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)),
              [&] { return dump(rho.matrix()) + "\n" + dump(sigma.matrix()); });
    }
  }
  {
    SuiteRunner s(reports, "faithfulness");
    for (int k = 0; k < 4 * scale; ++k) {
      const Index d = pick(rng, 2, 4);
      const Index n = pick(rng, 2, d);
      const ComplexMatrix u = random_unitary(d, rng);
      const RealVector probs = random_simplex_point(n, rng);
      std::vector<Member> orth;
      for (Index i = 0; i < n; ++i) orth.push_back({probs[i], PureState::normalized(u.col(i))});
      const Ensemble classical(std::move(orth), "orthogonal");
      const Ensemble quantum = random_ensemble(static_cast<std::size_t>(n), d, rng);
      for (const Params& p : kValidParams) {
        const AlphaZ az(p.alpha, p.z);
        const double qc = quantumness(classical, az, cfg);
        const double qq = quantumness(quantum, az, cfg);
        s.check(std::abs(qc) <= 1e-9, [&] { return serialize_ensemble(classical); });
        s.check(qq > 1e-9, [&] { return serialize_ensemble(quantum); });
      }
    }
  }
  {
    SuiteRunner s(reports, "subadditivity");
    for (int k = 0; k < 5 * scale; ++k) {
      const Ensemble e = random_ensemble(static_cast<std::size_t>(pick(rng, 1, 3)), pick(rng, 1, 3), rng);
      const Ensemble f = random_ensemble(static_cast<std::size_t>(pick(rng, 1, 3)), pick(rng, 1, 3), rng);
      const bool case_ii = k % 2 == 1;
      const double alpha = case_ii ? uniform(rng, 1.05, 2.0) : uniform(rng, 0.1, 0.9);
      const double z = case_ii ? 1.0 : uniform(rng, std::max(alpha, 1.0 - alpha), 1.5);
      const AlphaZ p(alpha, z);
      const Ensemble ef = tensor(e, f);
      double lhs = 0.0, rhs = 0.0;
      if (z == 1.0) {
        lhs = quantumness_normalized(ef, p);
        rhs = quantumness_normalized(e, p) + quantumness_normalized(f, p);
      } else {
        const CoherenceResult ce = coherence_optimized(gram(e), p, cfg);
        const CoherenceResult cf = coherence_optimized(gram(f), p, cfg);
        const RealVector product =
            kron(ComplexVector(ce.argmin.cast<Complex>()), ComplexVector(cf.argmin.cast<Complex>())).real();
        OptimizerConfig joint = cfg;
        joint.restarts = 3;
        const CoherenceResult cef = coherence_optimized(gram(ef), p, joint, std::span(&product, 1));
        lhs = cef.value / static_cast<double>(ef.size());
        rhs = ce.value / static_cast<double>(e.size()) + cf.value / static_cast<double>(f.size());
      }
      s.check(lhs <= rhs + 1e-9, [&] {
        return "alpha=" + format_double(alpha) + " z=" + format_double(z) + "\n" + serialize_ensemble(e) +
               serialize_ensemble(f);
      });
    }
  }
  {
    SuiteRunner s(reports, "optimizer_vs_closed_form");
    for (int k = 0; k < 5 * scale; ++k) {
      const DensityMatrix rho = random_density(pick(rng, 2, 4), rng);
      for (double a : {0.3, 0.8, 1.5, 2.0}) {
        const double opt = coherence_optimized(rho, AlphaZ(a, 1.0), cfg).value;
        const double closed = coherence_closed_z1(rho, a);
        s.check(std::abs(opt - closed) < 1e-6, [&] { return "alpha=" + format_double(a) + "\n" + dump(rho.matrix()); });
      }
    }
  }
  if (!options.quick) {
    SuiteRunner s(reports, "optimizer_vs_oracle");
    for (int k = 0; k < 4; ++k) {
      const DensityMatrix rho = random_density(pick(rng, 2, 3), rng);
      for (const Params& p : kValidParams) {
        const AlphaZ az(p.alpha, p.z);
        const double opt = coherence_optimized(rho, az, cfg).value;
        const double grid = oracle_grid(rho, az, 200);
        s.check(std::abs(opt - grid) < 5e-4, [&] {
          return "alpha=" + format_double(p.alpha) + " z=" + format_double(p.z) + "\n" + dump(rho.matrix());
        });
      }
    }
  }
  return reports;
}

bool print_verify_report(const std::vector<SuiteReport>& reports, std::ostream& out) {
  bool all = true;
  int cases = 0, failures = 0;
  for (const SuiteReport& r : reports) {
    out << (r.passed() ? "PASS " : "FAIL ") << std::left << std::setw(26) << r.name << std::right << std::setw(6)
        << r.cases << " cases " << std::setw(4) << r.failures << " failures  " << std::fixed << std::setprecision(2)
        << r.seconds << " s\n";
    out.unsetf(std::ios::fixed);
    for (const std::string& input : r.failing_inputs) out << "  replay input:\n" << input << '\n';
    all = all && r.passed();
    cases += r.cases;
    failures += r.failures;
  }
  out << (all ? "all suites passed" : "some suites failed") << " (" << cases << " cases, " << failures
      << " failures)\n";
  return all;
}

}  // namespace gramq
