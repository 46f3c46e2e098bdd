#include "gramq/quantifiers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <string>

#include "gramq/error.hpp"
#include "gramq/simplex_search.hpp"

namespace gramq {

std::string_view to_string(Quantifier q) {
  switch (q) {
    case Quantifier::Qaz: return "Qaz";
    case Quantifier::Qaz_normalized: return "Qaz_normalized";
    case Quantifier::Ql1: return "Ql1";
    case Quantifier::Qcomm: return "Qcomm";
    case Quantifier::Qbig: return "Qbig";
    case Quantifier::QHol: return "QHol";
    case Quantifier::QFS_ref: return "QFS_ref";
    case Quantifier::Qclon_ref: return "Qclon_ref";
  }
  return "";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::generic_eq3: return "generic_eq3";
    case Method::optimizer: return "optimizer";
    case Method::oracle: return "oracle";
    case Method::reference_constant: return "reference_constant";
    case Method::limit: return "limit";
  }
  return "";
}

Quantifier parse_quantifier(std::string_view name) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
  };
  const std::string wanted = lower(name);
  for (Quantifier q : {Quantifier::Qaz, Quantifier::Qaz_normalized, Quantifier::Ql1, Quantifier::Qcomm,
                       Quantifier::Qbig, Quantifier::QHol, Quantifier::QFS_ref, Quantifier::Qclon_ref})
    if (lower(to_string(q)) == wanted) return q;
  throw Error(ErrorKind::UnknownName, "unknown quantifier '" + std::string(name) + "'");
}

std::string_view units(Quantifier q, Method m) {
  if (q == Quantifier::QHol) return "bits";
  if (m == Method::limit) return "nats";
  return "none";
}

QuantumnessValue quantumness_detailed(const Ensemble& e, const AlphaZ& p, const OptimizerConfig& cfg) {
  const GramMatrix g = gram(e);
  const double alpha = p.alpha();
  if (std::abs(alpha - 1.0) < kAlphaOneWindow) return {coherence_limit_alpha1(g), Method::limit};
  if (p.z() == 1.0 && alpha > 0.0 && alpha <= 2.0) return {coherence_closed_z1(g, alpha), Method::generic_eq3};
  const CoherenceResult r = coherence_optimized(g, p, cfg);
  return {r.value, Method::optimizer, r.converged};
}

double quantumness(const Ensemble& e, const AlphaZ& p, const OptimizerConfig& cfg) {
  return quantumness_detailed(e, p, cfg).value;
}

double quantumness_normalized(const Ensemble& e, const AlphaZ& p, const OptimizerConfig& cfg) {
  return quantumness(e, p, cfg) / static_cast<double>(e.size());
}

double closed_form_reference(CanonicalName name, double alpha, double x) {
  if (!(alpha > 0.0 && alpha <= 2.0) || alpha == 1.0)
    throw Error(ErrorKind::ParameterOutOfRange, "closed forms hold for alpha in (0,1)u(1,2], got " + std::to_string(alpha));
  const double a = alpha;
  switch (name) {
    case CanonicalName::b92:
      if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::ParameterOutOfRange, "B92 overlap must lie in [0, 1]");
      return (std::pow(2.0, -1.0 / a) * std::pow(std::pow(1.0 - x, a) + std::pow(1.0 + x, a), 1.0 / a) - 1.0) /
             (a - 1.0);
    case CanonicalName::diag:
      return (std::pow(2.0, (a - 1.0) / a) * (std::pow(1.0 + std::pow(2.0, a - 1.0), 1.0 / a) + 1.0) - 3.0) /
             (3.0 * (a - 1.0));
    case CanonicalName::trine:
      return (std::pow(2.0 / 3.0, (1.0 - a) / a) - 1.0) / (a - 1.0);
    case CanonicalName::bb84:
    case CanonicalName::tetrad:
      return (std::pow(2.0, (a - 1.0) / a) - 1.0) / (a - 1.0);
    case CanonicalName::six:
      return (std::pow(3.0, (a - 1.0) / a) - 1.0) / (a - 1.0);
  }
  throw Error(ErrorKind::UnknownName, "unknown canonical ensemble");
}

double q_l1(const Ensemble& e) {
  double total = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = 0; j < e.size(); ++j)
      if (i != j) total += std::sqrt(e[i].p * e[j].p) * std::abs(e[i].state.inner(e[j].state));
  return total;
}

namespace {

// -Tr([ρ_i, ρ_j]^2) for every ordered pair, weighted by w(p_i, p_j).
template <class Weight>
double commutator_sum(const Ensemble& e, Weight w) {
  std::vector<ComplexMatrix> proj;
  proj.reserve(e.size());
  for (const Member& m : e.members()) proj.push_back(m.state.projector());
  double total = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (i == j) continue;
      const ComplexMatrix c = proj[i] * proj[j] - proj[j] * proj[i];
      total -= w(e[i].p, e[j].p) * (c * c).trace().real();
    }
  return total;
}

}  // namespace

double q_commutator_weighted(const Ensemble& e) {
  return commutator_sum(e, [](double a, double b) { return std::sqrt(a * b); });
}

double q_commutator(const Ensemble& e) {
  return commutator_sum(e, [](double a, double b) { return a * b; });
}

double holevo_chi(const Ensemble& e) {
  return von_neumann_entropy(DensityMatrix(e.average_state()), LogBase::two);
}

bool Povm::is_valid(double tol) const {
  if (elements.empty()) return false;
  const Index d = elements.front().rows();
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (const ComplexMatrix& m : elements) {
    if (m.rows() != d || m.cols() != d || hermiticity_defect(m) > tol) return false;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) return false;
    total += m;
  }
  return max_abs(total - ComplexMatrix::Identity(d, d)) <= tol;
}

Povm rank_one_povm(std::span<const ComplexVector> vectors) {
  if (vectors.empty()) throw Error(ErrorKind::InvalidParameter, "POVM needs at least one vector");
  const Index d = vectors.front().size();
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (const ComplexVector& v : vectors) a += v * v.adjoint();
  const SpectralDecomposition s = eigh(a);
  if (s.rank < d) throw Error(ErrorKind::InvalidParameter, "POVM vectors do not span the space");
  const ComplexMatrix root_inv = mat_power_support(s, -0.5);
  Povm out;
  for (const ComplexVector& v : vectors) {
    const ComplexVector w = root_inv * v;
    out.elements.push_back(w * w.adjoint());
  }
  return out;
}

namespace {

double mutual_information_bits(const std::vector<double>& p, const Eigen::MatrixXd& joint) {
  double h_joint = 0.0, h_out = 0.0;
  for (Index k = 0; k < joint.cols(); ++k) {
    double col = 0.0;
    for (Index i = 0; i < joint.rows(); ++i) {
      const double v = joint(i, k);
      if (v > 0.0) h_joint -= v * std::log(v);
      col += v;
    }
    if (col > 0.0) h_out -= col * std::log(col);
  }
  return (shannon_entropy(p) + h_out - h_joint) / std::log(2.0);
}

// q_ik = p_i |<w_k|ψ_i>|^2 where M_k = |w_k><w_k|.
double mutual_information_rank_one(const Ensemble& e, const std::vector<double>& p,
                                   std::span<const ComplexVector> w) {
  Eigen::MatrixXd joint(static_cast<Index>(e.size()), std::ssize(w));
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t k = 0; k < w.size(); ++k)
      joint(static_cast<Index>(i), static_cast<Index>(k)) = p[i] * std::norm(w[k].dot(e[i].state.amplitudes()));
  return mutual_information_bits(p, joint);
}

}  // namespace

double mutual_information(const Ensemble& e, const Povm& m) {
  const std::vector<double> p = e.probabilities();
  Eigen::MatrixXd joint(static_cast<Index>(e.size()), static_cast<Index>(m.outcomes()));
  for (std::size_t i = 0; i < e.size(); ++i) {
    const ComplexVector& psi = e[i].state.amplitudes();
    for (std::size_t k = 0; k < m.outcomes(); ++k)
      joint(static_cast<Index>(i), static_cast<Index>(k)) =
          p[i] * std::max(0.0, psi.dot(m.elements[k] * psi).real());
  }
  return mutual_information_bits(p, joint);
}

AccessibleInfoResult accessible_info(const Ensemble& e, int outcomes_max, const OptimizerConfig& cfg) {
  if (outcomes_max < 2) throw Error(ErrorKind::InvalidParameter, "accessible_info needs outcomes_max >= 2");
  if (cfg.restarts <= 0) throw Error(ErrorKind::InvalidParameter, "restarts must be positive");
  const Index d = e.dim();
  const std::vector<double> p = e.probabilities();
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal(0.0, 1.0);

  AccessibleInfoResult best;
  best.bits = -1.0;
  for (int m = 2; m <= outcomes_max; ++m) {
    if (m < d) continue;
    auto unpack = [d, m](const RealVector& x) {
      std::vector<ComplexVector> v(static_cast<std::size_t>(m), ComplexVector(d));
      for (int k = 0; k < m; ++k)
        for (Index j = 0; j < d; ++j) {
          const Index at = 2 * (k * d + j);
          v[static_cast<std::size_t>(k)][j] = Complex(x[at], x[at + 1]);
        }
      return v;
    };
    auto measured = [&](const RealVector& x, std::vector<ComplexVector>& w) {
      const std::vector<ComplexVector> v = unpack(x);
      ComplexMatrix a = ComplexMatrix::Zero(d, d);
      for (const ComplexVector& vk : v) a += vk * vk.adjoint();
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
      if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 1e-12 * es.eigenvalues().maxCoeff())
        return false;
      const ComplexMatrix root_inv = es.operatorInverseSqrt();
      w.resize(v.size());
      for (std::size_t k = 0; k < v.size(); ++k) w[k] = root_inv * v[k];
      return true;
    };
    std::vector<ComplexVector> w;
    auto objective = [&](const RealVector& x) {
      if (!measured(x, w)) return 0.0;
      return -mutual_information_rank_one(e, p, w);
    };

    NelderMeadOptions nm;
    nm.max_iters = std::max(cfg.max_iters, 400 * static_cast<int>(2 * d * m));
    nm.ftol = cfg.convergence_tol;
    nm.initial_step = 0.3;
    for (int r = 0; r < cfg.restarts; ++r) {
      RealVector x0(2 * d * m);
      for (Index i = 0; i < x0.size(); ++i) x0[i] = normal(rng);
      const NelderMeadResult res = nelder_mead(objective, x0, nm);
      if (-res.value > best.bits) {
        best.bits = -res.value;
        best.converged = res.converged;
        const std::vector<ComplexVector> v = unpack(res.x);
        best.povm = rank_one_povm(v);
      }
    }
  }
  return best;
}

QHolResult q_hol_detailed(const Ensemble& e, const OptimizerConfig& cfg) {
  QHolResult r;
  r.chi = holevo_chi(e);
  const AccessibleInfoResult acc = accessible_info(e, static_cast<int>(e.dim() * e.dim()), cfg);
  r.accessible = acc.bits;
  r.value = r.chi - r.accessible;
  r.converged = acc.converged;
  return r;
}

double q_hol(const Ensemble& e, const OptimizerConfig& cfg) {
  return q_hol_detailed(e, cfg).value;
}

std::map<Quantifier, double> reference_constants(CanonicalName name) {
  struct Row {
    double l1, fs, clon, hol, comm, big;
  };
  Row row{};
  switch (name) {
    case CanonicalName::b92: row = {0.71, 0.07, 0.02, 0.20, 0.25, 0.50}; break;
    case CanonicalName::diag: row = {0.94, 0.13, 0.10, 0.25, 0.22, 0.67}; break;
    case CanonicalName::trine: row = {1.00, 0.25, 0.32, 0.42, 0.25, 0.75}; break;
    case CanonicalName::bb84: row = {1.41, 0.25, 0.32, 0.50, 0.25, 1.00}; break;
    case CanonicalName::tetrad: row = {1.73, 0.33, 0.34, 0.59, 0.33, 1.33}; break;
    case CanonicalName::six: row = {2.83, 0.33, 0.35, 0.67, 0.33, 2.00}; break;
  }
  return {{Quantifier::Ql1, row.l1},   {Quantifier::QFS_ref, row.fs}, {Quantifier::Qclon_ref, row.clon},
          {Quantifier::QHol, row.hol}, {Quantifier::Qcomm, row.comm}, {Quantifier::Qbig, row.big}};
}

}  // namespace gramq
