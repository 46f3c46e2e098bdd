#include "gramq/crossings.hpp"

#include <cmath>
#include <map>

namespace gramq {

std::vector<double> bracket_roots(const std::function<double(double)>& g, const RootScan& scan) {
  std::vector<double> roots;
  const long n = std::lround((scan.hi - scan.lo) / scan.scan_step);
  double a = scan.lo, ga = g(a);
  if (ga == 0.0) roots.push_back(a);
  for (long k = 1; k <= n; ++k) {
    const double b = scan.lo + static_cast<double>(k) * scan.scan_step;
    const double gb = g(b);
    if (gb == 0.0) {
      roots.push_back(b);
    } else if (ga != 0.0 && (ga < 0.0) != (gb < 0.0)) {
      double lo = a, hi = b, glo = ga;
      while (hi - lo > scan.tol) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((gm < 0.0) == (glo < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    ga = gb;
  }
  return roots;
}

double z1_curve(const Ensemble& e, double alpha) {
  return quantumness(e, AlphaZ(alpha, 1.0));
}

namespace {

struct ConstantTarget {
  CanonicalName ensemble;
  Quantifier quantifier;
  double reference_alpha;
};

// Abscissas at which the Q_{α,1} curve meets another quantifier's value.
const ConstantTarget kTargets[] = {
    {CanonicalName::b92, Quantifier::Qcomm, 1.53},    {CanonicalName::diag, Quantifier::Ql1, 0.23},
    {CanonicalName::diag, Quantifier::Qbig, 0.54},    {CanonicalName::trine, Quantifier::Ql1, 0.20},
    {CanonicalName::trine, Quantifier::QFS_ref, 1.77}, {CanonicalName::trine, Quantifier::Qcomm, 1.77},
    {CanonicalName::trine, Quantifier::Qclon_ref, 1.33}, {CanonicalName::trine, Quantifier::QHol, 0.96},
    {CanonicalName::trine, Quantifier::Qbig, 0.41},   {CanonicalName::bb84, Quantifier::QHol, 1.59},
    {CanonicalName::bb84, Quantifier::Qbig, 0.50},    {CanonicalName::tetrad, Quantifier::QHol, 1.26},
};

std::string curve_id(CanonicalName name) {
  return "Qaz(" + std::string(to_string(name)) + ")";
}

void solve(std::vector<CrossingResult>& out, CrossingResult base, const std::function<double(double)>& g,
           const RootScan& scan) {
  const std::vector<double> roots = bracket_roots(g, scan);
  if (roots.empty()) {
    out.push_back(std::move(base));
    return;
  }
  for (double r : roots) {
    CrossingResult c = base;
    c.alpha_root = r;
    c.residual = g(r);
    out.push_back(std::move(c));
  }
}

}  // namespace

std::vector<CrossingResult> find_crossings(const CrossingOptions& options) {
  std::map<CanonicalName, Ensemble> ensembles;
  for (CanonicalName c : kCanonicalNames) ensembles.emplace(c, canonical(c));

  std::vector<CrossingResult> out;
  {
    const Ensemble& trine = ensembles.at(CanonicalName::trine);
    const Ensemble& diag = ensembles.at(CanonicalName::diag);
    CrossingResult base{.ensemble = "trine",
                        .lhs = curve_id(CanonicalName::trine),
                        .rhs = curve_id(CanonicalName::diag),
                        .rhs_source = "curve",
                        .alpha_root = std::nullopt,
                        .reference_alpha = 0.33};
    solve(out, base, [&](double a) { return z1_curve(trine, a) - z1_curve(diag, a); }, options.scan);
  }

  std::map<CanonicalName, double> computed_hol;
  for (const ConstantTarget& t : kTargets) {
    const Ensemble& e = ensembles.at(t.ensemble);
    auto add = [&](double constant, std::string source) {
      CrossingResult base{.ensemble = std::string(to_string(t.ensemble)),
                          .lhs = curve_id(t.ensemble),
                          .rhs = std::string(to_string(t.quantifier)),
                          .rhs_source = std::move(source),
                          .rhs_value = constant,
                          .alpha_root = std::nullopt,
                          .reference_alpha = t.reference_alpha};
      solve(out, base, [&](double a) { return z1_curve(e, a) - constant; }, options.scan);
    };
    add(reference_constants(t.ensemble).at(t.quantifier), "table");
    if (!options.include_computed) continue;
    switch (t.quantifier) {
      case Quantifier::Ql1: add(q_l1(e), "computed"); break;
      case Quantifier::Qcomm: add(q_commutator(e), "computed"); break;
      case Quantifier::Qbig: add(q_commutator_weighted(e), "computed"); break;
      case Quantifier::QHol: {
        auto it = computed_hol.find(t.ensemble);
        if (it == computed_hol.end()) it = computed_hol.emplace(t.ensemble, q_hol(e, options.hol_cfg)).first;
        add(it->second, "computed");
        break;
      }
      default: break;
    }
  }
  return out;
}

}  // namespace gramq
