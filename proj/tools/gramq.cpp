// gramq: quantumness of pure-state ensembles from the command line.
//
// Exit codes: 0 ok, 1 verify failure, 2 bad input, 3 numerical non-convergence.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gramq/crossings.hpp"
#include "gramq/ensemble_io.hpp"
#include "gramq/error.hpp"
#include "gramq/quantifiers.hpp"
#include "gramq/sweep.hpp"
#include "gramq/verify.hpp"

namespace {

using namespace gramq;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct Common {
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 0;
  int restarts = 16;

  OptimizerConfig optimizer() const {
    OptimizerConfig cfg;
    cfg.seed = seed;
    cfg.restarts = restarts;
    return cfg;
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw Error(ErrorKind::InvalidParameter, "cannot write to " + path);
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void warn(const std::string& msg) {
  std::cerr << "warning: " << msg << '\n';
}

ordered_json record_json(const QuantumnessRecord& r) {
  ordered_json j;
  j["ensemble"] = r.ensemble;
  j["quantifier"] = to_string(r.quantifier);
  if (r.alpha) j["alpha"] = *r.alpha;
  if (r.z) j["z"] = *r.z;
  if (r.alpha && r.z) j["validity"] = to_string(classify(*r.alpha, *r.z));
  j["value"] = r.value;
  j["method"] = to_string(r.method);
  j["units"] = units(r.quantifier, r.method);
  j["converged"] = r.converged;
  return j;
}

std::string opt_num(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string short_num(const std::optional<double>& v) {
  if (!v) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", *v);
  return buf;
}

void write_records(const std::vector<QuantumnessRecord>& records, const std::string& format, std::ostream& out) {
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const QuantumnessRecord& r : records) arr.push_back(record_json(r));
    out << arr.dump(2) << '\n';
  } else if (format == "csv") {
    out << kSweepCsvHeader << '\n';
    for (const QuantumnessRecord& r : records)
      out << r.ensemble << ',' << opt_num(r.alpha) << ',' << opt_num(r.z) << ',' << to_string(r.quantifier) << ','
          << format_double(r.value) << ',' << to_string(r.method) << '\n';
  } else {
    out << std::left << std::setw(10) << "ensemble" << std::setw(16) << "quantifier" << std::setw(10) << "alpha"
        << std::setw(10) << "z" << std::setw(22) << "value" << std::setw(20) << "method"
        << "units\n";
    for (const QuantumnessRecord& r : records)
      out << std::left << std::setw(10) << r.ensemble << std::setw(16) << to_string(r.quantifier) << std::setw(10)
          << short_num(r.alpha) << std::setw(10) << short_num(r.z) << std::setw(22) << format_double(r.value)
          << std::setw(20) << to_string(r.method) << units(r.quantifier, r.method) << '\n';
  }
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string ensemble;
  std::string quantifier = "all";
  double alpha = 0.5;
  double z = 1.0;
  double x = kB92DefaultOverlap;
};

bool has_reference_row(const EvalArgs& a) {
  if (!is_canonical_name(a.ensemble)) return false;
  return parse_canonical_name(a.ensemble) != CanonicalName::b92 || a.x == kB92DefaultOverlap;
}

int run_eval(const EvalArgs& a, const Common& c) {
  const Ensemble e = resolve_ensemble(a.ensemble, a.x);
  const std::string label = e.label().empty() ? a.ensemble : e.label();
  const OptimizerConfig cfg = c.optimizer();

  std::vector<Quantifier> wanted;
  if (a.quantifier == "all") {
    wanted = {Quantifier::Qaz, Quantifier::Qaz_normalized, Quantifier::Ql1,
              Quantifier::Qcomm, Quantifier::Qbig, Quantifier::QHol};
    if (has_reference_row(a)) {
      wanted.push_back(Quantifier::QFS_ref);
      wanted.push_back(Quantifier::Qclon_ref);
    }
  } else {
    wanted = {parse_quantifier(a.quantifier)};
  }

  std::vector<QuantumnessRecord> records;
  for (Quantifier q : wanted) {
    QuantumnessRecord r{label, q, std::nullopt, std::nullopt, 0.0, Method::closed_form};
    switch (q) {
      case Quantifier::Qaz:
      case Quantifier::Qaz_normalized: {
        const AlphaZ p(a.alpha, a.z);
        if (!p.is_valid_measure())
          warn("(alpha, z) = (" + format_double(a.alpha) + ", " + format_double(a.z) +
               ") is outside the validity cases; value is not guaranteed to be a coherence measure");
        const QuantumnessValue v = quantumness_detailed(e, p, cfg);
        r.alpha = a.alpha;
        r.z = a.z;
        r.value = q == Quantifier::Qaz ? v.value : v.value / static_cast<double>(e.size());
        r.method = v.method;
        r.converged = v.converged;
        break;
      }
      case Quantifier::Ql1: r.value = q_l1(e); break;
      case Quantifier::Qcomm: r.value = q_commutator(e); break;
      case Quantifier::Qbig: r.value = q_commutator_weighted(e); break;
      case Quantifier::QHol: {
        const QHolResult h = q_hol_detailed(e, cfg);
        r.value = h.value;
        r.method = Method::optimizer;
        r.converged = h.converged;
        break;
      }
      case Quantifier::QFS_ref:
      case Quantifier::Qclon_ref:
        if (!has_reference_row(a))
          throw Error(ErrorKind::InvalidParameter,
                      std::string(to_string(q)) + " is tabulated only for canonical ensembles (b92 at its default overlap)");
        r.value = reference_constants(parse_canonical_name(a.ensemble)).at(q);
        r.method = Method::reference_constant;
        break;
    }
    records.push_back(r);
  }

  Output out(c.out);
  write_records(records, c.format, out.stream());
  for (const QuantumnessRecord& r : records)
    if (!r.converged) {
      std::cerr << "error: optimizer did not converge for " << to_string(r.quantifier) << " (best value reported)\n";
      return kExitNumeric;
    }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::vector<std::string> ensembles;
  SweepSpec spec;
  std::string quantifier = "qaz";
  double x = kB92DefaultOverlap;
};

int run_sweep(const SweepArgs& a, const Common& c) {
  std::vector<Ensemble> ensembles;
  if (a.ensembles.empty()) {
    for (CanonicalName n : kCanonicalNames) ensembles.push_back(canonical(n, a.x));
  } else {
    for (const std::string& ref : a.ensembles) {
      Ensemble e = resolve_ensemble(ref, a.x);
      ensembles.push_back(e.label().empty() ? e.with_label(ref) : std::move(e));
    }
  }
  const Quantifier q = parse_quantifier(a.quantifier);
  if (q != Quantifier::Qaz && q != Quantifier::Qaz_normalized)
    throw Error(ErrorKind::InvalidParameter, "sweep supports Qaz and Qaz_normalized");

  const std::vector<double> grid = sweep_grid(a.spec);
  for (double alpha : grid)
    if (std::abs(alpha - 1.0) >= kAlphaOneWindow && classify(alpha, a.spec.z) == Validity::outside) {
      warn("sweep includes (alpha, z) outside the validity cases, e.g. alpha = " + format_double(alpha));
      break;
    }

  Output out(c.out);
  const std::vector<SweepRow> rows = sweep(ensembles, a.spec, c.optimizer(), q == Quantifier::Qaz_normalized);
  if (c.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const SweepRow& r : rows)
      arr.push_back({{"ensemble", r.ensemble}, {"alpha", r.alpha}, {"z", r.z}, {"quantifier", to_string(r.quantifier)},
                     {"value", r.value}, {"method", to_string(r.method)}});
    out.stream() << arr.dump(2) << '\n';
  } else {
    out.stream() << sweep_csv(rows);
  }
  for (const SweepRow& r : rows)
    if (!r.converged) {
      std::cerr << "error: optimizer did not converge at alpha = " << format_double(r.alpha) << '\n';
      return kExitNumeric;
    }
  return kExitOk;
}

// ---------------------------------------------------------------------------

int run_table1(const Common& c, int restarts) {
  OptimizerConfig cfg = c.optimizer();
  cfg.restarts = restarts;
  const Quantifier computed[] = {Quantifier::Ql1, Quantifier::Qcomm, Quantifier::Qbig, Quantifier::QHol};
  ordered_json rows = ordered_json::array();
  bool converged = true;
  for (CanonicalName name : kCanonicalNames) {
    const Ensemble e = canonical(name);
    const auto ref = reference_constants(name);
    const QHolResult hol = q_hol_detailed(e, cfg);
    converged = converged && hol.converged;
    const std::map<Quantifier, double> values{{Quantifier::Ql1, q_l1(e)},
                                              {Quantifier::Qcomm, q_commutator(e)},
                                              {Quantifier::Qbig, q_commutator_weighted(e)},
                                              {Quantifier::QHol, hol.value}};
    ordered_json row;
    row["ensemble"] = to_string(name);
    for (Quantifier q : computed)
      row[std::string(to_string(q))] = {{"value", values.at(q)},
                                        {"table", ref.at(q)},
                                        {"deviation", std::abs(values.at(q) - ref.at(q))},
                                        {"source", "computed"}};
    for (Quantifier q : {Quantifier::QFS_ref, Quantifier::Qclon_ref})
      row[std::string(to_string(q))] = {{"value", ref.at(q)}, {"source", "reference"}};
    rows.push_back(row);
  }

  Output out(c.out);
  std::ostream& os = out.stream();
  if (c.format == "json") {
    os << rows.dump(2) << '\n';
  } else {
    os << std::left << std::setw(8) << "" << std::setw(22) << "Ql1" << std::setw(22) << "Qcomm" << std::setw(22)
       << "Q" << std::setw(22) << "QHol (bits)" << std::setw(12) << "QFS" << "Q'clon\n";
    os << std::setw(8) << "" << std::setw(22) << "computed |dev|" << std::setw(22) << "computed |dev|"
       << std::setw(22) << "computed |dev|" << std::setw(22) << "computed |dev|" << std::setw(12) << "reference"
       << "reference\n";
    for (const ordered_json& row : rows) {
      os << std::setw(8) << row["ensemble"].get<std::string>();
      for (Quantifier q : computed) {
        const ordered_json& cell = row[std::string(to_string(q))];
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.4f  %.4f", cell["value"].get<double>(), cell["deviation"].get<double>());
        os << std::setw(22) << buf;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2f", row["QFS_ref"]["value"].get<double>());
      os << std::setw(12) << buf;
      std::snprintf(buf, sizeof buf, "%.2f", row["Qclon_ref"]["value"].get<double>());
      os << buf << '\n';
    }
  }
  return converged ? kExitOk : kExitNumeric;
}

// ---------------------------------------------------------------------------

int run_crossings(const Common& c) {
  CrossingOptions options;
  options.hol_cfg.seed = c.seed;
  const std::vector<CrossingResult> results = find_crossings(options);
  Output out(c.out);
  std::ostream& os = out.stream();
  if (c.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const CrossingResult& r : results) {
      ordered_json j{{"ensemble", r.ensemble}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"rhs_source", r.rhs_source}};
      if (r.rhs_source != "curve") j["rhs_value"] = r.rhs_value;
      j["alpha_root"] = r.alpha_root ? ordered_json(*r.alpha_root) : ordered_json(nullptr);
      j["residual"] = r.residual;
      if (r.reference_alpha) j["reference_alpha"] = *r.reference_alpha;
      arr.push_back(j);
    }
    os << arr.dump(2) << '\n';
  } else {
    os << std::left << std::setw(8) << "ensemble" << std::setw(14) << "curve" << std::setw(14) << "against"
       << std::setw(10) << "source" << std::setw(10) << "value" << std::setw(14) << "alpha" << std::setw(12)
       << "reference" << "residual\n";
    for (const CrossingResult& r : results) {
      char value[32] = "", alpha[32] = "NoBracket", reference[32] = "", residual[32] = "";
      if (r.rhs_source != "curve") std::snprintf(value, sizeof value, "%.4f", r.rhs_value);
      if (r.alpha_root) {
        std::snprintf(alpha, sizeof alpha, "%.6f", *r.alpha_root);
        std::snprintf(residual, sizeof residual, "%.1e", r.residual);
      }
      if (r.reference_alpha) std::snprintf(reference, sizeof reference, "%.2f", *r.reference_alpha);
      os << std::setw(8) << r.ensemble << std::setw(14) << r.lhs << std::setw(14) << r.rhs << std::setw(10)
         << r.rhs_source << std::setw(10) << value << std::setw(14) << alpha << std::setw(12) << reference
         << residual << '\n';
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

int run_verify_cmd(const std::vector<std::string>& files, const Common& c, bool quick) {
  VerifyOptions options;
  options.quick = quick;
  if (c.seed != 0) options.seed = c.seed;
  for (const std::string& f : files) options.extra_ensembles.push_back(load_ensemble(f));
  const std::vector<SuiteReport> reports = run_verify(options);
  Output out(c.out);
  return print_verify_report(reports, out.stream()) ? kExitOk : kExitVerifyFailed;
}

int run_ensembles(const Common& c, double x) {
  Output out(c.out);
  std::ostream& os = out.stream();
  ordered_json arr = ordered_json::array();
  for (CanonicalName name : kCanonicalNames) {
    const Ensemble e = canonical(name, x);
    const ComplexMatrix g = gram_matrix(e);
    if (c.format == "json") {
      ordered_json rows = ordered_json::array();
      for (Index i = 0; i < g.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Index j = 0; j < g.cols(); ++j) row.push_back({g(i, j).real(), g(i, j).imag()});
        rows.push_back(row);
      }
      arr.push_back({{"name", to_string(name)}, {"members", e.size()}, {"dim", e.dim()}, {"gram", rows}});
    } else {
      os << to_string(name) << " (" << e.size() << " states in C^" << e.dim() << ")\n";
      const Eigen::IOFormat fmt(6, 0, "  ", "\n", "  [", "]");
      os << g.format(fmt) << "\n\n";
    }
  }
  if (c.format == "json") os << arr.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantumness of pure-state ensembles via Gram-matrix coherence"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&common](CLI::App* sub, bool with_optimizer) {
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", common.out, "Write output to PATH instead of stdout");
    sub->add_option("--seed", common.seed, "Seed for randomized starts");
    if (with_optimizer) sub->add_option("--restarts", common.restarts, "Optimizer starts")->check(CLI::PositiveNumber);
  };

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate quantifiers for one ensemble");
  eval->add_option("ensemble", eval_args.ensemble, "Canonical name or ensemble file")->required();
  eval->add_option("--quantifier", eval_args.quantifier,
                   "qaz, qaz_normalized, ql1, qcomm, qbig, qhol, qfs_ref, qclon_ref or all");
  eval->add_option("--alpha", eval_args.alpha, "Renyi order alpha");
  eval->add_option("--z", eval_args.z, "Parameter z > 0");
  eval->add_option("--x", eval_args.x, "B92 overlap in [0, 1]");
  add_common(eval, true);

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Tabulate Q_{alpha,z} over an alpha grid as CSV");
  sweep_cmd->add_option("ensembles", sweep_args.ensembles, "Canonical names or files (default: all six)");
  sweep_cmd->add_option("--start", sweep_args.spec.alpha_start, "First alpha");
  sweep_cmd->add_option("--end", sweep_args.spec.alpha_end, "Last alpha");
  sweep_cmd->add_option("--step", sweep_args.spec.alpha_step, "Alpha step");
  sweep_cmd->add_option("--z", sweep_args.spec.z, "Parameter z > 0");
  sweep_cmd->add_option("--window", sweep_args.spec.exclude_window, "Half-width around alpha = 1 replaced by the limit");
  sweep_cmd->add_option("--quantifier", sweep_args.quantifier, "qaz or qaz_normalized");
  sweep_cmd->add_option("--x", sweep_args.x, "B92 overlap in [0, 1]");
  add_common(sweep_cmd, true);
  common.format = "csv";

  int table_restarts = 32;
  CLI::App* table = app.add_subcommand("table1", "Computed comparison quantifiers next to the reference table");
  add_common(table, false);
  table->add_option("--restarts", table_restarts, "Accessible-information starts per outcome count")
      ->check(CLI::PositiveNumber);

  CLI::App* cross = app.add_subcommand("crossings", "Locate intersections of the z = 1 curves");
  add_common(cross, false);

  bool quick = false;
  std::vector<std::string> verify_files;
  CLI::App* verify = app.add_subcommand("verify", "Run the randomized property suites");
  verify->add_option("files", verify_files, "Extra ensemble files to include");
  verify->add_flag("--quick", quick, "Reduced case counts, no grid oracle");
  add_common(verify, false);

  double ensembles_x = kB92DefaultOverlap;
  CLI::App* list = app.add_subcommand("ensembles", "List canonical ensembles and their Gram matrices");
  list->add_option("--x", ensembles_x, "B92 overlap in [0, 1]");
  add_common(list, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  // Per-command default formats: sweep writes CSV, table/crossings/verify/ensembles text, eval JSON.
  auto format_given = [](CLI::App* sub) { return sub->count("--format") > 0; };

  try {
    if (eval->parsed()) {
      if (!format_given(eval)) common.format = "json";
      return run_eval(eval_args, common);
    }
    if (sweep_cmd->parsed()) {
      if (!format_given(sweep_cmd)) common.format = "csv";
      return run_sweep(sweep_args, common);
    }
    if (!format_given(app.get_subcommands().front())) common.format = "text";
    if (table->parsed()) return run_table1(common, table_restarts);
    if (cross->parsed()) return run_crossings(common);
    if (verify->parsed()) return run_verify_cmd(verify_files, common, quick);
    if (list->parsed()) return run_ensembles(common, ensembles_x);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::NoConvergence ? kExitNumeric : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
