#include "gramq/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "gramq/ensemble_io.hpp"
#include "gramq/error.hpp"

namespace gramq {

void SweepSpec::validate() const {
  if (!std::isfinite(alpha_start) || !std::isfinite(alpha_end) || !std::isfinite(alpha_step) || !std::isfinite(z))
    throw Error(ErrorKind::InvalidParameter, "sweep bounds must be finite");
  if (!(alpha_start < alpha_end)) throw Error(ErrorKind::InvalidParameter, "sweep start must be below end");
  if (!(alpha_step > 0.0)) throw Error(ErrorKind::InvalidParameter, "sweep step must be positive");
  if (!(z > 0.0)) throw Error(ErrorKind::InvalidParameter, "z must be positive");
  if (!(exclude_window >= 0.0)) throw Error(ErrorKind::InvalidParameter, "exclusion window must be non-negative");
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  spec.validate();
  std::vector<double> grid;
  const double slack = 1e-9 * spec.alpha_step;
  for (long k = 0;; ++k) {
    const double a = spec.alpha_start + static_cast<double>(k) * spec.alpha_step;
    if (a > spec.alpha_end + slack) break;
    if (std::abs(a - 1.0) < std::max(spec.exclude_window, kAlphaOneWindow)) continue;
    grid.push_back(a);
  }
  if (spec.alpha_start <= 1.0 + slack && spec.alpha_end >= 1.0 - slack) grid.push_back(1.0);
  std::sort(grid.begin(), grid.end());
  return grid;
}

std::vector<SweepRow> sweep(std::span<const Ensemble> ensembles, const SweepSpec& spec, const OptimizerConfig& cfg,
                            bool normalized) {
  const std::vector<double> grid = sweep_grid(spec);
  std::vector<SweepRow> rows;
  for (const Ensemble& e : ensembles)
    for (double a : grid)
      rows.push_back({e.label(), a, spec.z, normalized ? Quantifier::Qaz_normalized : Quantifier::Qaz, 0.0,
                      Method::limit});

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(rows.size());
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      SweepRow& row = rows[i];
      const Ensemble& e = ensembles[i / grid.size()];
      try {
        const QuantumnessValue q = quantumness_detailed(e, AlphaZ(row.alpha, row.z), cfg);
        row.value = normalized ? q.value / static_cast<double>(e.size()) : q.value;
        row.method = q.method;
        row.converged = q.converged;
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
  if (workers == 1 || rows.size() < 2) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const std::exception_ptr& f : failures)
    if (f) std::rethrow_exception(f);
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  return quoted + "\"";
}

}  // namespace

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::ostringstream out;
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows)
    out << csv_field(r.ensemble) << ',' << format_double(r.alpha) << ',' << format_double(r.z) << ',' << to_string(r.quantifier)
        << ',' << format_double(r.value) << ',' << to_string(r.method) << '\n';
  return out.str();
}

}  // namespace gramq
