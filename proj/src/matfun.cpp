#include "gramq/matfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gramq/error.hpp"

namespace gramq {

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

ComplexMatrix SpectralDecomposition::support_projector() const {
  return apply_on_support([](double) { return 1.0; });
}

ComplexMatrix SpectralDecomposition::kernel_projector() const {
  return ComplexMatrix::Identity(dim(), dim()) - support_projector();
}

SpectralDecomposition eigh(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols())
    throw Error(ErrorKind::DimensionMismatch, "eigh expects a square matrix");
  const double defect = hermiticity_defect(m);
  if (defect > tol.hermiticity_tol)
    throw Error(ErrorKind::NotHermitian, "max |m - m^dagger| = " + std::to_string(defect));

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::NoConvergence, "Hermitian eigensolver did not converge");

  const Index n = m.rows();
  SpectralDecomposition s;
  s.eigenvalues = solver.eigenvalues().reverse();
  s.eigenvectors = solver.eigenvectors().rowwise().reverse();

  const double scale = n == 0 ? 0.0 : s.eigenvalues.cwiseAbs().maxCoeff();
  s.cutoff = tol.support_cutoff * scale;
  for (Index i = 0; i < n; ++i) {
    if (std::abs(s.eigenvalues[i]) <= s.cutoff) s.eigenvalues[i] = 0.0;
    if (s.eigenvalues[i] > s.cutoff) ++s.rank;
  }
  return s;
}

ComplexMatrix mat_power_support(const SpectralDecomposition& s, double x) {
  for (Index i = 0; i < s.dim(); ++i)
    if (s.eigenvalues[i] < -s.cutoff)
      throw Error(ErrorKind::NotPositive,
                  "negative eigenvalue " + std::to_string(s.eigenvalues[i]) + " in matrix power");
  return s.apply_on_support([x](double l) { return std::pow(l, x); });
}

ComplexMatrix power_factor(const SpectralDecomposition& s, double x) {
  ComplexMatrix f(s.dim(), s.rank);
  Index col = 0;
  for (Index i = 0; i < s.dim(); ++i)
    if (s.eigenvalues[i] > s.cutoff) f.col(col++) = s.eigenvectors.col(i) * std::pow(s.eigenvalues[i], 0.5 * x);
  return f;
}

ComplexMatrix mat_power_support(const ComplexMatrix& m, double x, const Tolerances& tol) {
  return mat_power_support(eigh(m, tol), x);
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m, const Tolerances& tol)
    : matrix_(hermitian_part(m)), spectrum_(eigh(m, tol)), tol_(tol) {
  const double psd_slack = std::max(spectrum_.cutoff, tol.hermiticity_tol);
  if (dim() > 0 && spectrum_.eigenvalues[dim() - 1] < -psd_slack)
    throw Error(ErrorKind::NotPositive,
                "density matrix has eigenvalue " + std::to_string(spectrum_.eigenvalues[dim() - 1]));
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > tol.reconstruction_tol)
    throw Error(ErrorKind::InvariantViolation, "density matrix trace is " + std::to_string(trace));
  spectrum_.eigenvalues = spectrum_.eigenvalues.cwiseMax(0.0);
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probabilities, const Tolerances& tol) {
  RealVector p = Eigen::Map<const RealVector>(probabilities.data(), std::ssize(probabilities));
  return DensityMatrix(p.cast<Complex>().asDiagonal().toDenseMatrix(), tol);
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  return DensityMatrix(psi * psi.adjoint());
}

bool DensityMatrix::is_diagonal(double eps) const {
  for (Index i = 0; i < dim(); ++i)
    for (Index j = 0; j < dim(); ++j)
      if (i != j && std::abs(matrix_(i, j)) > eps) return false;
  return true;
}

namespace {

void check_alpha_z(double alpha, double z) {
  if (alpha == 1.0) throw Error(ErrorKind::InvalidParameter, "alpha must differ from 1");
  if (!(z > 0.0)) throw Error(ErrorKind::InvalidParameter, "z must be positive");
  if (!std::isfinite(alpha) || !std::isfinite(z))
    throw Error(ErrorKind::InvalidParameter, "alpha and z must be finite");
}

// Tr[(B B†)^z] = Σ s_i^{2z} over the singular values of B. Working with the
// factor keeps small eigenvalues of B B† to relative accuracy, which matters
// once z is small; singular values at rounding level are dropped.
double trace_power_of_gram(const ComplexMatrix& b, double z) {
  if (b.size() == 0) return 0.0;
  const Eigen::JacobiSVD<ComplexMatrix> svd(b);
  const RealVector& sv = svd.singularValues();
  const double cut = 4.0 * std::numeric_limits<double>::epsilon() *
                     std::sqrt(static_cast<double>(std::max(b.rows(), b.cols()))) * sv[0];
  double total = 0.0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv[i] > cut) total += std::pow(sv[i], 2.0 * z);
  return total;
}

}  // namespace

double f_alpha_z(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha, double z) {
  check_alpha_z(alpha, z);
  if (rho.dim() != sigma.dim())
    throw Error(ErrorKind::DimensionMismatch, "rho and sigma dimensions differ");
  const Tolerances& tol = rho.tolerances();
  if (alpha > 1.0 && sigma.spectrum().rank < sigma.dim()) {
    const ComplexMatrix kernel = sigma.spectrum().kernel_projector();
    const double leak = max_abs(kernel * rho.matrix() * kernel);
    if (leak >= tol.support_cutoff)
      throw Error(ErrorKind::SupportViolation,
                  "supp rho is not contained in supp sigma (leak " + std::to_string(leak) + ")");
  }
  // B = diag(μ^s) U_σ† U_ρ diag(λ^{α/2z}) restricted to both supports.
  const SpectralDecomposition& ss = sigma.spectrum();
  const SpectralDecomposition& rs = rho.spectrum();
  const double side_exp = (1.0 - alpha) / (2.0 * z);
  const double rho_exp = alpha / (2.0 * z);
  ComplexMatrix b(ss.rank, rs.rank);
  Index r = 0;
  for (Index i = 0; i < ss.dim(); ++i) {
    if (ss.eigenvalues[i] <= ss.cutoff) continue;
    Index c = 0;
    for (Index j = 0; j < rs.dim(); ++j) {
      if (rs.eigenvalues[j] <= rs.cutoff) continue;
      const Complex overlap = ss.eigenvectors.col(i).dot(rs.eigenvectors.col(j));
      b(r, c++) = std::pow(ss.eigenvalues[i], side_exp) * overlap * std::pow(rs.eigenvalues[j], rho_exp);
    }
    ++r;
  }
  return trace_power_of_gram(b, z);
}

double f_alpha_z_incoherent(const ComplexMatrix& rho_factor, std::span<const double> q, double alpha,
                            double z, const Tolerances& tol) {
  check_alpha_z(alpha, z);
  const Index n = rho_factor.rows();
  if (std::ssize(q) != n) throw Error(ErrorKind::DimensionMismatch, "sigma diagonal length mismatch");

  const double q_max = *std::max_element(q.begin(), q.end());
  const double q_cut = tol.support_cutoff * q_max;
  const RealVector rho_diag = rho_factor.rowwise().squaredNorm();
  const double rho_scale = rho_diag.size() ? rho_diag.maxCoeff() : 0.0;
  const double exponent = (1.0 - alpha) / (2.0 * z);

  RealVector side(n);
  for (Index i = 0; i < n; ++i) {
    if (q[i] > q_cut) {
      side[i] = std::pow(q[i], exponent);
    } else {
      if (alpha > 1.0 && rho_diag[i] > tol.support_cutoff * rho_scale)
        throw Error(ErrorKind::SupportViolation,
                    "supp rho is not contained in supp sigma at index " + std::to_string(i));
      side[i] = 0.0;
    }
  }
  return trace_power_of_gram(side.asDiagonal() * rho_factor, z);
}

double shannon_entropy(std::span<const double> p, LogBase base) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log(v);
  return base == LogBase::two ? h / std::log(2.0) : h;
}

double von_neumann_entropy(const DensityMatrix& rho, LogBase base) {
  const SpectralDecomposition& s = rho.spectrum();
  double h = 0.0;
  for (Index i = 0; i < s.dim(); ++i) {
    const double l = s.eigenvalues[i];
    if (l > s.cutoff) h -= l * std::log(l);
  }
  return base == LogBase::two ? h / std::log(2.0) : h;
}

}  // namespace gramq
