#pragma once

// Spectral calculus for Hermitian complex matrices.

#include <complex>
#include <span>

#include <Eigen/Dense>

namespace gramq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

struct Tolerances {
  /// Eigenvalues with |λ| <= support_cutoff * max|λ| are treated as exact zeros.
  double support_cutoff = 1e-12;
  double hermiticity_tol = 1e-10;
  double reconstruction_tol = 1e-10;
};

struct SpectralDecomposition {
  RealVector eigenvalues;      // descending
  ComplexMatrix eigenvectors;  // columns, unitary
  Index rank = 0;              // eigenvalues strictly above the cutoff
  double cutoff = 0.0;         // absolute threshold used for classification

  Index dim() const { return eigenvalues.size(); }

  /// U diag(g(λ_i)) U†, with g applied only to eigenvalues above the cutoff
  /// and zero elsewhere.
  template <class F>
  ComplexMatrix apply_on_support(F&& g) const {
    RealVector mapped(dim());
    for (Index i = 0; i < dim(); ++i)
      mapped[i] = eigenvalues[i] > cutoff ? g(eigenvalues[i]) : 0.0;
    return eigenvectors * mapped.asDiagonal() * eigenvectors.adjoint();
  }

  ComplexMatrix reconstruct() const;
  ComplexMatrix support_projector() const;
  ComplexMatrix kernel_projector() const;
};

double max_abs(const ComplexMatrix& m);
double hermiticity_defect(const ComplexMatrix& m);
ComplexMatrix hermitian_part(const ComplexMatrix& m);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized before
/// decomposition; eigenvalues below the support cutoff are snapped to zero.
/// Throws NotHermitian or NoConvergence.
SpectralDecomposition eigh(const ComplexMatrix& m, const Tolerances& tol = {});

/// Fractional power on the support: eigenvalues above the cutoff are raised
/// to `x`, the kernel maps to zero (Moore-Penrose sense for x < 0).
/// Throws NotPositive if an eigenvalue is below -cutoff.
ComplexMatrix mat_power_support(const ComplexMatrix& m, double x, const Tolerances& tol = {});
ComplexMatrix mat_power_support(const SpectralDecomposition& s, double x);

/// n x rank factor F = U_supp diag(λ^{x/2}) with F F† equal to the support power x.
ComplexMatrix power_factor(const SpectralDecomposition& s, double x);

/// Positive semidefinite, unit-trace Hermitian matrix with its spectrum
/// computed once at construction. Immutable.
class DensityMatrix {
 public:
  /// Throws NotHermitian, NotPositive or InvariantViolation (trace).
  explicit DensityMatrix(const ComplexMatrix& m, const Tolerances& tol = {});

  static DensityMatrix diagonal(std::span<const double> probabilities, const Tolerances& tol = {});
  static DensityMatrix maximally_mixed(Index dim);
  static DensityMatrix pure(const ComplexVector& psi);

  const ComplexMatrix& matrix() const { return matrix_; }
  const SpectralDecomposition& spectrum() const { return spectrum_; }
  const Tolerances& tolerances() const { return tol_; }
  Index dim() const { return matrix_.rows(); }
  bool is_diagonal(double eps = 1e-12) const;
  RealVector diagonal_entries() const { return matrix_.diagonal().real(); }

  ComplexMatrix power(double x) const { return mat_power_support(spectrum_, x); }
  ComplexMatrix power_factor(double x) const { return gramq::power_factor(spectrum_, x); }

 private:
  ComplexMatrix matrix_;
  SpectralDecomposition spectrum_;
  Tolerances tol_;
};

/// Tr[(σ^{(1-α)/2z} ρ^{α/z} σ^{(1-α)/2z})^z].
/// Throws InvalidParameter (α = 1, z <= 0, dimension mismatch) and
/// SupportViolation when α > 1 and supp ρ is not inside supp σ.
double f_alpha_z(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha, double z);

/// Same functional for diagonal σ = diag(q). The caller supplies a factor F
/// with F F† = ρ^{α/z} (see DensityMatrix::power_factor) so repeated
/// evaluations over many σ share one decomposition of ρ.
double f_alpha_z_incoherent(const ComplexMatrix& rho_factor, std::span<const double> q, double alpha,
                            double z, const Tolerances& tol = {});

enum class LogBase { natural, two };

double von_neumann_entropy(const DensityMatrix& rho, LogBase base = LogBase::natural);
double shannon_entropy(std::span<const double> p, LogBase base = LogBase::natural);

}  // namespace gramq
