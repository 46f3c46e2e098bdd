#include "gramq/random.hpp"

#include <cmath>

namespace gramq {

namespace {

ComplexMatrix ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  return g;
}

}  // namespace

ComplexMatrix random_unitary(Index dim, Rng& rng) {
  const Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(dim, dim, rng));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

PureState random_state(Index dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, 1, rng);
  return PureState::normalized(g.col(0));
}

RealVector random_simplex_point(Index dim, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  RealVector q(dim);
  for (Index i = 0; i < dim; ++i) q[i] = expo(rng) + 1e-300;
  return q / q.sum();
}

Ensemble random_ensemble(std::size_t members, Index dim, Rng& rng) {
  const RealVector p = random_simplex_point(static_cast<Index>(members), rng);
  std::vector<Member> out;
  out.reserve(members);
  for (std::size_t i = 0; i < members; ++i) out.push_back({p[static_cast<Index>(i)], random_state(dim, rng)});
  return Ensemble(std::move(out), "random");
}

DensityMatrix random_density(Index dim, Rng& rng, Index rank) {
  if (rank <= 0 || rank > dim) rank = dim;
  const ComplexMatrix g = ginibre(dim, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

}  // namespace gramq
