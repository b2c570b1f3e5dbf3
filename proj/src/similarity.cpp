#include "matr/similarity.hpp"

#include <cmath>

#include "matr/matrices.hpp"

namespace matr {

NormalizedClusteringMatrix normalized_clustering_matrix(const HardMembership& z) {
  const auto sizes = z.sizes();
  for (Index m : sizes)
    if (m < 1)
      throw std::invalid_argument(
          "normalized_clustering_matrix: empty cluster makes Z^T Z singular");
  const Index n = z.n();
  Matrix x = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (z.labels[i] == z.labels[j])
        x(i, j) = 1.0 / static_cast<double>(sizes[z.labels[i]]);
  return {SymMatrix(std::move(x)), z.r};
}

NormalizedClusteringMatrix normalized_clustering_matrix(const SoftMembership& m) {
  const Matrix& theta = m.theta;
  SymMatrix gram{Matrix(theta.transpose() * theta)};
  EigenPairs e = sym_eig_full(gram);
  const double lmax = e.values(0);
  if (!(e.values.minCoeff() > 1e-10 * std::max(lmax, 1.0)))
    throw std::invalid_argument(
        "normalized_clustering_matrix: rank-deficient membership");
  Vector inv = e.values.cwiseInverse();
  Matrix pinv = e.vectors * inv.asDiagonal() * e.vectors.transpose();
  return {SymMatrix(Matrix(theta * pinv * theta.transpose())), m.r()};
}

SimilarityMatrix gaussian_kernel(const Matrix& y, double theta) {
  if (!(theta > 0)) throw std::invalid_argument("gaussian_kernel: theta must be positive");
  Matrix d = pairwise_sq_dist(y).mat();
  Matrix k = (-d / (2.0 * theta * theta)).array().exp();
  return SimilarityMatrix(std::move(k));
}

SimilarityMatrix neg_sq_dist(const Matrix& y) {
  return SimilarityMatrix(Matrix(-pairwise_sq_dist(y).mat()));
}

SimilarityMatrix a2_similarity(const AdjacencyMatrix& a) {
  Matrix s = a.mat() * a.mat();
  s.diagonal().setZero();
  return SimilarityMatrix(std::move(s));
}

double trace_criterion(const SimilarityMatrix& s, const NormalizedClusteringMatrix& x) {
  if (s.n() != x.x.n()) throw std::invalid_argument("trace_criterion: dimension mismatch");
  return s.mat().cwiseProduct(x.x.mat()).sum();
}

double trace_criterion(const SimilarityMatrix& s, const HardMembership& z) {
  if (s.n() != z.n()) throw std::invalid_argument("trace_criterion: dimension mismatch");
  const auto sizes = z.sizes();
  // sum of S over each diagonal block, weighted by 1/m_k
  std::vector<double> block(z.r, 0.0);
  for (Index i = 0; i < s.n(); ++i)
    for (Index j = 0; j < s.n(); ++j)
      if (z.labels[i] == z.labels[j]) block[z.labels[i]] += s(i, j);
  double total = 0.0;
  for (int k = 0; k < z.r; ++k)
    if (sizes[k] > 0) total += block[k] / static_cast<double>(sizes[k]);
  return total;
}

double trace_criterion(const SimilarityMatrix& s, const SoftMembership& theta) {
  if (s.n() != theta.n()) throw std::invalid_argument("trace_criterion: dimension mismatch");
  SymMatrix gram{Matrix(theta.theta.transpose() * theta.theta)};
  EigenPairs e = sym_eig_full(gram);
  if (!(e.values.minCoeff() > 1e-10 * std::max(e.values(0), 1.0)))
    throw std::invalid_argument("trace_criterion: rank-deficient membership");
  Matrix pinv = e.vectors * e.values.cwiseInverse().asDiagonal() * e.vectors.transpose();
  // <S, Theta G Theta^T> = trace(G (Theta^T S Theta))
  Matrix inner = theta.theta.transpose() * s.mat() * theta.theta;
  return (pinv * inner).trace();
}

}  // namespace matr
