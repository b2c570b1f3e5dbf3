#ifndef MATR_SIMILARITY_HPP
#define MATR_SIMILARITY_HPP

#include "matr/types.hpp"

namespace matr {

/// X = M (M^T M)^{-1} M^T for a hard or soft membership M. A projection
/// matrix: idempotent, PSD, trace r, rows summing to one.
struct NormalizedClusteringMatrix {
  SymMatrix x;
  int r;
};

/// Hard version: X_ij = 1/m_k when i,j share cluster k, else 0.
/// Every cluster must be non-empty.
NormalizedClusteringMatrix normalized_clustering_matrix(const HardMembership& z);

/// Soft version via eigendecomposition pseudo-inverse of Theta^T Theta
/// (cutoff 1e-10 * lambda_max). Throws if Theta is rank deficient.
NormalizedClusteringMatrix normalized_clustering_matrix(const SoftMembership& theta);

/// K(i,j) = exp(-||Y_i - Y_j||^2 / (2 theta^2)).
SimilarityMatrix gaussian_kernel(const Matrix& y, double theta);

/// S = -pairwise_sq_dist(Y).
SimilarityMatrix neg_sq_dist(const Matrix& y);

/// S = A^2 - diag(A^2): common-neighbour counts with zero diagonal.
SimilarityMatrix a2_similarity(const AdjacencyMatrix& a);

/// <S, X> = sum_ij S_ij X_ij.
double trace_criterion(const SimilarityMatrix& s, const NormalizedClusteringMatrix& x);

/// Same criterion without forming X: <S, Theta G Theta^T> computed from the
/// membership directly. Used by the selection loops at large n.
double trace_criterion(const SimilarityMatrix& s, const HardMembership& z);
double trace_criterion(const SimilarityMatrix& s, const SoftMembership& theta);

}  // namespace matr

#endif
