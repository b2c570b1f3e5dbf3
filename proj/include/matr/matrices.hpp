#ifndef MATR_MATRICES_HPP
#define MATR_MATRICES_HPP

#include <cstdint>
#include <vector>

#include "matr/types.hpp"

namespace matr {

/// Eigenpairs sorted by descending eigenvalue; vectors are orthonormal columns.
struct EigenPairs {
  Vector values;
  Matrix vectors;

  int k() const { return static_cast<int>(values.size()); }
};

/// Top-k eigenpairs of a symmetric matrix by algebraic value.
/// Throws solver_error if the eigensolver does not converge.
EigenPairs sym_eig(const SymMatrix& m, int k);

/// Full spectrum, descending.
EigenPairs sym_eig_full(const SymMatrix& m);

/// Frobenius-nearest positive semidefinite matrix (negative eigenvalues
/// clipped to zero).
SymMatrix project_psd(const SymMatrix& m);

/// Euclidean projection onto the probability simplex {w >= 0, sum w = 1}.
Vector project_simplex(const Vector& v);

struct KmeansResult {
  std::vector<int> labels;
  double wcss = 0.0;
};

/// Lloyd iterations from k-means++ starts; best of `restarts` by
/// within-cluster sum of squares. Deterministic for a fixed seed.
/// When wcss_trace is given, the per-iteration WCSS of every restart is
/// appended to it (monotone non-increasing within a restart).
KmeansResult kmeans(const Matrix& rows, int k, int restarts, uint64_t seed,
                    std::vector<std::vector<double>>* wcss_trace = nullptr);

/// D(i,j) = ||Y_i - Y_j||^2, zero diagonal.
SymMatrix pairwise_sq_dist(const Matrix& y);

}  // namespace matr

#endif
