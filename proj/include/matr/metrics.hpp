#ifndef MATR_METRICS_HPP
#define MATR_METRICS_HPP

#include <vector>

#include "matr/similarity.hpp"
#include "matr/types.hpp"

namespace matr {

/// Normalized mutual information, geometric-mean normalization
/// I(a;b)/sqrt(H(a)H(b)). Conventions: both single-cluster -> 1; exactly
/// one with zero entropy -> 0.
double nmi(const std::vector<int>& a, const std::vector<int>& b);

/// ||X_hat - X0||_F^2.
double clustering_error(const NormalizedClusteringMatrix& x_hat,
                        const NormalizedClusteringMatrix& x0);

/// True iff some label bijection turns z_hat into z0.
bool exact_recovery(const HardMembership& z_hat, const HardMembership& z0);

/// Best label alignment of `pred` against `truth`: exhaustive over
/// permutations for r <= 8, greedy maximum-overlap above. Returns the
/// relabeled prediction.
HardMembership align_labels(const HardMembership& pred, const HardMembership& truth);

struct EvalReport {
  double nmi = 0.0;
  double frob_sq = 0.0;
  bool exact = false;
  Matrix aligned_confusion;  // r x r counts after alignment
};

EvalReport evaluate(const HardMembership& pred, const HardMembership& truth);

}  // namespace matr

#endif
