#ifndef MATR_GENERATORS_HPP
#define MATR_GENERATORS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "matr/types.hpp"

namespace matr {

/// Stochastic blockmodel parameters. Edge probability between clusters k
/// and l is rho * B(k,l); ground-truth clusters are contiguous blocks of
/// the given sizes.
struct SbmParams {
  Matrix b;                    // r x r block probabilities
  std::vector<Index> sizes;    // m_1..m_r
  double rho = 1.0;

  int r() const { return static_cast<int>(b.rows()); }
  Index n() const;
  void validate() const;
};

struct MmsbParams {
  Matrix b;       // r x r
  Vector alpha;   // Dirichlet concentration, positive
  Index n = 0;
  double rho = 1.0;

  int r() const { return static_cast<int>(b.rows()); }
  void validate() const;
};

struct MixtureParams {
  Matrix means;                // r x d
  std::vector<double> sigmas;  // per-component noise scale
  std::vector<double> weights; // mixing probabilities, on the simplex
  Index n = 0;

  int r() const { return static_cast<int>(means.rows()); }
  void validate() const;
};

struct MixtureSample {
  Matrix y;               // n x d observations
  HardMembership truth;
  Matrix noise;           // the raw W draws, for the reference matrix
  Matrix means;           // copy of component means
};

std::pair<AdjacencyMatrix, HardMembership> sample_sbm(const SbmParams& p, uint64_t seed);

std::pair<AdjacencyMatrix, SoftMembership> sample_mmsb(const MmsbParams& p, uint64_t seed);

MixtureSample sample_mixture(const MixtureParams& p, uint64_t seed);

/// Block-constant population similarity: P~_ij = rho*B_kl for i in C_k,
/// j in C_l, including the diagonal (P~_ii = rho*B_kk).
SimilarityMatrix population_matrix(const SbmParams& p);

/// Minimal margin between each block's diagonal similarity and the largest
/// cross-block entry in its rows. Positive iff S is weakly assortative.
/// Returns +infinity for a single cluster. Requires S constant on the
/// diagonal blocks of `truth` (within 1e-9).
double p_gap(const SimilarityMatrix& s, const HardMembership& truth);

/// Mixture reference similarity: 0 within clusters, and across clusters
/// -d_ab^2/2 - max{0, d_ab^2/2 + 2(W_i-W_j)^T(mu_a-mu_b)}.
SimilarityMatrix reference_matrix(const Matrix& means, const Matrix& noise,
                                  const HardMembership& truth);

/// Apply a random node permutation to an adjacency matrix and its ground
/// truth. Generators always emit contiguous blocks; callers that need
/// shuffled node order use this.
std::pair<AdjacencyMatrix, HardMembership> shuffle_nodes(
    const AdjacencyMatrix& a, const HardMembership& truth, uint64_t seed);

}  // namespace matr

#endif
