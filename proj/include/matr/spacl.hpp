#ifndef MATR_SPACL_HPP
#define MATR_SPACL_HPP

#include <vector>

#include "matr/matrices.hpp"
#include "matr/types.hpp"

namespace matr {

struct MmsbEstimate {
  SoftMembership theta_hat;        // n x r, rows on the simplex
  Matrix b_hat;                    // r x r, symmetric, entries in [0,1]
  std::vector<Index> pure_nodes;   // the r indices picked by SPA
};

/// Successive projection: repeatedly pick the row of maximal norm and
/// project all rows onto the orthogonal complement of the pick. Returns r
/// distinct row indices (the simplex-vertex candidates).
std::vector<Index> spa(const Matrix& v, int r);

/// Spectral MMSB estimation: top-r eigenpairs of A, SPA to find pure
/// nodes, then Theta = U (U_S)^{-1} with rows projected to the simplex and
/// B = U_S Lambda U_S^T clipped to [0,1].
MmsbEstimate estimate_mmsb(const AdjacencyMatrix& a, int r);

/// Same pipeline from precomputed eigenpairs (callers sweeping r reuse a
/// single decomposition); `eig` must hold at least r leading pairs of A.
MmsbEstimate estimate_mmsb_from_eig(const EigenPairs& eig, int r);

/// Extends training-node memberships to test nodes by regression:
/// Theta22 = A21 Theta11 (Theta11^T Theta11)^{-1} B^{-1}, rows projected
/// onto the simplex. Throws estimation_error when B or Theta11 is singular.
SoftMembership regress_test_memberships(const Matrix& a21,
                                        const SoftMembership& theta11,
                                        const Matrix& b_hat);

}  // namespace matr

#endif
