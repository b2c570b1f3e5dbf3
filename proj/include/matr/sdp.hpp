#ifndef MATR_SDP_HPP
#define MATR_SDP_HPP

#include <cstdint>
#include <optional>

#include "matr/types.hpp"

namespace matr {

struct SolverOptions {
  double tolerance = 1e-4;          // relative residual cutoff
  int max_iter = 5000;
  double penalty = 1.0;             // initial ADMM penalty, adapted in [1e-3, 1e3]
  std::optional<Matrix> warm_start; // previous X~ from a sweep neighbour
};

struct SdpSolution {
  SymMatrix x_tilde;
  int iterations = 0;
  double primal_residual = 0.0;  // relative, comparable against `tolerance`
  double dual_residual = 0.0;
  double objective = 0.0;
  bool converged = false;
  double tolerance = 0.0;        // the cutoff the residuals were checked against
};

/// max trace(AX) - lambda trace(X E_n)  s.t.  X psd, X >= 0, diag(X) = 1.
/// Non-convergence at the iteration cap returns converged=false; the caller
/// decides whether to use the iterate.
SdpSolution solve_sdp1(const AdjacencyMatrix& a, double lambda,
                       const SolverOptions& opts = {});

/// max trace(AX)  s.t.  X psd, X >= 0, X1 = 1, trace(X) = r'.
SdpSolution solve_sdp2(const AdjacencyMatrix& a, int r_prime,
                       const SolverOptions& opts = {});

/// k-means on the top-r eigenvectors of M. Rounds SDP output to a hard
/// clustering, and doubles as plain spectral clustering on kernel matrices.
HardMembership spectral_round(const SymMatrix& m, int r, int restarts, uint64_t seed);

struct FeasibilityReport {
  double min_eigenvalue = 0.0;
  double min_entry = 0.0;
  double max_diag_dev = 0.0;   // SDP-1: max |X_ii - 1|
  double row_sum_dev = 0.0;    // SDP-2: ||X1 - 1||_inf
  double trace_dev = 0.0;      // SDP-2: |trace(X) - r'|
};

FeasibilityReport feasibility_report_sdp1(const SymMatrix& x);
FeasibilityReport feasibility_report_sdp2(const SymMatrix& x, int r_prime);

}  // namespace matr

#endif
