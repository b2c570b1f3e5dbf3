#ifndef MATR_TUNING_HPP
#define MATR_TUNING_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "matr/types.hpp"

namespace matr {

/// Ordered hyperparameter candidates (lambda, theta, or cluster counts).
struct CandidateGrid {
  std::vector<double> values;

  explicit CandidateGrid(std::vector<double> v) : values(std::move(v)) {
    if (values.empty()) throw std::invalid_argument("CandidateGrid: empty");
    for (size_t i = 1; i < values.size(); ++i)
      if (!(values[i] > values[i - 1]))
        throw std::invalid_argument("CandidateGrid: must be strictly increasing");
  }

  static CandidateGrid counts(int lo, int hi);  // {lo, lo+1, ..., hi}
  size_t size() const { return values.size(); }
};

struct TuningResult {
  double chosen = 0.0;
  int chosen_index = -1;
  std::vector<double> traces;  // -inf for failed candidates
  std::vector<std::optional<HardMembership>> memberships;
  HardMembership chosen_membership;
};

/// Runs the clusterer at each candidate, scores each clustering by
/// <S_hat, X_hat>, and returns the argmax (ties to the smallest
/// candidate). Candidates whose clusterer throws are skipped and recorded
/// with trace -inf; if all fail, throws estimation_error.
using Clusterer = std::function<HardMembership(double candidate)>;
TuningResult matr(const Clusterer& algorithm, const SimilarityMatrix& s_hat,
                  const CandidateGrid& grid);

struct SplitIndex {
  std::vector<Index> train;  // Q1
  std::vector<Index> test;   // Q2
};

/// Uniform random split of [n] with |train| = round(n * gamma_train).
SplitIndex node_splitting(Index n, double gamma_train, uint64_t seed);

/// Submatrix helpers for the CV blocks.
SymMatrix submatrix(const SymMatrix& m, const std::vector<Index>& idx);
Matrix cross_block(const SymMatrix& m, const std::vector<Index>& rows,
                   const std::vector<Index>& cols);

/// Labels each test node by its normalized link counts into the training
/// clusters: argmax_k (links to C_k)/m_k, ties to the smallest k.
HardMembership cluster_test(const Matrix& a21, const HardMembership& z11);

/// Trace-gap rule used when thresholding per-repetition traces.
struct DeltaRule {
  enum Kind { fixed, sdp2, mmsb } kind = fixed;
  double value = 0.0;       // fixed: the gap itself
  double rho_hat = 0.0;     // mmsb: edge density for the Delta_0 schedule

  static DeltaRule fixed_gap(double v) { return {fixed, v, 0.0}; }
  static DeltaRule sdp2_gap() { return {sdp2, 0.0, 0.0}; }
  static DeltaRule mmsb_gap(double rho) { return {mmsb, 0.0, rho}; }
};

struct RepetitionRecord {
  int r_star = 0;
  std::vector<double> traces;   // per candidate, -inf for failures
  double delta_used = 0.0;
  uint64_t split_seed = 0;
  bool dropped = false;         // all candidates failed in this repetition
};

struct SelectionResult {
  int r_hat = 0;                // lower median of the per-repetition picks
  std::vector<RepetitionRecord> per_rep;
  int j_reps = 0;
};

/// sqrt(r_max * ln n): the practical SDP-2 trace gap. The caller finds
/// r_max as the argmax candidate of a first pass over the traces.
double delta_sdp2(int r_max, Index n);

struct MmsbSelection {
  int r_hat_index = 0;   // index into the candidate grid
  double delta_used = 0.0;
};

/// Gap-halving selection for MMSB traces: start from
/// Delta0 = (n rho)^{3/2} (ln n)^{1.01}, pick the smallest adequate
/// candidate, and halve Delta while the step up to the pick is not a
/// clear jump (at most 50 halvings). Candidates must be consecutive counts.
MmsbSelection delta_mmsb_select(const std::vector<double>& traces, Index n,
                                double rho_hat);

/// Fits on the training block, extends to test nodes via cluster_test, and
/// scores <A22, X22> per candidate count; per-repetition threshold by the
/// given DeltaRule (two passes for the sdp2 rule). r_hat is the lower
/// median over repetitions.
using TrainClusterer =
    std::function<HardMembership(const AdjacencyMatrix& a11, int r, uint64_t seed)>;
SelectionResult matr_cv_sbm(const TrainClusterer& algorithm,
                            const AdjacencyMatrix& a, const CandidateGrid& r_grid,
                            int j_reps, double gamma_train, const DeltaRule& rule,
                            uint64_t seed);

/// MMSB variant: SPACL on the training block, regression extension of the
/// soft memberships, similarity A^2 - diag(A^2) built on the full graph and
/// sliced to the test block. Selection per repetition by the mmsb gap rule.
SelectionResult matr_cv_mmsb(const AdjacencyMatrix& a, const CandidateGrid& r_grid,
                             int j_reps, double gamma_train, uint64_t seed);

enum class BandwidthMethod { ds, knn, mst };

/// Heuristic kernel bandwidths: DS quantile rule, mean k-NN distance with
/// k = round(ln n)+1, or the longest MST edge.
double baseline_bandwidth(const Matrix& y, BandwidthMethod method);

/// Edge density among nodes whose degree falls between the 25th and 75th
/// degree percentiles; falls back to the global density when fewer than
/// two nodes survive the filter.
double lambda_cl(const AdjacencyMatrix& a);

/// rho_hat = sum_{i<j} A_ij / C(n,2).
double density_estimate(const AdjacencyMatrix& a);

}  // namespace matr

#endif
