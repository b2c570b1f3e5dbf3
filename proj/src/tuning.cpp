#include "matr/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "matr/matrices.hpp"
#include "matr/rng.hpp"
#include "matr/similarity.hpp"
#include "matr/spacl.hpp"

namespace matr {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

CandidateGrid CandidateGrid::counts(int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("CandidateGrid::counts: lo > hi");
  std::vector<double> v;
  for (int r = lo; r <= hi; ++r) v.push_back(static_cast<double>(r));
  return CandidateGrid(std::move(v));
}

TuningResult matr(const Clusterer& algorithm, const SimilarityMatrix& s_hat,
                  const CandidateGrid& grid) {
  TuningResult res;
  res.traces.assign(grid.size(), kNegInf);
  res.memberships.resize(grid.size());

  for (size_t t = 0; t < grid.size(); ++t) {
    try {
      HardMembership z = algorithm(grid.values[t]);
      if (z.n() != s_hat.n())
        throw estimation_error("matr: clusterer output size mismatch");
      res.traces[t] = trace_criterion(s_hat, z);
      res.memberships[t] = std::move(z);
    } catch (const std::exception&) {
      // candidate skipped, trace stays -inf
    }
  }

  for (size_t t = 0; t < grid.size(); ++t) {
    if (!res.memberships[t]) continue;
    if (res.chosen_index < 0 || res.traces[t] > res.traces[res.chosen_index])
      res.chosen_index = static_cast<int>(t);  // ties keep the smaller candidate
  }
  if (res.chosen_index < 0)
    throw estimation_error("matr: every candidate failed");
  res.chosen = grid.values[res.chosen_index];
  res.chosen_membership = *res.memberships[res.chosen_index];
  return res;
}

SplitIndex node_splitting(Index n, double gamma_train, uint64_t seed) {
  if (!(gamma_train > 0.0 && gamma_train < 1.0))
    throw std::invalid_argument("node_splitting: gamma_train in (0,1) required");
  const Index n_train = static_cast<Index>(std::llround(n * gamma_train));
  if (n_train < 1 || n_train >= n)
    throw std::invalid_argument("node_splitting: degenerate split");

  Rng rng(seed);
  std::vector<int> perm = rng.permutation(static_cast<int>(n));
  SplitIndex split;
  split.train.assign(perm.begin(), perm.begin() + n_train);
  split.test.assign(perm.begin() + n_train, perm.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

SymMatrix submatrix(const SymMatrix& m, const std::vector<Index>& idx) {
  Matrix out(idx.size(), idx.size());
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < idx.size(); ++j) out(i, j) = m(idx[i], idx[j]);
  return SymMatrix(std::move(out));
}

Matrix cross_block(const SymMatrix& m, const std::vector<Index>& rows,
                   const std::vector<Index>& cols) {
  Matrix out(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

HardMembership cluster_test(const Matrix& a21, const HardMembership& z11) {
  if (a21.cols() != z11.n())
    throw std::invalid_argument("cluster_test: A21/Z11 mismatch");
  const auto sizes = z11.sizes();
  for (Index m : sizes)
    if (m < 1) throw std::invalid_argument("cluster_test: empty training cluster");

  const Index n_test = a21.rows();
  std::vector<int> labels(n_test, 0);
  for (Index i = 0; i < n_test; ++i) {
    double best = -1.0;
    int arg = 0;
    for (int k = 0; k < z11.r; ++k) {
      double links = 0.0;
      for (Index j = 0; j < a21.cols(); ++j)
        if (z11.labels[j] == k) links += a21(i, j);
      const double score = links / static_cast<double>(sizes[k]);
      if (score > best) {  // strict: ties keep the smallest k
        best = score;
        arg = k;
      }
    }
    labels[i] = arg;
  }
  return HardMembership(std::move(labels), z11.r);
}

double delta_sdp2(int r_max, Index n) {
  if (r_max < 1 || n < 2) throw std::invalid_argument("delta_sdp2: r_max >= 1, n >= 2");
  return std::sqrt(static_cast<double>(r_max) * std::log(static_cast<double>(n)));
}

MmsbSelection delta_mmsb_select(const std::vector<double>& traces, Index n,
                                double rho_hat) {
  if (traces.empty()) throw std::invalid_argument("delta_mmsb_select: no traces");
  MmsbSelection sel;
  if (traces.size() == 1) return sel;

  const double lmax = *std::max_element(traces.begin(), traces.end());
  double delta = std::pow(static_cast<double>(n) * rho_hat, 1.5) *
                 std::pow(std::log(static_cast<double>(n)), 1.01);

  int pick = 0;
  for (int halvings = 0; halvings <= 50; ++halvings) {
    pick = 0;
    while (traces[pick] < lmax - delta) ++pick;
    sel.r_hat_index = pick;
    sel.delta_used = delta;
    // the step up into the pick must be a clear jump; the grid minimum has
    // no predecessor and counts as unclear
    if (pick > 0 && traces[pick] - traces[pick - 1] > delta) break;
    delta /= 2.0;
  }
  return sel;
}

namespace {

int lower_median(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

int threshold_pick(const std::vector<double>& traces, double delta) {
  const double lmax = *std::max_element(traces.begin(), traces.end());
  for (size_t t = 0; t < traces.size(); ++t)
    if (traces[t] >= lmax - delta) return static_cast<int>(t);
  return static_cast<int>(traces.size() - 1);
}

}  // namespace

SelectionResult matr_cv_sbm(const TrainClusterer& algorithm,
                            const AdjacencyMatrix& a, const CandidateGrid& r_grid,
                            int j_reps, double gamma_train, const DeltaRule& rule,
                            uint64_t seed) {
  if (j_reps < 1) throw std::invalid_argument("matr_cv_sbm: J >= 1 required");
  const Index n = a.n();

  SelectionResult res;
  std::vector<int> picks;
  for (int j = 0; j < j_reps; ++j) {
    RepetitionRecord rec;
    rec.split_seed = Rng::subseed(seed, j, 0);
    const SplitIndex split = node_splitting(n, gamma_train, rec.split_seed);
    const SymMatrix a11 = submatrix(a, split.train);
    const SymMatrix a22 = submatrix(a, split.test);
    const Matrix a21 = cross_block(a, split.test, split.train);

    rec.traces.assign(r_grid.size(), kNegInf);
    for (size_t t = 0; t < r_grid.size(); ++t) {
      const int rt = static_cast<int>(r_grid.values[t]);
      try {
        HardMembership z11 =
            algorithm(a11, rt, Rng::subseed(seed, j, t + 1));
        HardMembership z22 = cluster_test(a21, z11);
        rec.traces[t] = trace_criterion(a22, z22);
      } catch (const std::exception&) {
        // candidate recorded as failed
      }
    }

    if (std::none_of(rec.traces.begin(), rec.traces.end(),
                     [](double v) { return v > kNegInf; })) {
      rec.dropped = true;
      res.per_rep.push_back(std::move(rec));
      continue;
    }

    double delta = rule.value;
    if (rule.kind == DeltaRule::sdp2) {
      // pass 1 with Delta=0 locates r_max, pass 2 applies the gap
      const int argmax = threshold_pick(rec.traces, 0.0);
      const int r_max = static_cast<int>(r_grid.values[argmax]);
      delta = delta_sdp2(r_max, n);
    } else if (rule.kind == DeltaRule::mmsb) {
      throw std::invalid_argument("matr_cv_sbm: use matr_cv_mmsb for the mmsb rule");
    }
    rec.delta_used = delta;
    rec.r_star = static_cast<int>(r_grid.values[threshold_pick(rec.traces, delta)]);
    picks.push_back(rec.r_star);
    res.per_rep.push_back(std::move(rec));
  }

  if (picks.empty())
    throw estimation_error("matr_cv_sbm: every repetition failed");
  res.j_reps = static_cast<int>(picks.size());
  res.r_hat = lower_median(std::move(picks));
  return res;
}

SelectionResult matr_cv_mmsb(const AdjacencyMatrix& a, const CandidateGrid& r_grid,
                             int j_reps, double gamma_train, uint64_t seed) {
  if (j_reps < 1) throw std::invalid_argument("matr_cv_mmsb: J >= 1 required");
  const Index n = a.n();
  const double rho_hat = density_estimate(a);
  const SimilarityMatrix s_hat = a2_similarity(a);
  const int r_top = static_cast<int>(r_grid.values.back());

  SelectionResult res;
  std::vector<int> picks;
  for (int j = 0; j < j_reps; ++j) {
    RepetitionRecord rec;
    rec.split_seed = Rng::subseed(seed, j, 0);
    const SplitIndex split = node_splitting(n, gamma_train, rec.split_seed);
    const SymMatrix a11 = submatrix(a, split.train);
    const Matrix a21 = cross_block(a, split.test, split.train);
    const SymMatrix s22 = submatrix(s_hat, split.test);

    // one decomposition per split, shared by every candidate count
    const EigenPairs eig =
        sym_eig(a11, std::min<int>(r_top, static_cast<int>(a11.n())));

    rec.traces.assign(r_grid.size(), kNegInf);
    for (size_t t = 0; t < r_grid.size(); ++t) {
      const int rt = static_cast<int>(r_grid.values[t]);
      if (rt > eig.k()) continue;
      try {
        MmsbEstimate est = estimate_mmsb_from_eig(eig, rt);
        SoftMembership theta22 =
            regress_test_memberships(a21, est.theta_hat, est.b_hat);
        rec.traces[t] = trace_criterion(s22, theta22);
      } catch (const std::exception&) {
        // singular B_hat or similar: candidate cannot be selected
      }
    }

    if (std::none_of(rec.traces.begin(), rec.traces.end(),
                     [](double v) { return v > kNegInf; })) {
      rec.dropped = true;
      res.per_rep.push_back(std::move(rec));
      continue;
    }

    const MmsbSelection sel = delta_mmsb_select(rec.traces, n, rho_hat);
    rec.delta_used = sel.delta_used;
    rec.r_star = static_cast<int>(r_grid.values[sel.r_hat_index]);
    picks.push_back(rec.r_star);
    res.per_rep.push_back(std::move(rec));
  }

  if (picks.empty())
    throw estimation_error("matr_cv_mmsb: every repetition failed");
  res.j_reps = static_cast<int>(picks.size());
  res.r_hat = lower_median(std::move(picks));
  return res;
}

namespace {

// Wilson-Hilferty approximation of the chi-square quantile; adequate for
// the DS heuristic (relative error well under 1% for d >= 2).
double chi_sq_quantile_95(int d) {
  const double z = 1.6448536269514722;  // Phi^{-1}(0.95)
  const double a = 2.0 / (9.0 * d);
  const double c = 1.0 - a + z * std::sqrt(a);
  return d * c * c * c;
}

double quantile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

}  // namespace

double baseline_bandwidth(const Matrix& y, BandwidthMethod method) {
  const Index n = y.rows();
  if (n < 2) throw std::invalid_argument("baseline_bandwidth: need n >= 2");
  const Matrix d2 = pairwise_sq_dist(y).mat();

  switch (method) {
    case BandwidthMethod::ds: {
      std::vector<double> q(n);
      for (Index i = 0; i < n; ++i) {
        std::vector<double> dist;
        dist.reserve(n - 1);
        for (Index j = 0; j < n; ++j)
          if (j != i) dist.push_back(std::sqrt(d2(i, j)));
        q[i] = quantile(std::move(dist), 0.05);
      }
      return quantile(std::move(q), 0.95) /
             std::sqrt(chi_sq_quantile_95(static_cast<int>(y.cols())));
    }
    case BandwidthMethod::knn: {
      const int k = static_cast<int>(
          std::llround(std::log(static_cast<double>(n)))) + 1;
      const int kk = std::min<int>(k, static_cast<int>(n) - 1);
      double total = 0.0;
      for (Index i = 0; i < n; ++i) {
        std::vector<double> dist;
        dist.reserve(n - 1);
        for (Index j = 0; j < n; ++j)
          if (j != i) dist.push_back(std::sqrt(d2(i, j)));
        std::nth_element(dist.begin(), dist.begin() + (kk - 1), dist.end());
        total += dist[kk - 1];
      }
      return total / static_cast<double>(n);
    }
    case BandwidthMethod::mst: {
      // Prim's on the complete Euclidean graph
      std::vector<bool> in_tree(n, false);
      std::vector<double> best(n, std::numeric_limits<double>::infinity());
      in_tree[0] = true;
      for (Index j = 1; j < n; ++j) best[j] = d2(0, j);
      double longest_sq = 0.0;
      for (Index step = 1; step < n; ++step) {
        Index next = -1;
        double nd = std::numeric_limits<double>::infinity();
        for (Index j = 0; j < n; ++j)
          if (!in_tree[j] && best[j] < nd) {
            nd = best[j];
            next = j;
          }
        longest_sq = std::max(longest_sq, nd);
        in_tree[next] = true;
        for (Index j = 0; j < n; ++j)
          if (!in_tree[j]) best[j] = std::min(best[j], d2(next, j));
      }
      return std::sqrt(longest_sq);
    }
  }
  throw std::invalid_argument("baseline_bandwidth: unknown method");
}

double lambda_cl(const AdjacencyMatrix& a) {
  const Index n = a.n();
  const double total_pairs = static_cast<double>(n) * (n - 1) / 2.0;
  const double global =
      total_pairs > 0 ? a.mat().sum() / 2.0 / total_pairs : 0.0;

  std::vector<double> degrees(n);
  for (Index i = 0; i < n; ++i) degrees[i] = a.mat().row(i).sum();
  std::vector<double> sorted = degrees;
  const double lo = quantile(sorted, 0.25), hi = quantile(sorted, 0.75);

  std::vector<Index> keep;
  for (Index i = 0; i < n; ++i)
    if (degrees[i] >= lo && degrees[i] <= hi) keep.push_back(i);
  if (keep.size() < 2) return global;

  double edges = 0.0;
  for (size_t i = 0; i < keep.size(); ++i)
    for (size_t j = i + 1; j < keep.size(); ++j) edges += a(keep[i], keep[j]);
  const double pairs =
      static_cast<double>(keep.size()) * (keep.size() - 1) / 2.0;
  return edges / pairs;
}

double density_estimate(const AdjacencyMatrix& a) {
  const Index n = a.n();
  if (n < 2) return 0.0;
  const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
  return a.mat().sum() / 2.0 / pairs;
}

}  // namespace matr
