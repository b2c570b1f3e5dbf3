#include "matr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace matr {

namespace {

int relabel_compact(const std::vector<int>& in, std::vector<int>& out) {
  std::map<int, int> seen;
  out.resize(in.size());
  for (size_t i = 0; i < in.size(); ++i) {
    auto [it, fresh] = seen.emplace(in[i], static_cast<int>(seen.size()));
    (void)fresh;
    out[i] = it->second;
  }
  return static_cast<int>(seen.size());
}

}  // namespace

double nmi(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("nmi: length mismatch");
  const double n = static_cast<double>(a.size());
  if (a.empty()) throw std::invalid_argument("nmi: empty labelings");

  std::vector<int> ca, cb;
  const int ra = relabel_compact(a, ca);
  const int rb = relabel_compact(b, cb);

  std::vector<double> pa(ra, 0.0), pb(rb, 0.0);
  Matrix joint = Matrix::Zero(ra, rb);
  for (size_t i = 0; i < a.size(); ++i) {
    pa[ca[i]] += 1.0;
    pb[cb[i]] += 1.0;
    joint(ca[i], cb[i]) += 1.0;
  }

  auto entropy = [n](const std::vector<double>& counts) {
    double h = 0.0;
    for (double c : counts)
      if (c > 0) h -= (c / n) * std::log(c / n);
    return h;
  };
  const double ha = entropy(pa), hb = entropy(pb);
  if (ha == 0.0 && hb == 0.0) return 1.0;
  if (ha == 0.0 || hb == 0.0) return 0.0;

  double mi = 0.0;
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < rb; ++j) {
      const double pij = joint(i, j) / n;
      if (pij > 0) mi += pij * std::log(pij * n * n / (pa[i] * pb[j]));
    }
  return mi / std::sqrt(ha * hb);
}

double clustering_error(const NormalizedClusteringMatrix& x_hat,
                        const NormalizedClusteringMatrix& x0) {
  if (x_hat.x.n() != x0.x.n())
    throw std::invalid_argument("clustering_error: dimension mismatch");
  return (x_hat.x.mat() - x0.x.mat()).squaredNorm();
}

bool exact_recovery(const HardMembership& z_hat, const HardMembership& z0) {
  if (z_hat.n() != z0.n()) throw std::invalid_argument("exact_recovery: length mismatch");
  // a bijection exists iff the map hat->0 is a well-defined injective function
  std::map<int, int> fwd, bwd;
  for (Index i = 0; i < z_hat.n(); ++i) {
    const int h = z_hat.labels[i], t = z0.labels[i];
    auto [itf, newf] = fwd.emplace(h, t);
    if (!newf && itf->second != t) return false;
    auto [itb, newb] = bwd.emplace(t, h);
    if (!newb && itb->second != h) return false;
  }
  return true;
}

HardMembership align_labels(const HardMembership& pred, const HardMembership& truth) {
  const int rp = pred.r, rt = truth.r;
  Matrix overlap = Matrix::Zero(rp, rt);
  for (Index i = 0; i < pred.n(); ++i)
    overlap(pred.labels[i], truth.labels[i]) += 1.0;

  std::vector<int> mapping(rp);
  if (rp <= 8 && rp == rt) {
    std::vector<int> perm(rp), best_perm;
    std::iota(perm.begin(), perm.end(), 0);
    double best = -1.0;
    do {
      double score = 0.0;
      for (int k = 0; k < rp; ++k) score += overlap(k, perm[k]);
      if (score > best) {
        best = score;
        best_perm = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    mapping = best_perm;
  } else {
    // greedy maximum overlap; unmatched clusters keep a fresh label
    std::vector<bool> used(rt, false);
    std::vector<std::pair<double, std::pair<int, int>>> cells;
    for (int i = 0; i < rp; ++i)
      for (int j = 0; j < rt; ++j) cells.push_back({overlap(i, j), {i, j}});
    std::sort(cells.begin(), cells.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::fill(mapping.begin(), mapping.end(), -1);
    for (const auto& [score, ij] : cells) {
      (void)score;
      if (mapping[ij.first] == -1 && !used[ij.second]) {
        mapping[ij.first] = ij.second;
        used[ij.second] = true;
      }
    }
    int next = rt;
    for (int& m : mapping)
      if (m == -1) m = next++;
  }

  int rmax = std::max(rp, rt);
  for (int m : mapping) rmax = std::max(rmax, m + 1);
  std::vector<int> labels(pred.n());
  for (Index i = 0; i < pred.n(); ++i) labels[i] = mapping[pred.labels[i]];
  return HardMembership(std::move(labels), rmax);
}

EvalReport evaluate(const HardMembership& pred, const HardMembership& truth) {
  EvalReport rep;
  rep.nmi = nmi(pred.labels, truth.labels);
  rep.exact = exact_recovery(pred, truth);
  // X depends only on co-membership, so drop empty clusters before forming it
  std::vector<int> cp, ct;
  const int rp = relabel_compact(pred.labels, cp);
  const int rt = relabel_compact(truth.labels, ct);
  rep.frob_sq =
      clustering_error(normalized_clustering_matrix(HardMembership(cp, rp)),
                       normalized_clustering_matrix(HardMembership(ct, rt)));
  HardMembership aligned = align_labels(pred, truth);
  rep.aligned_confusion = Matrix::Zero(aligned.r, truth.r);
  for (Index i = 0; i < truth.n(); ++i)
    rep.aligned_confusion(aligned.labels[i], truth.labels[i]) += 1.0;
  return rep;
}

}  // namespace matr
