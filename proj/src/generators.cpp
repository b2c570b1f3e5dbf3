#include "matr/generators.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "matr/rng.hpp"

namespace matr {

Index SbmParams::n() const {
  return std::accumulate(sizes.begin(), sizes.end(), Index{0});
}

void SbmParams::validate() const {
  if (b.rows() != b.cols() || b.rows() < 1)
    throw std::invalid_argument("SbmParams: B must be square, r >= 1");
  if (static_cast<int>(sizes.size()) != r())
    throw std::invalid_argument("SbmParams: sizes must have one entry per cluster");
  for (Index m : sizes)
    if (m < 1) throw std::invalid_argument("SbmParams: empty cluster");
  if (n() < 2) throw std::invalid_argument("SbmParams: need n >= 2");
  for (Index i = 0; i < b.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) {
      const double p = rho * b(i, j);
      if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("SbmParams: rho*B entries must lie in [0,1]");
    }
}

void MmsbParams::validate() const {
  if (b.rows() != b.cols() || b.rows() < 1)
    throw std::invalid_argument("MmsbParams: B must be square");
  if (alpha.size() != b.rows())
    throw std::invalid_argument("MmsbParams: alpha size must match B");
  for (Index k = 0; k < alpha.size(); ++k)
    if (!(alpha(k) > 0)) throw std::invalid_argument("MmsbParams: alpha_k > 0 required");
  if (n < 2) throw std::invalid_argument("MmsbParams: need n >= 2");
  for (Index i = 0; i < b.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) {
      const double p = rho * b(i, j);
      if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("MmsbParams: rho*B entries must lie in [0,1]");
    }
}

void MixtureParams::validate() const {
  if (means.rows() < 1) throw std::invalid_argument("MixtureParams: need >= 1 component");
  if (static_cast<int>(sigmas.size()) != r() || static_cast<int>(weights.size()) != r())
    throw std::invalid_argument("MixtureParams: sigmas/weights must match components");
  double wsum = 0.0;
  for (double w : weights) {
    if (w < 0) throw std::invalid_argument("MixtureParams: negative weight");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-9)
    throw std::invalid_argument("MixtureParams: weights must sum to 1");
  for (double s : sigmas)
    if (s < 0) throw std::invalid_argument("MixtureParams: sigma >= 0 required");
  if (n < 1) throw std::invalid_argument("MixtureParams: need n >= 1");
}

std::pair<AdjacencyMatrix, HardMembership> sample_sbm(const SbmParams& p, uint64_t seed) {
  p.validate();
  const Index n = p.n();
  std::vector<int> labels(n);
  Index pos = 0;
  for (int k = 0; k < p.r(); ++k)
    for (Index i = 0; i < p.sizes[k]; ++i) labels[pos++] = k;

  Rng rng(seed);
  Matrix a = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const double prob = p.rho * p.b(labels[i], labels[j]);
      if (rng.uniform() < prob) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
      }
    }
  return {AdjacencyMatrix(std::move(a)), HardMembership(std::move(labels), p.r())};
}

std::pair<AdjacencyMatrix, SoftMembership> sample_mmsb(const MmsbParams& p, uint64_t seed) {
  p.validate();
  Rng rng(seed);
  const int r = p.r();
  Matrix theta(p.n, r);
  for (Index i = 0; i < p.n; ++i) {
    double sum = 0.0;
    for (int k = 0; k < r; ++k) {
      theta(i, k) = rng.gamma(p.alpha(k));
      sum += theta(i, k);
    }
    theta.row(i) /= sum;
  }

  const Matrix pb = p.rho * p.b;
  Matrix a = Matrix::Zero(p.n, p.n);
  for (Index i = 0; i < p.n; ++i)
    for (Index j = i + 1; j < p.n; ++j) {
      const double prob = theta.row(i) * pb * theta.row(j).transpose();
      if (rng.uniform() < prob) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
      }
    }
  return {AdjacencyMatrix(std::move(a)), SoftMembership(std::move(theta))};
}

MixtureSample sample_mixture(const MixtureParams& p, uint64_t seed) {
  p.validate();
  Rng rng(seed);
  const Index d = p.means.cols();
  MixtureSample out;
  out.y.resize(p.n, d);
  out.noise.resize(p.n, d);
  out.means = p.means;

  std::vector<int> labels(p.n);
  for (Index i = 0; i < p.n; ++i) {
    double u = rng.uniform(), acc = 0.0;
    int comp = p.r() - 1;
    for (int k = 0; k < p.r(); ++k) {
      acc += p.weights[k];
      if (u < acc) {
        comp = k;
        break;
      }
    }
    labels[i] = comp;
    for (Index m = 0; m < d; ++m) out.noise(i, m) = p.sigmas[comp] * rng.normal();
    out.y.row(i) = p.means.row(comp) + out.noise.row(i);
  }
  out.truth = HardMembership(std::move(labels), p.r());
  return out;
}

SimilarityMatrix population_matrix(const SbmParams& p) {
  p.validate();
  const Index n = p.n();
  std::vector<int> labels(n);
  Index pos = 0;
  for (int k = 0; k < p.r(); ++k)
    for (Index i = 0; i < p.sizes[k]; ++i) labels[pos++] = k;

  Matrix s(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) s(i, j) = p.rho * p.b(labels[i], labels[j]);
  return SimilarityMatrix(std::move(s));
}

double p_gap(const SimilarityMatrix& s, const HardMembership& truth) {
  if (s.n() != truth.n())
    throw std::invalid_argument("p_gap: dimension mismatch");
  const int r = truth.r;
  const auto sizes = truth.sizes();
  for (Index m : sizes)
    if (m < 1) throw std::invalid_argument("p_gap: empty cluster");

  // diagonal-block constancy check, and the a_kk values
  std::vector<double> akk(r, std::numeric_limits<double>::quiet_NaN());
  for (Index i = 0; i < s.n(); ++i)
    for (Index j = 0; j < s.n(); ++j) {
      if (truth.labels[i] != truth.labels[j]) continue;
      const int k = truth.labels[i];
      if (std::isnan(akk[k]))
        akk[k] = s(i, j);
      else if (std::abs(s(i, j) - akk[k]) > 1e-9)
        throw std::invalid_argument("p_gap: diagonal block not constant");
    }

  if (r == 1) return std::numeric_limits<double>::infinity();

  double gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k < r; ++k) {
    double cross = -std::numeric_limits<double>::infinity();
    for (Index i = 0; i < s.n(); ++i) {
      if (truth.labels[i] != k) continue;
      for (Index j = 0; j < s.n(); ++j)
        if (truth.labels[j] != k) cross = std::max(cross, s(i, j));
    }
    gap = std::min(gap, akk[k] - cross);
  }
  return gap;
}

SimilarityMatrix reference_matrix(const Matrix& means, const Matrix& noise,
                                  const HardMembership& truth) {
  const Index n = truth.n();
  if (noise.rows() != n || noise.cols() != means.cols())
    throw std::invalid_argument("reference_matrix: shape mismatch");

  Matrix s = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const int a = truth.labels[i], b = truth.labels[j];
      if (a == b) continue;
      const Vector mu_diff = (means.row(a) - means.row(b)).transpose();
      const double d2 = mu_diff.squaredNorm();
      const double corr = d2 / 2.0 + 2.0 * (noise.row(i) - noise.row(j)).dot(mu_diff.transpose());
      const double v = -d2 / 2.0 - std::max(0.0, corr);
      s(i, j) = v;
      s(j, i) = v;
    }
  return SimilarityMatrix(std::move(s));
}

std::pair<AdjacencyMatrix, HardMembership> shuffle_nodes(
    const AdjacencyMatrix& a, const HardMembership& truth, uint64_t seed) {
  Rng rng(seed);
  const Index n = a.n();
  const std::vector<int> perm = rng.permutation(static_cast<int>(n));
  Matrix out(n, n);
  std::vector<int> labels(n);
  for (Index i = 0; i < n; ++i) {
    labels[perm[i]] = truth.labels[i];
    for (Index j = 0; j < n; ++j) out(perm[i], perm[j]) = a(i, j);
  }
  return {AdjacencyMatrix(std::move(out)), HardMembership(std::move(labels), truth.r)};
}

}  // namespace matr
