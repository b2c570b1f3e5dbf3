#include "matr/matrices.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "matr/rng.hpp"

namespace matr {

EigenPairs sym_eig_full(const SymMatrix& m) {
  const int n = static_cast<int>(m.n());
  Matrix a = m.mat();  // column-major, overwritten with eigenvectors
  Vector w(n);
  const int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, a.data(), n, w.data());
  if (info != 0)
    throw solver_error("sym_eig: dsyevd failed to converge, info=" +
                       std::to_string(info));
  // LAPACK returns ascending order; flip to descending.
  EigenPairs out;
  out.values = w.reverse();
  out.vectors = a.rowwise().reverse();
  return out;
}

EigenPairs sym_eig(const SymMatrix& m, int k) {
  if (k < 1 || k > m.n())
    throw std::invalid_argument("sym_eig: need 1 <= k <= n");
  EigenPairs full = sym_eig_full(m);
  EigenPairs out;
  out.values = full.values.head(k);
  out.vectors = full.vectors.leftCols(k);
  return out;
}

SymMatrix project_psd(const SymMatrix& m) {
  EigenPairs e = sym_eig_full(m);
  Vector clipped = e.values.cwiseMax(0.0);
  return SymMatrix(e.vectors * clipped.asDiagonal() * e.vectors.transpose());
}

Vector project_simplex(const Vector& v) {
  const Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  int rho = 0;
  for (Index j = 0; j < n; ++j) {
    cum += u[j];
    const double t = (cum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0) {
      rho = static_cast<int>(j + 1);
      theta = t;
    }
  }
  (void)rho;
  return (v.array() - theta).cwiseMax(0.0);
}

namespace {

double assign_labels(const Matrix& rows, const Matrix& centroids,
                     std::vector<int>& labels) {
  const Index n = rows.rows();
  const int k = static_cast<int>(centroids.rows());
  double wcss = 0.0;
  for (Index i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int c = 0; c < k; ++c) {
      const double d = (rows.row(i) - centroids.row(c)).squaredNorm();
      if (d < best) {
        best = d;
        arg = c;
      }
    }
    labels[i] = arg;
    wcss += best;
  }
  return wcss;
}

Matrix kmeanspp_init(const Matrix& rows, int k, Rng& rng) {
  const Index n = rows.rows();
  Matrix centroids(k, rows.cols());
  centroids.row(0) = rows.row(static_cast<Index>(rng.uniform_int(n)));
  Vector d2 = (rows.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Index pick = 0;
    if (total > 0) {
      double target = rng.uniform() * total, acc = 0.0;
      for (Index i = 0; i < n; ++i) {
        acc += d2(i);
        if (acc >= target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Index>(rng.uniform_int(n));
    }
    centroids.row(c) = rows.row(pick);
    d2 = d2.cwiseMin(
        (rows.rowwise() - centroids.row(c)).rowwise().squaredNorm());
  }
  return centroids;
}

}  // namespace

KmeansResult kmeans(const Matrix& rows, int k, int restarts, uint64_t seed,
                    std::vector<std::vector<double>>* wcss_trace) {
  const Index n = rows.rows();
  if (k < 1 || k > n) throw std::invalid_argument("kmeans: need 1 <= k <= n");
  if (restarts < 1) throw std::invalid_argument("kmeans: restarts >= 1");

  KmeansResult best;
  best.wcss = std::numeric_limits<double>::infinity();

  for (int rep = 0; rep < restarts; ++rep) {
    Rng rng(Rng::subseed(seed, static_cast<uint64_t>(rep)));
    Matrix centroids = kmeanspp_init(rows, k, rng);
    std::vector<int> labels(n, -1), prev(n, -2);
    double wcss = assign_labels(rows, centroids, labels);
    std::vector<double> trace{wcss};

    for (int iter = 0; iter < 300 && labels != prev; ++iter) {
      prev = labels;
      // recompute centroids
      Matrix sums = Matrix::Zero(k, rows.cols());
      std::vector<Index> counts(k, 0);
      for (Index i = 0; i < n; ++i) {
        sums.row(labels[i]) += rows.row(i);
        counts[labels[i]]++;
      }
      for (int c = 0; c < k; ++c) {
        if (counts[c] > 0) {
          centroids.row(c) = sums.row(c) / static_cast<double>(counts[c]);
        } else {
          // empty cluster: reseed at the point farthest from its centroid
          Index far = 0;
          double fd = -1.0;
          for (Index i = 0; i < n; ++i) {
            const double d =
                (rows.row(i) - centroids.row(labels[i])).squaredNorm();
            if (d > fd) {
              fd = d;
              far = i;
            }
          }
          centroids.row(c) = rows.row(far);
        }
      }
      wcss = assign_labels(rows, centroids, labels);
      trace.push_back(wcss);
    }
    if (wcss_trace) wcss_trace->push_back(std::move(trace));

    if (wcss < best.wcss) {
      best.wcss = wcss;
      best.labels = labels;
    }
  }
  return best;
}

SymMatrix pairwise_sq_dist(const Matrix& y) {
  const Index n = y.rows();
  Vector sq = y.rowwise().squaredNorm();
  Matrix d = sq.replicate(1, n) + sq.transpose().replicate(n, 1) -
             2.0 * (y * y.transpose());
  d = d.cwiseMax(0.0);
  d.diagonal().setZero();
  return SymMatrix(std::move(d));
}

}  // namespace matr
