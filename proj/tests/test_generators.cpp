#include <doctest.h>

#include <cmath>
#include <limits>

#include "matr/generators.hpp"
#include "matr/rng.hpp"

using namespace matr;

namespace {

// 4x4 strongly assortative block matrix used throughout the SBM fixtures
Matrix block4(double diag, double pair, double cross) {
  Matrix b = Matrix::Constant(4, 4, cross);
  b(0, 1) = b(1, 0) = b(2, 3) = b(3, 2) = pair;
  b.diagonal().setConstant(diag);
  return b;
}

}  // namespace

TEST_CASE("sample_sbm degenerate probabilities give disjoint cliques") {
  SbmParams p;
  p.b = Matrix::Identity(2, 2);
  p.sizes = {3, 3};
  auto [a, z] = sample_sbm(p, 1);
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j) {
      const double want = (i != j && i / 3 == j / 3) ? 1.0 : 0.0;
      CHECK(a(i, j) == want);
    }
  CHECK(z.labels == std::vector<int>{0, 0, 0, 1, 1, 1});
}

TEST_CASE("sample_sbm zero matrix gives empty graph") {
  SbmParams p;
  p.b = Matrix::Zero(2, 2);
  p.sizes = {4, 4};
  auto [a, z] = sample_sbm(p, 3);
  CHECK(a.mat().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sample_sbm block densities near rho*B at n=400") {
  SbmParams p;
  p.b = block4(0.8, 0.5, 0.3);
  p.sizes = {100, 100, 100, 100};
  p.rho = 0.6;
  auto [a, z] = sample_sbm(p, 7);
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      const double prob = p.rho * p.b(k, l);
      double sum = 0, pairs = 0;
      for (Index i = 100 * k; i < 100 * (k + 1); ++i)
        for (Index j = 100 * l; j < 100 * (l + 1); ++j) {
          if (i == j) continue;
          sum += a(i, j);
          pairs += 1;
        }
      const double sigma = std::sqrt(prob * (1 - prob) / pairs);
      CHECK(std::abs(sum / pairs - prob) < 3.5 * sigma);
    }
}

TEST_CASE("sample_sbm outputs symmetric 0/1 with zero diagonal") {
  SbmParams p;
  p.b = block4(0.8, 0.6, 0.3);
  p.sizes = {20, 20, 20, 20};
  p.rho = 0.5;
  auto [a, z] = sample_sbm(p, 11);
  for (Index i = 0; i < a.n(); ++i) {
    CHECK(a(i, i) == 0.0);
    for (Index j = 0; j < a.n(); ++j) {
      CHECK(a(i, j) == a(j, i));
      CHECK((a(i, j) == 0.0 || a(i, j) == 1.0));
    }
  }
}

TEST_CASE("sample_sbm density concentration over seeds") {
  SbmParams p;
  p.b = block4(0.8, 0.5, 0.3);
  p.sizes = {100, 100, 100, 100};
  p.rho = 0.5;
  // mean within-block density over 20 seeds stays within 4 sigma of rho*B
  double mean_d00 = 0, mean_d01 = 0;
  const double pairs00 = 100 * 99, pairs01 = 100 * 100;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto [a, z] = sample_sbm(p, seed);
    mean_d00 += a.mat().block(0, 0, 100, 100).sum() / pairs00 / 20.0;
    mean_d01 += a.mat().block(0, 100, 100, 100).sum() / pairs01 / 20.0;
  }
  const double p00 = 0.4, p01 = 0.25;
  CHECK(std::abs(mean_d00 - p00) < 4 * std::sqrt(p00 * (1 - p00) / pairs00));
  CHECK(std::abs(mean_d01 - p01) < 4 * std::sqrt(p01 * (1 - p01) / pairs01));
}

TEST_CASE("sample_sbm deterministic per seed") {
  SbmParams p;
  p.b = block4(0.8, 0.6, 0.3);
  p.sizes = {10, 10, 10, 10};
  p.rho = 0.5;
  auto [a1, z1] = sample_sbm(p, 99);
  auto [a2, z2] = sample_sbm(p, 99);
  CHECK(a1.mat() == a2.mat());
}

TEST_CASE("sample_sbm rejects invalid probabilities") {
  SbmParams p;
  p.b = Matrix::Constant(2, 2, 1.5);
  p.sizes = {3, 3};
  CHECK_THROWS_AS(sample_sbm(p, 1), std::invalid_argument);
}

TEST_CASE("sample_mmsb concentrated Dirichlet gives uniform rows") {
  MmsbParams p;
  p.b = Matrix::Identity(3, 3);
  p.alpha = Vector::Constant(3, 1e6);
  p.n = 50;
  p.rho = 0.5;
  auto [a, theta] = sample_mmsb(p, 2);
  CHECK((theta.theta.array() - 1.0 / 3.0).abs().maxCoeff() < 0.01);
}

TEST_CASE("sample_mmsb r=1 is Erdos-Renyi") {
  MmsbParams p;
  p.b = Matrix::Constant(1, 1, 0.6);
  p.alpha = Vector::Constant(1, 1.0);
  p.n = 200;
  p.rho = 0.5;
  auto [a, theta] = sample_mmsb(p, 4);
  CHECK((theta.theta.array() - 1.0).abs().maxCoeff() == 0.0);
  const double density = a.mat().sum() / (200.0 * 199.0);
  const double prob = 0.3;
  CHECK(std::abs(density - prob) <
        4 * std::sqrt(prob * (1 - prob) / (200.0 * 199.0 / 2.0)));
}

TEST_CASE("sample_mmsb density matches Monte-Carlo population oracle") {
  const int r = 4;
  const double p_in = 1.0, q = 0.1, rho = 0.11;
  MmsbParams p;
  p.b = (p_in - q) * Matrix::Identity(r, r) + q * Matrix::Ones(r, r);
  p.alpha = Vector::Constant(r, 1.0 / r);
  p.n = 2000;
  p.rho = rho;

  // Monte-Carlo oracle for E[Theta_i^T (rho B) Theta_j]
  Rng rng(12345);
  double mc = 0;
  const int draws = 200000;
  for (int it = 0; it < draws; ++it) {
    Vector ti(r), tj(r);
    for (int k = 0; k < r; ++k) ti(k) = rng.gamma(0.25);
    for (int k = 0; k < r; ++k) tj(k) = rng.gamma(0.25);
    ti /= ti.sum();
    tj /= tj.sum();
    mc += ti.dot(rho * p.b * tj) / draws;
  }

  auto [a, theta] = sample_mmsb(p, 6);
  const double pairs = p.n * (p.n - 1.0) / 2.0;
  const double density = a.mat().sum() / 2.0 / pairs;
  // 3 sigma of the Bernoulli noise plus slack for the finite MC oracle
  CHECK(std::abs(density - mc) < 3 * std::sqrt(mc * (1 - mc) / pairs) + 5e-4);
}

TEST_CASE("sample_mixture zero noise hits the means") {
  MixtureParams p;
  p.means = Matrix(2, 2);
  p.means << 0, 0, 5, 5;
  p.sigmas = {0.0, 0.0};
  p.weights = {0.5, 0.5};
  p.n = 20;
  auto s = sample_mixture(p, 5);
  for (Index i = 0; i < 20; ++i)
    CHECK((s.y.row(i) - p.means.row(s.truth.labels[i])).norm() == 0.0);
}

TEST_CASE("sample_mixture degenerate weights") {
  MixtureParams p;
  p.means = Matrix::Zero(3, 2);
  p.sigmas = {1.0, 1.0, 1.0};
  p.weights = {1.0, 0.0, 0.0};
  p.n = 30;
  auto s = sample_mixture(p, 8);
  for (int l : s.truth.labels) CHECK(l == 0);
}

TEST_CASE("sample_mixture proportions near weights at n=500") {
  MixtureParams p;
  p.means = Matrix::Zero(3, 20);
  p.means(0, 0) = 10;
  p.means(1, 1) = 10;
  p.sigmas = {1.0, 1.0, 1.0};
  p.weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  p.n = 500;
  auto s = sample_mixture(p, 21);
  auto sizes = s.truth.sizes();
  for (int k = 0; k < 3; ++k) {
    const double w = p.weights[k];
    const double sigma = std::sqrt(w * (1 - w) * 500.0);
    CHECK(std::abs(sizes[k] - w * 500.0) < 3.5 * sigma);
  }
  // Y = mu + W exactly
  for (Index i = 0; i < 20; ++i)
    CHECK((s.y.row(i) - p.means.row(s.truth.labels[i]) - s.noise.row(i)).norm() <
          1e-12);
}

TEST_CASE("population_matrix block construction") {
  SbmParams p;
  p.b = Matrix(2, 2);
  p.b << 0.8, 0.2, 0.2, 0.8;
  p.sizes = {2, 2};
  auto s = population_matrix(p);
  Matrix want(4, 4);
  want << 0.8, 0.8, 0.2, 0.2, 0.8, 0.8, 0.2, 0.2,
          0.2, 0.2, 0.8, 0.8, 0.2, 0.2, 0.8, 0.8;
  CHECK((s.mat() - want).norm() < 1e-12);
}

TEST_CASE("population_matrix single block is constant") {
  SbmParams p;
  p.b = Matrix::Constant(1, 1, 0.4);
  p.sizes = {5};
  auto s = population_matrix(p);
  CHECK((s.mat().array() - 0.4).abs().maxCoeff() < 1e-12);
}

TEST_CASE("population trace identity <P~, X0> = sum m_k B_kk") {
  SbmParams p;
  p.b = block4(0.8, 0.6, 0.3);
  p.sizes = {5, 3, 7, 4};
  p.rho = 0.5;
  auto s = population_matrix(p);
  HardMembership z(std::vector<int>{}, 4);
  {
    std::vector<int> lab;
    for (int k = 0; k < 4; ++k)
      for (Index c = 0; c < p.sizes[k]; ++c) lab.push_back(k);
    z = HardMembership(std::move(lab), 4);
  }
  Matrix zm = z.indicator();
  Matrix x = zm * (zm.transpose() * zm).inverse() * zm.transpose();
  const double got = (s.mat().array() * x.array()).sum();
  double want = 0;
  for (int k = 0; k < 4; ++k) want += p.sizes[k] * p.rho * p.b(k, k);
  CHECK(got == doctest::Approx(want));
}

TEST_CASE("p_gap on the assortative 4x4 pattern") {
  SbmParams p;
  p.b = block4(0.8, 0.6, 0.3);
  p.sizes = {3, 3, 3, 3};
  auto s = population_matrix(p);
  std::vector<int> lab;
  for (int k = 0; k < 4; ++k) lab.insert(lab.end(), 3, k);
  CHECK(p_gap(s, HardMembership(lab, 4)) == doctest::Approx(0.2));
}

TEST_CASE("p_gap equality case is zero") {
  SbmParams p;
  p.b = Matrix::Constant(2, 2, 0.5);
  p.sizes = {3, 3};
  auto s = population_matrix(p);
  CHECK(p_gap(s, HardMembership({0, 0, 0, 1, 1, 1}, 2)) == doctest::Approx(0.0));
}

TEST_CASE("p_gap single cluster is +inf") {
  SbmParams p;
  p.b = Matrix::Constant(1, 1, 0.3);
  p.sizes = {4};
  auto s = population_matrix(p);
  CHECK(p_gap(s, HardMembership({0, 0, 0, 0}, 1)) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("p_gap rejects non-constant diagonal block") {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = 1.0;  // block {0,1} not constant
  CHECK_THROWS(p_gap(SymMatrix(s), HardMembership({0, 0, 1, 1}, 2)));
}

TEST_CASE("reference_matrix same cluster zero, W=0 cross") {
  Matrix means(2, 1);
  means << 0.0, 3.0;
  Matrix w = Matrix::Zero(4, 1);
  HardMembership z({0, 0, 1, 1}, 2);
  auto s = reference_matrix(means, w, z);
  CHECK(s(0, 1) == 0.0);
  CHECK(s(2, 3) == 0.0);
  CHECK(s(0, 2) == doctest::Approx(-9.0));
}

TEST_CASE("reference_matrix scalar hand evaluation") {
  // 1-D means {0, 3}; W chosen so W_i - W_j = 1 for the cross pair (0,1)
  Matrix means(2, 1);
  means << 0.0, 3.0;
  Matrix w(2, 1);
  w << 1.0, 0.0;
  auto s = reference_matrix(means, w, HardMembership({0, 1}, 2));
  // -4.5 - max(0, 4.5 + 2*1*(-3)) = -4.5
  CHECK(s(0, 1) == doctest::Approx(-4.5));
}

TEST_CASE("reference_matrix nonpositive with zero diagonal blocks") {
  Rng rng(3);
  Matrix means(3, 2);
  for (Index i = 0; i < means.size(); ++i) means(i) = rng.normal();
  Matrix w(12, 2);
  for (Index i = 0; i < w.size(); ++i) w(i) = rng.normal();
  std::vector<int> lab;
  for (int k = 0; k < 3; ++k) lab.insert(lab.end(), 4, k);
  HardMembership z(lab, 3);
  auto s = reference_matrix(means, w, z);
  for (Index i = 0; i < 12; ++i)
    for (Index j = 0; j < 12; ++j) {
      CHECK(s(i, j) <= 1e-12);
      if (lab[i] == lab[j]) CHECK(s(i, j) == 0.0);
    }
}

TEST_CASE("shuffle_nodes preserves the graph up to relabeling") {
  SbmParams p;
  p.b = Matrix::Identity(2, 2);
  p.sizes = {3, 3};
  auto [a, z] = sample_sbm(p, 1);
  auto [as, zs] = shuffle_nodes(a, z, 17);
  // degree multiset and co-cluster structure survive
  CHECK(as.mat().sum() == a.mat().sum());
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j)
      if (i != j)
        CHECK(as(i, j) == (zs.labels[i] == zs.labels[j] ? 1.0 : 0.0));
}
