#include <doctest.h>

#include <cmath>

#include "matr/metrics.hpp"
#include "matr/rng.hpp"

using namespace matr;

TEST_CASE("nmi basic conventions") {
  CHECK(nmi({0, 0, 1, 1}, {1, 1, 0, 0}) == doctest::Approx(1.0));
  CHECK(nmi({0, 0, 0, 0}, {0, 0, 0, 0}) == doctest::Approx(1.0));
  CHECK(nmi({0, 1, 0, 1}, {0, 0, 0, 0}) == doctest::Approx(0.0));
  // independent partitions of 4 points: joint counts all 1 -> I = 0
  CHECK(nmi({0, 0, 1, 1}, {0, 1, 0, 1}) == doctest::Approx(0.0));
  CHECK_THROWS(nmi({0, 1}, {0, 1, 2}));
}

TEST_CASE("nmi hand-computed partial overlap") {
  // a = (0,0,0,1), b = (0,0,1,1): plug-in entropies H = (3/4)log(4/3)+(1/4)log4
  const std::vector<int> a = {0, 0, 0, 1}, b = {0, 0, 1, 1};
  const double h_a =
      -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
  const double h_b = std::log(2.0);
  // joint: (0,0)=2/4, (0,1)=1/4, (1,1)=1/4
  const double i = 0.5 * std::log(0.5 / (0.75 * 0.5)) +
                   0.25 * std::log(0.25 / (0.75 * 0.5)) +
                   0.25 * std::log(0.25 / (0.25 * 0.5));
  CHECK(nmi(a, b) == doctest::Approx(i / std::sqrt(h_a * h_b)));
}

TEST_CASE("nmi symmetry and label-permutation invariance") {
  Rng rng(4);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<int> a(20), b(20);
    for (int i = 0; i < 20; ++i) {
      a[i] = static_cast<int>(rng.uniform_int(3));
      b[i] = static_cast<int>(rng.uniform_int(3));
    }
    CHECK(nmi(a, b) == doctest::Approx(nmi(b, a)));
    std::vector<int> a_relab(20);
    const int relab[3] = {2, 0, 1};
    for (int i = 0; i < 20; ++i) a_relab[i] = relab[a[i]];
    CHECK(nmi(a_relab, b) == doctest::Approx(nmi(a, b)));
    const double v = nmi(a, b);
    CHECK(v >= -1e-12);
    CHECK(v <= 1.0 + 1e-12);
  }
}

TEST_CASE("clustering_error identities") {
  auto x0 = normalized_clustering_matrix(HardMembership({0, 0, 1, 1}, 2));
  CHECK(clustering_error(x0, x0) == doctest::Approx(0.0));

  auto x1 = normalized_clustering_matrix(HardMembership({0, 0, 0, 1}, 2));
  const double direct = clustering_error(x1, x0);
  // equal-trace projections: ||X1 - X0||_F^2 = 2 trace(X0) - 2 <X0, X1>
  const double via_trace =
      2.0 * x0.x.mat().trace() -
      2.0 * (x0.x.mat().array() * x1.x.mat().array()).sum();
  CHECK(direct == doctest::Approx(via_trace));

  // hand value: X0 = blockdiag(E2/2, E2/2); X1 = blockdiag(E3/3, [1])
  double hand = 0;
  Matrix m0 = x0.x.mat(), m1 = x1.x.mat();
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) hand += std::pow(m1(i, j) - m0(i, j), 2);
  CHECK(direct == doctest::Approx(hand));
}

TEST_CASE("clustering_error invariant under node permutation") {
  Rng rng(11);
  std::vector<int> a = {0, 1, 2, 0, 1, 2, 0}, b = {0, 0, 1, 1, 2, 2, 0};
  auto xa = normalized_clustering_matrix(HardMembership(a, 3));
  auto xb = normalized_clustering_matrix(HardMembership(b, 3));
  const double base = clustering_error(xa, xb);
  auto perm = rng.permutation(7);
  std::vector<int> ap(7), bp(7);
  for (int i = 0; i < 7; ++i) {
    ap[i] = a[perm[i]];
    bp[i] = b[perm[i]];
  }
  CHECK(clustering_error(normalized_clustering_matrix(HardMembership(ap, 3)),
                         normalized_clustering_matrix(HardMembership(bp, 3))) ==
        doctest::Approx(base));
}

TEST_CASE("exact_recovery predicate") {
  CHECK(exact_recovery(HardMembership({1, 1, 0, 0}, 2),
                       HardMembership({0, 0, 1, 1}, 2)));
  CHECK_FALSE(exact_recovery(HardMembership({1, 0, 0, 0}, 2),
                             HardMembership({0, 0, 1, 1}, 2)));
  CHECK_FALSE(exact_recovery(HardMembership({0, 0, 1, 2}, 3),
                             HardMembership({0, 0, 1, 1}, 2)));
}

TEST_CASE("exact recovery implies nmi 1") {
  Rng rng(14);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<int> a(15);
    for (int i = 0; i < 15; ++i) a[i] = static_cast<int>(rng.uniform_int(3));
    // force all three labels present
    a[0] = 0;
    a[1] = 1;
    a[2] = 2;
    const int relab[3] = {1, 2, 0};
    std::vector<int> b(15);
    for (int i = 0; i < 15; ++i) b[i] = relab[a[i]];
    CHECK(exact_recovery(HardMembership(a, 3), HardMembership(b, 3)));
    CHECK(nmi(a, b) == doctest::Approx(1.0));
  }
}

TEST_CASE("align_labels maximizes overlap") {
  HardMembership truth({0, 0, 0, 1, 1, 1}, 2);
  HardMembership pred({1, 1, 1, 0, 0, 0}, 2);
  auto aligned = align_labels(pred, truth);
  CHECK(aligned.labels == truth.labels);
}

TEST_CASE("evaluate report is self-consistent") {
  HardMembership truth({0, 0, 0, 1, 1, 1}, 2);
  HardMembership pred({1, 1, 0, 0, 0, 0}, 2);
  auto rep = evaluate(pred, truth);
  CHECK(rep.nmi == doctest::Approx(nmi(pred.labels, truth.labels)));
  CHECK(rep.frob_sq >= 0.0);
  CHECK_FALSE(rep.exact);
  CHECK(rep.aligned_confusion.sum() == doctest::Approx(6.0));

  auto perfect = evaluate(truth, truth);
  CHECK(perfect.exact);
  CHECK(perfect.nmi == doctest::Approx(1.0));
  CHECK(perfect.frob_sq == doctest::Approx(0.0));
}

TEST_CASE("evaluate tolerates empty prediction clusters") {
  // pred declares r=3 but only uses 2 labels
  HardMembership pred({0, 0, 2, 2}, 3);
  HardMembership truth({0, 0, 1, 1}, 2);
  auto rep = evaluate(pred, truth);
  CHECK(rep.nmi == doctest::Approx(1.0));
  CHECK(rep.frob_sq == doctest::Approx(0.0));
}
