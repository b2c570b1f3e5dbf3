#include "matr/spacl.hpp"

#include <cmath>

namespace matr {

std::vector<Index> spa(const Matrix& v, int r) {
  const Index n = v.rows();
  if (r < 1 || r > n) throw std::invalid_argument("spa: need 1 <= r <= n");
  if (v.norm() < 1e-300) throw estimation_error("spa: zero input matrix");

  Matrix work = v;
  std::vector<Index> picked;
  picked.reserve(r);
  for (int step = 0; step < r; ++step) {
    Index best = 0;
    double best_norm = -1.0;
    for (Index i = 0; i < n; ++i) {
      const double norm = work.row(i).squaredNorm();
      if (norm > best_norm) {
        best_norm = norm;
        best = i;
      }
    }
    if (best_norm < 1e-24)
      throw estimation_error("spa: rows collapsed before selecting r vertices");
    picked.push_back(best);
    // deflate: project every row onto the orthogonal complement of the pick
    Vector dir = work.row(best).transpose() / std::sqrt(best_norm);
    work.noalias() -= (work * dir) * dir.transpose();
  }
  return picked;
}

MmsbEstimate estimate_mmsb_from_eig(const EigenPairs& eig, int r) {
  if (r < 1 || r > eig.k())
    throw std::invalid_argument("estimate_mmsb: r exceeds available eigenpairs");
  const Matrix u = eig.vectors.leftCols(r);
  const Vector lam = eig.values.head(r);

  MmsbEstimate est;
  est.pure_nodes = spa(u, r);

  Matrix us(r, r);
  for (int i = 0; i < r; ++i) us.row(i) = u.row(est.pure_nodes[i]);

  Eigen::PartialPivLU<Matrix> lu(us);
  if (lu.rcond() < 1e-10)
    throw estimation_error("estimate_mmsb: singular pure-node submatrix");

  Matrix theta = u * lu.inverse();
  // clip negatives first, then project each row onto the simplex
  theta = theta.cwiseMax(0.0);
  for (Index i = 0; i < theta.rows(); ++i)
    theta.row(i) = project_simplex(theta.row(i).transpose()).transpose();
  est.theta_hat = SoftMembership(std::move(theta));

  Matrix b = us * lam.asDiagonal() * us.transpose();
  b = ((b + b.transpose()) / 2.0).cwiseMax(0.0).cwiseMin(1.0);
  est.b_hat = std::move(b);
  return est;
}

MmsbEstimate estimate_mmsb(const AdjacencyMatrix& a, int r) {
  if (r > a.n()) throw std::invalid_argument("estimate_mmsb: r <= n required");
  return estimate_mmsb_from_eig(sym_eig(a, r), r);
}

SoftMembership regress_test_memberships(const Matrix& a21,
                                        const SoftMembership& theta11,
                                        const Matrix& b_hat) {
  if (a21.cols() != theta11.n())
    throw std::invalid_argument("regress_test_memberships: A21/Theta11 mismatch");
  const int r = theta11.r();
  if (b_hat.rows() != r || b_hat.cols() != r)
    throw std::invalid_argument("regress_test_memberships: B size mismatch");

  Eigen::PartialPivLU<Matrix> lu_b(b_hat);
  if (lu_b.rcond() < 1e-10)
    throw estimation_error("regress_test_memberships: singular B");

  Matrix gram = theta11.theta.transpose() * theta11.theta;
  Eigen::PartialPivLU<Matrix> lu_g(gram);
  if (lu_g.rcond() < 1e-12)
    throw estimation_error("regress_test_memberships: rank-deficient Theta11");

  Matrix theta22 =
      a21 * theta11.theta * lu_g.inverse() * lu_b.inverse();
  for (Index i = 0; i < theta22.rows(); ++i)
    theta22.row(i) = project_simplex(theta22.row(i).transpose()).transpose();
  return SoftMembership(std::move(theta22));
}

}  // namespace matr
