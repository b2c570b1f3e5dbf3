#ifndef MATR_TYPES_HPP
#define MATR_TYPES_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace matr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct estimation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense symmetric matrix. Symmetry is enforced at construction by
/// averaging with the transpose, so downstream code can rely on
/// entries(i,j) == entries(j,i) exactly.
class SymMatrix {
 public:
  explicit SymMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() < 1 || m_.rows() != m_.cols())
      throw std::invalid_argument("SymMatrix: need square matrix, n >= 1");
    m_ = ((m_ + m_.transpose()) / 2.0).eval();
  }

  static SymMatrix zero(Index n) { return SymMatrix(Matrix::Zero(n, n)); }
  static SymMatrix identity(Index n) { return SymMatrix(Matrix::Identity(n, n)); }

  Index n() const { return m_.rows(); }
  const Matrix& mat() const { return m_; }
  double operator()(Index i, Index j) const { return m_(i, j); }

 private:
  Matrix m_;
};

using AdjacencyMatrix = SymMatrix;   // 0/1 entries, zero diagonal
using SimilarityMatrix = SymMatrix;  // any symmetric real matrix fed to the trace criterion

/// One label in 0..r-1 per node. Cluster k may be empty unless the
/// consumer requires otherwise (normalized_clustering_matrix does).
struct HardMembership {
  std::vector<int> labels;
  int r = 0;

  HardMembership() = default;
  HardMembership(std::vector<int> l, int r_) : labels(std::move(l)), r(r_) {
    for (int v : labels)
      if (v < 0 || v >= r) throw std::invalid_argument("HardMembership: label out of range");
  }

  Index n() const { return static_cast<Index>(labels.size()); }

  std::vector<Index> sizes() const {
    std::vector<Index> s(r, 0);
    for (int v : labels) s[v]++;
    return s;
  }

  /// n x r one-hot matrix Z.
  Matrix indicator() const {
    Matrix z = Matrix::Zero(n(), r);
    for (Index i = 0; i < n(); ++i) z(i, labels[i]) = 1.0;
    return z;
  }
};

/// n x r matrix with rows on the probability simplex.
struct SoftMembership {
  Matrix theta;

  SoftMembership() = default;
  explicit SoftMembership(Matrix t) : theta(std::move(t)) {}

  Index n() const { return theta.rows(); }
  int r() const { return static_cast<int>(theta.cols()); }

  /// Row-wise argmax labels, ties to the smallest column.
  HardMembership argmax_labels() const {
    std::vector<int> lab(theta.rows());
    for (Index i = 0; i < theta.rows(); ++i) {
      Index best = 0;
      for (Index k = 1; k < theta.cols(); ++k)
        if (theta(i, k) > theta(i, best)) best = k;
      lab[i] = static_cast<int>(best);
    }
    return HardMembership(std::move(lab), r());
  }
};

}  // namespace matr

#endif
