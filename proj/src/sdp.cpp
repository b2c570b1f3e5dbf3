#include "matr/sdp.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "matr/matrices.hpp"

namespace matr {

namespace {

using Projection = std::function<Matrix(const Matrix&)>;

Matrix project_psd_raw(const Matrix& m) {
  return project_psd(SymMatrix(m)).mat();
}

// Clip off-diagonal negatives, pin the diagonal to one.
Matrix project_orthant_unit_diag(const Matrix& m) {
  Matrix out = m.cwiseMax(0.0);
  out.diagonal().setOnes();
  return out;
}

Matrix project_orthant(const Matrix& m) { return m.cwiseMax(0.0); }

// Projection onto the symmetric affine slice {X1 = 1, trace(X) = r'}.
// Stationarity of ||X - M||^2 under the two linear constraints gives
// X = M - (y 1^T + 1 y^T)/2 - mu I with (y, mu) from a 2x2 linear system.
Matrix project_affine_rowsum_trace(const Matrix& m, double r_prime) {
  const Index n = m.rows();
  const double nn = static_cast<double>(n);
  Vector g = m.rowwise().sum() - Vector::Ones(n);       // X1 - 1 defect
  const double h = m.trace() - r_prime;                 // trace defect
  const double c1 = g.sum() / nn;
  const double mu = (h - c1) / (nn - 1.0);
  const double s = c1 - mu;
  Vector y = (2.0 / nn) * (g.array() - (s / 2.0 + mu)).matrix();
  Matrix out = m;
  out.noalias() -= 0.5 * (y * Vector::Ones(n).transpose() +
                          Vector::Ones(n) * y.transpose());
  out.diagonal().array() -= mu;
  return out;
}

struct AdmmProblem {
  Matrix c;                            // linear objective, maximize <C, X>
  std::vector<Projection> projections;
  Matrix init;
};

struct AdmmOutcome {
  Matrix z;
  int iterations;
  double primal_residual, dual_residual;
  bool converged;
};

AdmmOutcome consensus_admm(const AdmmProblem& prob, const SolverOptions& opts) {
  if (!(opts.tolerance > 0) || opts.max_iter < 1 || !(opts.penalty > 0))
    throw std::invalid_argument("SolverOptions: tolerance, penalty > 0 and max_iter >= 1");

  const int nblocks = static_cast<int>(prob.projections.size());
  const double nb = static_cast<double>(nblocks);
  const double eps_abs = 1e-6;

  double rho = opts.penalty;
  Matrix z = opts.warm_start ? *opts.warm_start : prob.init;
  std::vector<Matrix> x(nblocks, z), u(nblocks, Matrix::Zero(z.rows(), z.cols()));

  AdmmOutcome out{z, 0, 0.0, 0.0, false};
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    for (int i = 0; i < nblocks; ++i) x[i] = prob.projections[i](z - u[i]);

    Matrix z_prev = std::move(z);
    z = prob.c / (nb * rho);
    for (int i = 0; i < nblocks; ++i) z += (x[i] + u[i]) / nb;

    double pri_sq = 0.0, unorm_sq = 0.0, xnorm_sq = 0.0;
    for (int i = 0; i < nblocks; ++i) {
      u[i] += x[i] - z;
      pri_sq += (x[i] - z).squaredNorm();
      unorm_sq += u[i].squaredNorm();
      xnorm_sq += x[i].squaredNorm();
    }
    const double pri = std::sqrt(pri_sq);
    const double dual = rho * std::sqrt(nb) * (z - z_prev).norm();

    const double scale_pri =
        std::max(1.0, std::max(std::sqrt(xnorm_sq), std::sqrt(nb) * z.norm()));
    const double scale_dual = std::max(1.0, rho * std::sqrt(unorm_sq));
    const double floor = eps_abs * std::sqrt(nb) * z.rows() / opts.tolerance;

    out.primal_residual = pri / std::max(scale_pri, floor);
    out.dual_residual = dual / std::max(scale_dual, floor);
    out.iterations = iter;
    if (out.primal_residual <= opts.tolerance &&
        out.dual_residual <= opts.tolerance) {
      out.converged = true;
      break;
    }

    // Adaptive penalty, duals rescaled to stay consistent in scaled form.
    // Only during an initial burn-in: unrestricted residual balancing can
    // settle into a limit cycle instead of converging.
    if (iter % 5 == 0 && iter <= 100) {
      if (pri > 10.0 * dual && rho < 1e3) {
        rho *= 2.0;
        for (auto& ui : u) ui /= 2.0;
      } else if (dual > 10.0 * pri && rho > 1e-3) {
        rho /= 2.0;
        for (auto& ui : u) ui *= 2.0;
      }
    }
  }
  out.z = std::move(z);
  return out;
}

}  // namespace

SdpSolution solve_sdp1(const AdjacencyMatrix& a, double lambda,
                       const SolverOptions& opts) {
  const Index n = a.n();
  AdmmProblem prob;
  prob.c = a.mat().array() - lambda;
  prob.projections = {project_psd_raw, project_orthant_unit_diag};
  prob.init = Matrix::Identity(n, n);

  AdmmOutcome res = consensus_admm(prob, opts);
  SdpSolution sol{SymMatrix(res.z), res.iterations, res.primal_residual,
                  res.dual_residual, 0.0, res.converged, opts.tolerance};
  sol.objective =
      (a.mat().cwiseProduct(res.z)).sum() - lambda * res.z.sum();
  return sol;
}

SdpSolution solve_sdp2(const AdjacencyMatrix& a, int r_prime,
                       const SolverOptions& opts) {
  const Index n = a.n();
  if (r_prime < 1 || r_prime > n)
    throw std::invalid_argument("solve_sdp2: need 1 <= r' <= n");

  AdmmProblem prob;
  prob.c = a.mat();
  const double rp = static_cast<double>(r_prime);
  prob.projections = {
      project_psd_raw, project_orthant,
      [rp](const Matrix& m) { return project_affine_rowsum_trace(m, rp); }};
  // alpha I + beta E is feasible for every r'
  const double alpha = (rp - 1.0) / (static_cast<double>(n) - 1.0);
  const double beta = (1.0 - alpha) / static_cast<double>(n);
  prob.init = alpha * Matrix::Identity(n, n) +
              beta * Matrix::Ones(n, n);

  AdmmOutcome res = consensus_admm(prob, opts);
  SdpSolution sol{SymMatrix(res.z), res.iterations, res.primal_residual,
                  res.dual_residual, 0.0, res.converged, opts.tolerance};
  sol.objective = a.mat().cwiseProduct(res.z).sum();
  return sol;
}

HardMembership spectral_round(const SymMatrix& m, int r, int restarts,
                              uint64_t seed) {
  if (r < 1 || r > m.n()) throw std::invalid_argument("spectral_round: need 1 <= r <= n");
  EigenPairs top = sym_eig(m, r);
  KmeansResult km = kmeans(top.vectors, r, restarts, seed);
  return HardMembership(std::move(km.labels), r);
}

FeasibilityReport feasibility_report_sdp1(const SymMatrix& x) {
  FeasibilityReport rep;
  rep.min_eigenvalue = sym_eig_full(x).values.minCoeff();
  rep.min_entry = x.mat().minCoeff();
  rep.max_diag_dev = (x.mat().diagonal().array() - 1.0).abs().maxCoeff();
  return rep;
}

FeasibilityReport feasibility_report_sdp2(const SymMatrix& x, int r_prime) {
  FeasibilityReport rep;
  rep.min_eigenvalue = sym_eig_full(x).values.minCoeff();
  rep.min_entry = x.mat().minCoeff();
  rep.row_sum_dev =
      (x.mat().rowwise().sum().array() - 1.0).abs().maxCoeff();
  rep.trace_dev = std::abs(x.mat().trace() - static_cast<double>(r_prime));
  return rep;
}

}  // namespace matr
