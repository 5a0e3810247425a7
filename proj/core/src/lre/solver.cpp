#include "sdpolicy/lre/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "sdpolicy/rng.hpp"

namespace sdpolicy::lre {

namespace {

double spectral_radius_of(const Eigen::MatrixXd& M) {
  if (M.rows() == 0) return 0.0;
  return M.eigenvalues().cwiseAbs().maxCoeff();
}

constexpr double kRadiusBound = 1.0 - 1e-9;

}  // namespace

SolvedModel solve_re(const CanonicalForm& c, const SolveOptions& opts) {
  if (opts.tol <= 0.0) throw std::invalid_argument("solve_re: tol must be > 0");
  const auto dim = c.G.rows();
  if (c.F.rows() != dim || c.F.cols() != dim || c.G.cols() != dim ||
      c.H.rows() != dim || c.H.cols() != dim || c.N.rows() != dim) {
    throw std::invalid_argument("solve_re: inconsistent canonical dimensions");
  }

  SolvedModel out;
  out.B = Eigen::MatrixXd::Zero(dim, c.N.cols());

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
  int iter = 0;
  while (iter < opts.max_iter) {
    ++iter;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(c.F * A + c.G);
    const Eigen::MatrixXd next = lu.solve(-c.H);
    if (!next.allFinite()) {
      // Singular (F A_j + G) mid-iteration: no solution along this path.
      out.A = A;
      out.iterations = iter;
      return out;
    }
    const double delta = (next - A).cwiseAbs().maxCoeff();
    A = next;
    if (delta < opts.tol) {
      out.converged = true;
      break;
    }
  }
  out.A = A;
  out.iterations = iter;
  out.residual_norm =
      (c.F * A * A + c.G * A + c.H).cwiseAbs().rowwise().sum().maxCoeff();
  out.spectral_radius = spectral_radius_of(A);
  if (!out.converged) return out;

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(c.F * A + c.G);
  const double pivot_min = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(pivot_min > 0.0) || !std::isfinite(pivot_min)) {
    throw std::runtime_error("solve_re: singular (F A + G)");
  }
  out.B = lu.solve(-c.N);

  bool determinate = out.spectral_radius < kRadiusBound;
  if (determinate && !c.F.isZero(0.0)) {
    // Complementary roots: solutions of det(lambda F + F A + G) = 0 must lie
    // outside the unit circle for the stable solvent to be unique, which is
    // equivalent to rho((F A + G)^{-1} F) < 1. Without this check the
    // iteration can converge to a stable solvent of an indeterminate system
    // and misreport uniqueness.
    const Eigen::MatrixXd S = lu.solve(c.F);
    determinate = spectral_radius_of(S) < kRadiusBound;
  }
  out.determinate = determinate;
  return out;
}

Eigen::MatrixXd lyapunov(const SolvedModel& s) {
  if (!s.determinate) {
    throw std::invalid_argument("lyapunov: model must be determinate");
  }
  // Doubling: S_{k+1} = S_k + A_k S_k A_k', A_{k+1} = A_k A_k converges to
  // sum_j A^j B B' A'^j quadratically for spectral radius < 1.
  Eigen::MatrixXd S = s.B * s.B.transpose();
  Eigen::MatrixXd Ak = s.A;
  for (int it = 0; it < 200; ++it) {
    const Eigen::MatrixXd inc = Ak * S * Ak.transpose();
    S += inc;
    Ak = Ak * Ak;
    const double rel =
        inc.cwiseAbs().maxCoeff() / std::max(1e-300, S.cwiseAbs().maxCoeff());
    if (rel < 1e-16) break;
  }
  return 0.5 * (S + S.transpose());
}

Eigen::MatrixXd simulate(const SolvedModel& s, const Eigen::VectorXd& z0,
                         int horizon, std::uint64_t seed) {
  if (!s.determinate) {
    throw std::invalid_argument("simulate: model must be determinate");
  }
  if (horizon < 1) throw std::invalid_argument("simulate: horizon must be >= 1");
  const auto dim = s.A.rows();
  const auto q = s.B.cols();
  if (z0.size() != dim) {
    throw std::invalid_argument("simulate: z0 dimension mismatch");
  }
  Rng rng(seed);
  Eigen::MatrixXd path(horizon, dim);
  Eigen::VectorXd z = z0;
  Eigen::VectorXd v(q);
  for (int t = 0; t < horizon; ++t) {
    for (Eigen::Index j = 0; j < q; ++j) v(j) = rng.normal();
    z = s.A * z + s.B * v;
    path.row(t) = z.transpose();
  }
  return path;
}

Eigen::MatrixXd irf(const SolvedModel& s, int shock_index, int horizon) {
  if (shock_index < 0 || shock_index >= s.B.cols()) {
    throw std::invalid_argument("irf: shock index out of range");
  }
  if (horizon < 0) throw std::invalid_argument("irf: horizon must be >= 0");
  const auto dim = s.A.rows();
  Eigen::MatrixXd out(horizon + 1, dim);
  Eigen::VectorXd resp = s.B.col(shock_index);
  out.row(0) = resp.transpose();
  for (int h = 1; h <= horizon; ++h) {
    resp = s.A * resp;
    out.row(h) = resp.transpose();
  }
  return out;
}

}  // namespace sdpolicy::lre
