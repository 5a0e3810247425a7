#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "sdpolicy/lre/model.hpp"

namespace sdpolicy::lre {

struct SolveOptions {
  double tol = 1e-12;
  int max_iter = 10000;
};

/// State equation z_t = A z_{t-1} + B v_t solving the canonical system.
struct SolvedModel {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  double residual_norm = 0.0;    // ||F A^2 + G A + H||_inf
  double spectral_radius = 0.0;  // of A
  bool converged = false;
  bool determinate = false;
  int iterations = 0;
};

/// Fixed-point iteration on the matrix quadratic,
///   A_{j+1} = -(F A_j + G)^{-1} H,  A_0 = 0,
/// stopping when successive iterates differ by < tol. On convergence
/// B = -(F A + G)^{-1} N. `determinate` additionally requires the spectral
/// radius of A below one and all complementary roots of the quadratic
/// pencil outside the unit circle (checked via rho((F A + G)^{-1} F) < 1),
/// so that converging to a stable solvent of an indeterminate system is
/// not reported as a unique solution. Non-convergence is reported through
/// the flags, not an exception; a singular (F A + G) throws.
SolvedModel solve_re(const CanonicalForm& c, const SolveOptions& opts = {});

/// Unconditional state covariance: the fixed point of
///   S = A S A' + B B',
/// computed by doubling. Throws std::invalid_argument on indeterminate
/// input.
Eigen::MatrixXd lyapunov(const SolvedModel& s);

/// Simulates z_t = A z_{t-1} + B v_t for t = 1..horizon from z0 with
/// standard-normal innovations drawn from a seeded stream. Row t-1 of the
/// result is z_t'. Identical inputs produce identical paths.
Eigen::MatrixXd simulate(const SolvedModel& s, const Eigen::VectorXd& z0,
                         int horizon, std::uint64_t seed);

/// Impulse responses to unit innovation j: row h is (A^h B e_j)' for
/// h = 0..horizon.
Eigen::MatrixXd irf(const SolvedModel& s, int shock_index, int horizon);

}  // namespace sdpolicy::lre
