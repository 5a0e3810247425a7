#pragma once

#include <Eigen/Core>

#include "sdpolicy/lre/model.hpp"
#include "sdpolicy/lre/solver.hpp"

namespace sdpolicy::lre {

/// State equation plus measurement map:
///   z_t = A z_{t-1} + B v_t
///   y_t = intercept + Hm z_t + Noise v_m_t
struct StateSpace {
  SolvedModel solved;
  Measurement meas;
};

/// Exact Gaussian log-likelihood of the observed panel (rows are periods,
/// columns observables) from the standard Kalman recursion, initialized at
/// the stationary state distribution. An empty panel has log-likelihood 0.
/// Throws std::runtime_error when a forecast-error covariance is singular.
double kalman_loglik(const StateSpace& ss, const Eigen::MatrixXd& Y);

}  // namespace sdpolicy::lre
