#include <doctest.h>

#include <stdexcept>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "sdpolicy/lre/kalman.hpp"
#include "sdpolicy/rng.hpp"

using namespace sdpolicy;
using namespace sdpolicy::lre;

namespace {

StateSpace scalar_ss(double a, double b, double h, double noise) {
  StateSpace ss;
  ss.solved.A = Eigen::MatrixXd::Constant(1, 1, a);
  ss.solved.B = Eigen::MatrixXd::Constant(1, 1, b);
  ss.solved.determinate = std::abs(a) < 1.0;
  ss.solved.converged = true;
  ss.meas.intercept = Eigen::VectorXd::Zero(1);
  ss.meas.Hm = Eigen::MatrixXd::Constant(1, 1, h);
  ss.meas.Noise = Eigen::MatrixXd::Constant(1, 1, noise);
  return ss;
}

// Dense joint-covariance oracle: y stacks into one multivariate normal with
// Cov(y_t, y_s) = H A^|t-s| P H' + delta_ts R over the stationary P.
double dense_loglik(const StateSpace& ss, const Eigen::MatrixXd& Y) {
  const auto T = Y.rows();
  const auto m = Y.cols();
  const Eigen::MatrixXd P = lyapunov(ss.solved);
  const Eigen::MatrixXd R = ss.meas.Noise * ss.meas.Noise.transpose();
  const auto& H = ss.meas.Hm;
  const auto& A = ss.solved.A;
  Eigen::MatrixXd big(T * m, T * m);
  for (Eigen::Index t = 0; t < T; ++t) {
    for (Eigen::Index s = 0; s < T; ++s) {
      Eigen::MatrixXd Apow = Eigen::MatrixXd::Identity(A.rows(), A.cols());
      for (Eigen::Index i = 0; i < std::abs(t - s); ++i) Apow = A * Apow;
      Eigen::MatrixXd cov;
      if (t >= s) {
        cov = H * Apow * P * H.transpose();
      } else {
        cov = H * P * Apow.transpose() * H.transpose();
      }
      if (t == s) cov += R;
      big.block(t * m, s * m, m, m) = cov;
    }
  }
  Eigen::VectorXd stacked(T * m);
  for (Eigen::Index t = 0; t < T; ++t) {
    stacked.segment(t * m, m) = Y.row(t).transpose();
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(big);
  REQUIRE(llt.info() == Eigen::Success);
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < big.rows(); ++i) {
    logdet += 2.0 * std::log(Eigen::MatrixXd(llt.matrixL())(i, i));
  }
  const double quad = stacked.dot(llt.solve(stacked));
  return -0.5 * (T * m * std::log(2.0 * std::numbers::pi) + logdet + quad);
}

}  // namespace

TEST_CASE("pure noise reduces to the standard normal density") {
  const auto ss = scalar_ss(0.0, 0.0, 1.0, 1.0);
  Eigen::MatrixXd Y(3, 1);
  Y << 0.5, -1.0, 2.0;
  double expect = 0.0;
  for (int t = 0; t < 3; ++t) {
    expect += -0.5 * (std::log(2.0 * std::numbers::pi) + Y(t, 0) * Y(t, 0));
  }
  CHECK(kalman_loglik(ss, Y) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("empty panel has zero log-likelihood") {
  const auto ss = scalar_ss(0.5, 1.0, 1.0, 0.1);
  CHECK(kalman_loglik(ss, Eigen::MatrixXd(0, 1)) == 0.0);
}

TEST_CASE("agrees with the dense covariance oracle") {
  SUBCASE("scalar AR(1) with noise, T=5") {
    const auto ss = scalar_ss(0.7, 0.8, 1.0, 0.3);
    Eigen::MatrixXd Y(5, 1);
    Y << 0.2, -0.1, 0.4, 0.05, -0.3;
    CHECK(kalman_loglik(ss, Y) == doctest::Approx(dense_loglik(ss, Y)).epsilon(1e-8));
  }
  SUBCASE("two states, two observables, T=6") {
    StateSpace ss;
    Eigen::MatrixXd A(2, 2), B(2, 2), H(2, 2), M(2, 2);
    A << 0.6, 0.1, 0.0, 0.4;
    B << 1.0, 0.0, 0.2, 0.5;
    H << 1.0, 0.0, 0.3, 1.0;
    M << 0.2, 0.0, 0.0, 0.1;
    ss.solved.A = A;
    ss.solved.B = B;
    ss.solved.determinate = true;
    ss.solved.converged = true;
    ss.meas.intercept = Eigen::VectorXd::Zero(2);
    ss.meas.Hm = H;
    ss.meas.Noise = M;
    Rng rng(5);
    Eigen::MatrixXd Y(6, 2);
    for (int t = 0; t < 6; ++t) {
      Y(t, 0) = rng.normal();
      Y(t, 1) = rng.normal();
    }
    CHECK(kalman_loglik(ss, Y) == doctest::Approx(dense_loglik(ss, Y)).epsilon(1e-8));
  }
}

TEST_CASE("singular forecast covariance throws") {
  const auto ss = scalar_ss(0.0, 0.0, 1.0, 0.0);  // no state var, no noise
  Eigen::MatrixXd Y(1, 1);
  Y << 0.1;
  CHECK_THROWS_AS(kalman_loglik(ss, Y), std::runtime_error);
}

TEST_CASE("wrong panel width throws") {
  const auto ss = scalar_ss(0.2, 1.0, 1.0, 0.1);
  CHECK_THROWS_AS(kalman_loglik(ss, Eigen::MatrixXd::Zero(3, 2)),
                  std::invalid_argument);
}

TEST_CASE("measurement intercept is honored") {
  auto ss = scalar_ss(0.0, 0.0, 1.0, 1.0);
  ss.meas.intercept = Eigen::VectorXd::Constant(1, 3.0);
  Eigen::MatrixXd Y(1, 1);
  Y << 3.0;
  CHECK(kalman_loglik(ss, Y) ==
        doctest::Approx(-0.5 * std::log(2.0 * std::numbers::pi)));
}
