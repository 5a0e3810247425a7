#include "sdpolicy/lre/kalman.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sdpolicy::lre {

double kalman_loglik(const StateSpace& ss, const Eigen::MatrixXd& Y) {
  if (Y.rows() == 0) return 0.0;
  const auto& A = ss.solved.A;
  const auto& B = ss.solved.B;
  const auto& H = ss.meas.Hm;
  const auto m = H.rows();
  if (Y.cols() != m) {
    throw std::invalid_argument("kalman_loglik: panel has wrong column count");
  }
  if (!ss.solved.determinate) {
    throw std::invalid_argument("kalman_loglik: model must be determinate");
  }

  const Eigen::MatrixXd Q = B * B.transpose();
  const Eigen::MatrixXd R = ss.meas.Noise * ss.meas.Noise.transpose();
  const auto nz = A.rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(nz, nz);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(nz);
  Eigen::MatrixXd P = lyapunov(ss.solved);

  double ll = 0.0;
  for (Eigen::Index t = 0; t < Y.rows(); ++t) {
    const Eigen::VectorXd x_pred = A * x;
    const Eigen::MatrixXd P_pred = A * P * A.transpose() + Q;
    const Eigen::VectorXd innov =
        Y.row(t).transpose() - ss.meas.intercept - H * x_pred;
    const Eigen::MatrixXd S = H * P_pred * H.transpose() + R;

    const Eigen::LLT<Eigen::MatrixXd> llt(S);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error(
          "kalman_loglik: singular forecast-error covariance");
    }
    const Eigen::MatrixXd L = llt.matrixL();
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) logdet += 2.0 * std::log(L(i, i));
    const Eigen::VectorXd w = llt.solve(innov);
    ll += -0.5 * (static_cast<double>(m) * std::log(2.0 * std::numbers::pi) +
                  logdet + innov.dot(w));

    const Eigen::MatrixXd K = P_pred * H.transpose() * llt.solve(
        Eigen::MatrixXd::Identity(m, m));
    x = x_pred + K * innov;
    // Joseph form keeps P symmetric positive semidefinite.
    const Eigen::MatrixXd J = I - K * H;
    P = J * P_pred * J.transpose() + K * R * K.transpose();
  }
  return ll;
}

}  // namespace sdpolicy::lre
