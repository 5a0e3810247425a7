#pragma once

#include <Eigen/Core>
#include <functional>
#include <utility>
#include <vector>

namespace sdpolicy::optim {

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;
using Box = std::vector<std::pair<double, double>>;

struct BoxMinimizeOptions {
  int grid_points = 7;       // per dimension
  int nm_max_iter = 400;
  double nm_tol = 1e-10;     // function-spread stopping rule
  /// Values >= this are treated as infeasible (indeterminacy penalty).
  double infeasible_at = 1e6;
};

struct BoxMinimizeResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int evaluations = 0;
  /// Every coarse grid point hit the infeasibility penalty; `x`/`value`
  /// then report the best penalized point without local refinement.
  bool all_grid_infeasible = false;
};

/// Coarse grid over the box (grid_points per dimension, endpoints
/// included) followed by Nelder-Mead from the best grid point, iterates
/// projected onto the box. The best point ever evaluated is returned, so
/// the result is never worse than the best grid point. A zero-dimensional
/// box evaluates the empty vector once.
BoxMinimizeResult minimize_over_box(const ObjectiveFn& f, const Box& box,
                                    const BoxMinimizeOptions& opts = {});

}  // namespace sdpolicy::optim
