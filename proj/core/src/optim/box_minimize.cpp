#include "sdpolicy/optim/box_minimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdpolicy::optim {

namespace {

Eigen::VectorXd project(const Eigen::VectorXd& x, const Box& box) {
  Eigen::VectorXd out = x;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out(i) = std::clamp(out(i), box[i].first, box[i].second);
  }
  return out;
}

}  // namespace

BoxMinimizeResult minimize_over_box(const ObjectiveFn& f, const Box& box,
                                    const BoxMinimizeOptions& opts) {
  for (const auto& [lo, hi] : box) {
    if (!(lo <= hi)) {
      throw std::invalid_argument("minimize_over_box: empty box interval");
    }
  }
  if (opts.grid_points < 1) {
    throw std::invalid_argument("minimize_over_box: grid_points must be >= 1");
  }

  BoxMinimizeResult result;
  const int dim = static_cast<int>(box.size());
  int evals = 0;
  const auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    return f(x);
  };

  if (dim == 0) {
    result.x = Eigen::VectorXd(0);
    result.value = eval(result.x);
    result.evaluations = evals;
    result.all_grid_infeasible = result.value >= opts.infeasible_at;
    return result;
  }

  // Coarse grid: cartesian product of per-dimension linspaces.
  std::vector<std::vector<double>> axes(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) {
    const auto [lo, hi] = box[i];
    if (lo == hi || opts.grid_points == 1) {
      axes[i] = {lo};
      continue;
    }
    for (int g = 0; g < opts.grid_points; ++g) {
      const double frac = static_cast<double>(g) / (opts.grid_points - 1);
      // Endpoints exact so box-validated consumers never see rounding spill.
      axes[i].push_back(g == 0 ? lo
                        : g == opts.grid_points - 1
                            ? hi
                            : lo + (hi - lo) * frac);
    }
  }

  Eigen::VectorXd best(dim);
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> counter(box.size(), 0);
  Eigen::VectorXd point(dim);
  for (;;) {
    for (int i = 0; i < dim; ++i) point(i) = axes[i][counter[i]];
    const double v = eval(point);
    if (v < best_val) {
      best_val = v;
      best = point;
    }
    int pos = 0;
    while (pos < dim && ++counter[pos] == axes[pos].size()) {
      counter[pos] = 0;
      ++pos;
    }
    if (pos == dim) break;
  }

  if (best_val >= opts.infeasible_at) {
    result.x = best;
    result.value = best_val;
    result.evaluations = evals;
    result.all_grid_infeasible = true;
    return result;
  }

  // Nelder-Mead from the best grid point, with projection onto the box and
  // best-ever tracking. Degenerate (fixed) dimensions get no vertex offset.
  struct Vertex {
    Eigen::VectorXd x;
    double v;
  };
  std::vector<Vertex> simplex;
  simplex.push_back({best, best_val});
  for (int i = 0; i < dim; ++i) {
    Eigen::VectorXd x = best;
    const double width = box[i].second - box[i].first;
    if (width == 0.0) continue;
    double step = 0.1 * width;
    if (x(i) + step > box[i].second) step = -step;
    x(i) += step;
    x = project(x, box);
    simplex.push_back({x, eval(x)});
  }
  Eigen::VectorXd best_ever = best;
  double best_ever_val = best_val;
  const auto note = [&](const Vertex& vx) {
    if (vx.v < best_ever_val) {
      best_ever_val = vx.v;
      best_ever = vx.x;
    }
  };
  for (auto& vx : simplex) note(vx);

  if (simplex.size() >= 2) {
    const auto m = simplex.size();
    for (int it = 0; it < opts.nm_max_iter; ++it) {
      std::sort(simplex.begin(), simplex.end(),
                [](const Vertex& a, const Vertex& b) { return a.v < b.v; });
      if (simplex.back().v - simplex.front().v <
          opts.nm_tol * (1.0 + std::abs(simplex.front().v))) {
        break;
      }
      Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
      for (std::size_t i = 0; i + 1 < m; ++i) centroid += simplex[i].x;
      centroid /= static_cast<double>(m - 1);

      const auto try_point = [&](double coef) {
        Vertex vx;
        vx.x = project(centroid + coef * (centroid - simplex.back().x), box);
        vx.v = eval(vx.x);
        note(vx);
        return vx;
      };

      const Vertex reflected = try_point(1.0);
      if (reflected.v < simplex.front().v) {
        const Vertex expanded = try_point(2.0);
        simplex.back() = expanded.v < reflected.v ? expanded : reflected;
        continue;
      }
      if (reflected.v < simplex[m - 2].v) {
        simplex.back() = reflected;
        continue;
      }
      const Vertex contracted = try_point(-0.5);
      if (contracted.v < simplex.back().v) {
        simplex.back() = contracted;
        continue;
      }
      // Shrink toward the best vertex.
      for (std::size_t i = 1; i < m; ++i) {
        simplex[i].x =
            project(simplex[0].x + 0.5 * (simplex[i].x - simplex[0].x), box);
        simplex[i].v = eval(simplex[i].x);
        note(simplex[i]);
      }
    }
  }

  result.x = best_ever;
  result.value = best_ever_val;
  result.evaluations = evals;
  return result;
}

}  // namespace sdpolicy::optim
