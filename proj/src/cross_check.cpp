#include "kendall3d/cross_check.hpp"

#include "kendall3d/errors.hpp"
#include "kendall3d/kendall_curvature.hpp"
#include "kendall3d/shape_core.hpp"
#include "kendall3d/tangent_basis.hpp"

#include <algorithm>
#include <cmath>

namespace kendall3d {

std::pair<AmbientVector, AmbientVector> random_horizontal_frame(const PreShape& z,
                                                                std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  auto gaussian = [&] {
    AmbientVector g(z.matrix().rows(), 3);
    for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = normal(rng);
    return horizontal_project(g, z);
  };
  AmbientVector u = gaussian();
  u /= u.norm();
  AmbientVector v = gaussian();
  v -= frobenius_dot(v, u) * u;
  v /= v.norm();
  return {std::move(u), std::move(v)};
}

CrossCheckReport cross_check(const PreShape& z, int trials, std::uint64_t seed,
                             const OracleConfig& cfg) {
  if (trials < 1) throw InvalidArgument("cross_check: trials must be >= 1");
  validate(cfg);
  const KendallBasis basis = xi_basis(z);
  std::mt19937_64 rng(seed);
  CrossCheckReport report;
  for (int t = 0; t < trials; ++t) {
    const auto [u, v] = random_horizontal_frame(z, rng);
    const CurvaturePlane plane = evaluate_plane(basis, u, v);
    CrossCheckTrial trial;
    trial.closed_form = plane.bracket_norm_sq;
    trial.curvature = plane.curvature;
    trial.oracle = oneill_bracket_norm_sq(z, u, v, cfg);
    trial.relative_error =
        std::abs(trial.closed_form - trial.oracle) / std::max(std::abs(trial.oracle), 1e-12);
    report.max_relative_error = std::max(report.max_relative_error, trial.relative_error);
    report.trials.push_back(trial);
  }
  return report;
}

}  // namespace kendall3d
