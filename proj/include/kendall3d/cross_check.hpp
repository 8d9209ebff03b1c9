// cross_check.hpp — closed-form vertical bracket norms against the
// finite-difference oracle on random horizontal planes.

#pragma once

#include "kendall3d/numeric_oracle.hpp"
#include "kendall3d/types.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace kendall3d {

/// Orthonormal pair of horizontal vectors at z drawn from the projected
/// standard Gaussian.
std::pair<AmbientVector, AmbientVector> random_horizontal_frame(const PreShape& z,
                                                                std::mt19937_64& rng);

struct CrossCheckTrial {
  double closed_form = 0.0;
  double oracle = 0.0;
  double relative_error = 0.0;
  double curvature = 1.0;
};

struct CrossCheckReport {
  std::vector<CrossCheckTrial> trials;
  double max_relative_error = 0.0;
};

/// relative_error = |closed − oracle| / max(|oracle|, 1e-12).
CrossCheckReport cross_check(const PreShape& z, int trials, std::uint64_t seed,
                             const OracleConfig& cfg = {});

}  // namespace kendall3d
