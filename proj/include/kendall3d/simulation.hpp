// simulation.hpp — Gaussian sampling in the tangent space at a reference
// shape, mapped back to the pre-shape sphere by the exponential map.

#pragma once

#include "kendall3d/tangent_basis.hpp"
#include "kendall3d/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace kendall3d {

struct SimulationSpec {
  /// Standard deviation of each orthonormal tangent coordinate. Ignored when
  /// covariance is set.
  double sigma = 0.0;
  /// Optional d×d symmetric positive semi-definite covariance.
  std::optional<Matrix> covariance;
  int n_samples = 1;
  std::uint64_t seed = 0;
  /// Worker threads; 0 picks the hardware concurrency. Results do not
  /// depend on this value.
  unsigned threads = 1;
  /// Consecutive draws with norm >= π tolerated for one sample.
  int max_rejections = 1000;
};

struct SimulationResult {
  std::vector<PreShape> samples;
  /// Tangent coordinates of each accepted draw (length d).
  std::vector<Vector> coordinates;
  std::size_t rejections = 0;
};

/// Draws n_samples coordinate vectors from N(0, σ²I) (or N(0, Σ)) in the
/// orthonormal horizontal basis at z and maps each through exp_sphere. Draws
/// of norm >= π are redrawn from the same per-sample stream. Sample i uses a
/// generator seeded from (seed, i), so output is independent of threading.
/// Throws SpecError on invalid parameters or after max_rejections
/// consecutive rejections.
SimulationResult simulate_in_tangent_space(const PreShape& z, const SimulationSpec& spec);
SimulationResult simulate_in_tangent_space(const HorizontalBasis& basis,
                                           const SimulationSpec& spec);

/// Centered k×3 configurations Hᵀ·Z whose pre-shapes are the samples.
std::vector<Configuration> samples_to_configurations(const std::vector<PreShape>& samples, int k);

}  // namespace kendall3d
