// numeric_oracle.hpp — finite-difference estimate of |[u, v]^V|² through the
// O'Neill integrability tensor of the submersion S^k_3 → Σ^k_3.
//
// For horizontal u, v at Z let V(Y) be the horizontal projection of v at Y.
// Then [U, V]^V = 2 A_u v = 2 (d/dt V(exp_Z(t u)) at t = 0)^V, estimated by
// central differences along the sphere geodesic. The projections here are
// built independently of tangent_basis and kendall_curvature.

#pragma once

#include "kendall3d/types.hpp"

namespace kendall3d {

struct OracleConfig {
  double step = 1e-4;
  /// Central-difference order: 2 or 4.
  int order = 2;
};

/// Throws InvalidArgument unless step is in (1e-8, 1e-2) and order is 2 or 4.
void validate(const OracleConfig& cfg);

/// Vertical vector [u, v]^V at Z (as a (k−1)×3 matrix).
AmbientVector oneill_vertical_bracket(const PreShape& z, const AmbientVector& u,
                                      const AmbientVector& v, const OracleConfig& cfg = {});

/// |[u, v]^V|² for u, v horizontal and orthonormal within 1e-8. Throws
/// SingularShape at rank < 2 and InvalidArgument on other violations.
double oneill_bracket_norm_sq(const PreShape& z, const AmbientVector& u, const AmbientVector& v,
                              const OracleConfig& cfg = {});

}  // namespace kendall3d
