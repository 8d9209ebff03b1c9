// shape_core.hpp — configurations, Helmertization, the pre-shape sphere and
// its exponential/logarithm, the vertical (rotation) frame, and optimal
// SO(3) alignment of pre-shapes.

#pragma once

#include "kendall3d/types.hpp"

#include <array>

namespace kendall3d {

/// Tolerance below which the Helmertized configuration is treated as a point.
inline constexpr double kDegenerateSizeTol = 1e-12;
/// Pre-shapes with second singular value at or below this are singular.
inline constexpr double kSingularShapeTol = 1e-8;

/// The (k−1)×k Helmert submatrix: row j (1-based) holds j entries of
/// −1/sqrt(j(j+1)), then j/sqrt(j(j+1)), then zeros. Requires k >= 2.
Matrix helmert_submatrix(int k);

/// Removes location (Helmert contrasts) and scale (centroid size).
/// Throws DegenerateConfiguration when all landmarks coincide.
PreShape to_preshape(const Configuration& x);

/// Centroid size of a configuration, i.e. the Frobenius norm of its
/// Helmertized coordinates.
double centroid_size(const Configuration& x);

/// so(3) generators L_x, L_y, L_z.
const std::array<Matrix3, 3>& lie_generators();

/// Z·L_x, Z·L_y, Z·L_z: tangent directions of the rotation orbit through Z.
struct VerticalFrame {
  std::array<AmbientVector, 3> w;
};

VerticalFrame vertical_frame(const PreShape& z);

/// Largest of |<v, Z>| and |<v, Z·L_a>| over the three generators.
double horizontality_violation(const PreShape& z, const AmbientVector& v);

/// Singular values of the pre-shape, descending.
Eigen::Vector3d singular_values(const PreShape& z);
int numerical_rank(const PreShape& z, double tol = kSingularShapeTol);

/// Great-circle exponential: cos|v| Z + sin|v| v/|v|. Requires <v, Z> = 0
/// within 1e-10, otherwise InvalidArgument.
PreShape exp_sphere(const PreShape& z, const AmbientVector& v);

/// Inverse of exp_sphere. Throws NoUniqueLogarithm when <Z, Y> <= −1 + 1e-10.
AmbientVector log_sphere(const PreShape& z, const PreShape& y);

/// Great-circle distance arccos(<Z, Y>) on the pre-shape sphere.
double sphere_distance(const PreShape& z, const PreShape& y);

struct Alignment {
  PreShape aligned;  ///< Y·R
  Matrix3 rotation;  ///< R in SO(3)
};

/// Rotation R in SO(3) maximizing <Z, Y·R>, from the SVD of Yᵀ·Z with the
/// smallest singular direction flipped when needed to keep det(R) = +1.
Alignment align_rotation(const PreShape& z, const PreShape& y);

/// Procrustes distance between the orbits of Z and Y.
double shape_distance(const PreShape& z, const PreShape& y);

}  // namespace kendall3d
