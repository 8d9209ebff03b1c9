// tangent_basis.hpp — orthonormal bases of the horizontal space at a
// pre-shape, i.e. the tangent space of Kendall's shape space.
//
// The horizontal space is the kernel of the self-adjoint endomorphism
//   f(A) = <A,Z> Z + sum_a <A, Z·L_a> Z·L_a
// of the ambient space R^{3(k−1)}. Its matrix M (row-major flattening) is
// diagonalized and the eigenvectors with numerically zero eigenvalues span
// the kernel. The returned basis is then fixed by orthonormalizing the
// projected coordinate axes in order, so it does not depend on how the
// eigensolver happened to rotate the repeated zero eigenspace (which differs
// between kernel backends and platforms).

#pragma once

#include "kendall3d/types.hpp"

#include <vector>

namespace kendall3d {

/// Relative eigenvalue cut used to select the kernel of M.
inline constexpr double kDefaultKernelTol = 1e-10;

/// Matrix of f in the canonical (row-major flattened) basis; symmetric PSD of
/// rank 4 at non-singular shapes.
struct ProjectorMatrix {
  RowMatrix m;
};

ProjectorMatrix endomorphism_matrix(const PreShape& z);

/// f(A) evaluated directly, without forming M.
AmbientVector apply_endomorphism(const PreShape& z, const AmbientVector& a);

class HorizontalBasis {
 public:
  HorizontalBasis(PreShape base_point, RowMatrix packed, Vector eigenvalues, double largest);

  const PreShape& base_point() const noexcept { return base_point_; }
  /// d = 3k − 7.
  int dimension() const noexcept { return static_cast<int>(packed_.rows()); }
  /// The i-th basis vector t_i as a (k−1)×3 matrix.
  AmbientVector vector(int i) const;
  /// Basis vectors as rows of a d × 3(k−1) matrix.
  const RowMatrix& packed() const noexcept { return packed_; }
  /// Eigenvalues of M on the kernel (ascending).
  const Vector& kernel_eigenvalues() const noexcept { return eigenvalues_; }
  double largest_eigenvalue() const noexcept { return largest_; }

 private:
  PreShape base_point_;
  RowMatrix packed_;
  Vector eigenvalues_;
  double largest_;
};

/// Orthonormal basis of the horizontal space at z. The kernel is the span of
/// the eigenvectors of M with eigenvalue below zero_tol * lambda_max. Throws
/// SingularShape when rank(z) < 2 or the kernel dimension is not 3k − 7.
HorizontalBasis horizontal_basis(const PreShape& z, double zero_tol = kDefaultKernelTol);

/// Coordinates v_i = <V, t_i>. Throws InvalidArgument if V is not horizontal
/// within 1e-8.
Vector coordinates(const AmbientVector& v, const HorizontalBasis& basis);

/// sum_i c_i t_i.
AmbientVector from_coordinates(const Vector& c, const HorizontalBasis& basis);

/// Removes the components of v along span{Z, Z·L_x, Z·L_y, Z·L_z}.
AmbientVector horizontal_project(const AmbientVector& v, const PreShape& z);

/// Largest |<t_i,t_j> − δ_ij| over the basis.
double orthonormality_residual(const HorizontalBasis& basis);

}  // namespace kendall3d
