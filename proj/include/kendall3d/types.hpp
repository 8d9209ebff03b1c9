// types.hpp — matrix aliases and the validated value types shared by every
// module: Configuration (k×3 landmarks) and PreShape ((k−1)×3, unit norm).
//
// Shape matrices are row-major, so the flattened ambient vector of a
// (k−1)×3 matrix is its storage order: index = row * 3 + column. The
// endomorphism matrix and all kernels rely on this layout.

#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <span>

namespace kendall3d {

using ShapeMatrix = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;
using AmbientVector = ShapeMatrix;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Matrix3 = Eigen::Matrix3d;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline std::span<const double> flat(const ShapeMatrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}
inline std::span<double> flat(ShapeMatrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

/// Frobenius inner product of two equally sized shape matrices.
double frobenius_dot(const ShapeMatrix& a, const ShapeMatrix& b);

/// Intrinsic dimension 3k − 7 of the shape space for k landmarks.
constexpr int shape_space_dimension(int k) noexcept { return 3 * k - 7; }

/// k labelled landmarks in R^3. Requires k >= 4 and finite entries.
class Configuration {
 public:
  explicit Configuration(ShapeMatrix points);

  const ShapeMatrix& points() const noexcept { return points_; }
  int k() const noexcept { return static_cast<int>(points_.rows()); }

 private:
  ShapeMatrix points_;
};

/// A point on the pre-shape sphere, stored as a (k−1)×3 matrix with rows
/// indexed by Helmert contrasts.
class PreShape {
 public:
  /// Accepts a matrix whose Frobenius norm is 1 within 1e-10 and
  /// renormalizes it; anything else is an invalid argument.
  explicit PreShape(ShapeMatrix z);

  const ShapeMatrix& matrix() const noexcept { return z_; }
  /// Landmark count k (rows + 1).
  int k() const noexcept { return static_cast<int>(z_.rows()) + 1; }
  int ambient_dimension() const noexcept { return static_cast<int>(z_.size()); }

 private:
  ShapeMatrix z_;
};

}  // namespace kendall3d
