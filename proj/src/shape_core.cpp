// shape_core.cpp — pre-shape sphere primitives.

#include "kendall3d/shape_core.hpp"

#include "kendall3d/errors.hpp"
#include "kendall3d/kernels.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace kendall3d {

double frobenius_dot(const ShapeMatrix& a, const ShapeMatrix& b) {
  if (a.rows() != b.rows())
    throw InvalidArgument("frobenius_dot: row count mismatch (" + std::to_string(a.rows()) +
                          " vs " + std::to_string(b.rows()) + ")");
  return kernels::dot(flat(a), flat(b));
}

Configuration::Configuration(ShapeMatrix points) : points_(std::move(points)) {
  if (points_.rows() < 4)
    throw InvalidArgument("configuration needs at least 4 landmarks, got " +
                          std::to_string(points_.rows()));
  if (!points_.allFinite()) throw InvalidArgument("configuration has non-finite coordinates");
}

PreShape::PreShape(ShapeMatrix z) : z_(std::move(z)) {
  if (z_.rows() < 1) throw InvalidArgument("pre-shape must have at least one row");
  if (!z_.allFinite()) throw InvalidArgument("pre-shape has non-finite entries");
  const double n = z_.norm();
  if (std::abs(n - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "pre-shape must have unit Frobenius norm, got " << n;
    throw InvalidArgument(os.str());
  }
  z_ /= n;
}

Matrix helmert_submatrix(int k) {
  if (k < 2) throw InvalidArgument("helmert_submatrix: k must be >= 2, got " + std::to_string(k));
  Matrix h = Matrix::Zero(k - 1, k);
  for (int j = 1; j < k; ++j) {
    const double c = 1.0 / std::sqrt(static_cast<double>(j) * (j + 1));
    for (int i = 0; i < j; ++i) h(j - 1, i) = -c;
    h(j - 1, j) = j * c;
  }
  return h;
}

namespace {

ShapeMatrix helmertize(const Configuration& x) {
  return helmert_submatrix(x.k()) * x.points();
}

}  // namespace

double centroid_size(const Configuration& x) { return helmertize(x).norm(); }

PreShape to_preshape(const Configuration& x) {
  ShapeMatrix xh = helmertize(x);
  const double size = xh.norm();
  if (!(size > kDegenerateSizeTol)) {
    std::ostringstream os;
    os << "degenerate configuration: centroid size " << size << " <= " << kDegenerateSizeTol;
    throw DegenerateConfiguration(os.str());
  }
  xh /= size;
  return PreShape(std::move(xh));
}

const std::array<Matrix3, 3>& lie_generators() {
  static const std::array<Matrix3, 3> gens = [] {
    Matrix3 lx, ly, lz;
    lx << 0, 0, 0,
          0, 0, -1,
          0, 1, 0;
    ly << 0, 0, 1,
          0, 0, 0,
          -1, 0, 0;
    lz << 0, -1, 0,
          1, 0, 0,
          0, 0, 0;
    return std::array<Matrix3, 3>{lx, ly, lz};
  }();
  return gens;
}

VerticalFrame vertical_frame(const PreShape& z) {
  const auto& gens = lie_generators();
  VerticalFrame f;
  for (int a = 0; a < 3; ++a) f.w[a] = z.matrix() * gens[a];
  return f;
}

double horizontality_violation(const PreShape& z, const AmbientVector& v) {
  double worst = std::abs(frobenius_dot(v, z.matrix()));
  const VerticalFrame f = vertical_frame(z);
  for (const auto& w : f.w) worst = std::max(worst, std::abs(frobenius_dot(v, w)));
  return worst;
}

Eigen::Vector3d singular_values(const PreShape& z) {
  Eigen::JacobiSVD<Matrix> svd(Matrix(z.matrix()));
  Eigen::Vector3d s = Eigen::Vector3d::Zero();
  const auto& sv = svd.singularValues();
  for (Eigen::Index i = 0; i < std::min<Eigen::Index>(3, sv.size()); ++i) s(i) = sv(i);
  return s;
}

int numerical_rank(const PreShape& z, double tol) {
  const Eigen::Vector3d s = singular_values(z);
  return static_cast<int>((s.array() > tol).count());
}

PreShape exp_sphere(const PreShape& z, const AmbientVector& v) {
  if (v.rows() != z.matrix().rows()) throw InvalidArgument("exp_sphere: dimension mismatch");
  const double radial = frobenius_dot(v, z.matrix());
  if (std::abs(radial) > 1e-10) {
    std::ostringstream os;
    os << "exp_sphere: vector is not tangent at the base point (<v,Z> = " << radial << ")";
    throw InvalidArgument(os.str());
  }
  const double n = v.norm();
  if (n <= 1e-14) return z;
  ShapeMatrix out = std::cos(n) * z.matrix() + (std::sin(n) / n) * v;
  // Renormalize away the rounding of the rotation in the (Z, v) plane.
  out /= out.norm();
  return PreShape(std::move(out));
}

AmbientVector log_sphere(const PreShape& z, const PreShape& y) {
  if (y.matrix().rows() != z.matrix().rows()) throw InvalidArgument("log_sphere: dimension mismatch");
  const double c = frobenius_dot(z.matrix(), y.matrix());
  if (c <= -1.0 + 1e-10) {
    std::ostringstream os;
    os << "log_sphere: points are antipodal (<Z,Y> = " << c << ")";
    throw NoUniqueLogarithm(os.str());
  }
  AmbientVector w = y.matrix() - c * z.matrix();
  const double s = w.norm();
  if (s <= 1e-300) return AmbientVector::Zero(z.matrix().rows(), 3);
  const double theta = std::atan2(s, c);
  return (theta / s) * w;
}

double sphere_distance(const PreShape& z, const PreShape& y) {
  const double c = std::clamp(frobenius_dot(z.matrix(), y.matrix()), -1.0, 1.0);
  return std::acos(c);
}

Alignment align_rotation(const PreShape& z, const PreShape& y) {
  if (y.matrix().rows() != z.matrix().rows())
    throw InvalidArgument("align_rotation: dimension mismatch");
  const Matrix3 m = y.matrix().transpose() * z.matrix();
  Eigen::JacobiSVD<Matrix3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix3 d = Matrix3::Identity();
  if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0) d(2, 2) = -1.0;
  const Matrix3 r = svd.matrixU() * d * svd.matrixV().transpose();
  ShapeMatrix aligned = y.matrix() * r;
  aligned /= aligned.norm();
  return {PreShape(std::move(aligned)), r};
}

double shape_distance(const PreShape& z, const PreShape& y) {
  return sphere_distance(z, align_rotation(z, y).aligned);
}

}  // namespace kendall3d
