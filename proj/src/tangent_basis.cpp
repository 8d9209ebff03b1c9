// tangent_basis.cpp — kernel of the horizontal-space endomorphism.

#include "kendall3d/tangent_basis.hpp"

#include "kendall3d/errors.hpp"
#include "kendall3d/kernels.hpp"
#include "kendall3d/shape_core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace kendall3d {
namespace {

void require_nonsingular(const PreShape& z, const char* where) {
  const Eigen::Vector3d s = singular_values(z);
  if (!(s(1) > kSingularShapeTol)) {
    std::ostringstream os;
    os << where << ": singular shape (second singular value " << s(1) << " <= "
       << kSingularShapeTol << ")";
    throw SingularShape(os.str());
  }
}

// Any orthonormal basis of a repeated eigenspace is a valid eigensolver
// answer, so rounding noise can rotate it freely. Fix the basis by running
// Gram–Schmidt over the projected coordinate axes P·e_0, P·e_1, ... in order.
// Axes whose remaining component is below kSkip are passed over. Some axis
// always has a component of at least 1/sqrt(n) in what is left, so with
// n < 1e6 all d directions are found.
RowMatrix canonical_rows(const Matrix& kernel_vectors) {
  constexpr double kSkip = 1e-3;
  const Eigen::Index n = kernel_vectors.rows();
  const Eigen::Index d = kernel_vectors.cols();
  const Matrix p = kernel_vectors * kernel_vectors.transpose();
  RowMatrix rows(d, n);
  Eigen::Index found = 0;
  for (Eigen::Index i = 0; i < n && found < d; ++i) {
    Vector r = p.col(i);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index j = 0; j < found; ++j) r -= rows.row(j).dot(r) * rows.row(j).transpose();
    const double norm = r.norm();
    if (norm < kSkip) continue;
    rows.row(found++) = r.transpose() / norm;
  }
  if (found != d) throw IllConditionedBasis("horizontal_basis: could not fix a canonical basis");
  return rows;
}

std::array<AmbientVector, 4> spanning_set(const PreShape& z) {
  const VerticalFrame f = vertical_frame(z);
  return {z.matrix(), f.w[0], f.w[1], f.w[2]};
}

}  // namespace

ProjectorMatrix endomorphism_matrix(const PreShape& z) {
  require_nonsingular(z, "endomorphism_matrix");
  const auto n = static_cast<Eigen::Index>(z.ambient_dimension());
  ProjectorMatrix p{RowMatrix::Zero(n, n)};
  std::span<double> m(p.m.data(), static_cast<std::size_t>(p.m.size()));
  for (const auto& w : spanning_set(z)) kernels::syr(1.0, flat(w), m);
  return p;
}

AmbientVector apply_endomorphism(const PreShape& z, const AmbientVector& a) {
  AmbientVector out = AmbientVector::Zero(a.rows(), 3);
  for (const auto& w : spanning_set(z)) kernels::axpy(frobenius_dot(a, w), flat(w), flat(out));
  return out;
}

HorizontalBasis::HorizontalBasis(PreShape base_point, RowMatrix packed, Vector eigenvalues,
                                 double largest)
    : base_point_(std::move(base_point)),
      packed_(std::move(packed)),
      eigenvalues_(std::move(eigenvalues)),
      largest_(largest) {}

AmbientVector HorizontalBasis::vector(int i) const {
  if (i < 0 || i >= dimension()) throw InvalidArgument("basis index out of range");
  return Eigen::Map<const ShapeMatrix>(packed_.row(i).data(), base_point_.matrix().rows(), 3);
}

HorizontalBasis horizontal_basis(const PreShape& z, double zero_tol) {
  if (!(zero_tol > 0.0)) throw InvalidArgument("horizontal_basis: zero_tol must be positive");
  const ProjectorMatrix p = endomorphism_matrix(z);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(Matrix(p.m), Eigen::ComputeEigenvectors);
  if (eig.info() != Eigen::Success) throw SingularShape("horizontal_basis: eigensolver failed");

  const Vector& values = eig.eigenvalues();  // ascending
  const double largest = values(values.size() - 1);
  const double cut = zero_tol * largest;
  const int kernel = static_cast<int>((values.array() < cut).count());
  const int expected = shape_space_dimension(z.k());
  if (kernel != expected) {
    std::ostringstream os;
    os << "horizontal_basis: kernel dimension " << kernel << " differs from 3k-7 = " << expected
       << "; shape is too close to the singular set";
    throw SingularShape(os.str());
  }

  const Matrix kernel_vectors = eig.eigenvectors().leftCols(kernel);
  return HorizontalBasis(z, canonical_rows(kernel_vectors), values.head(kernel), largest);
}

Vector coordinates(const AmbientVector& v, const HorizontalBasis& basis) {
  const PreShape& z = basis.base_point();
  if (v.rows() != z.matrix().rows()) throw InvalidArgument("coordinates: dimension mismatch");
  const double violation = horizontality_violation(z, v);
  if (violation > 1e-8 * std::max(1.0, v.norm())) {
    std::ostringstream os;
    os << "coordinates: vector is not horizontal (violation " << violation << ")";
    throw InvalidArgument(os.str());
  }
  Vector c(basis.dimension());
  const RowMatrix& rows = basis.packed();
  kernels::gemv({rows.data(), static_cast<std::size_t>(rows.size())}, flat(v),
                {c.data(), static_cast<std::size_t>(c.size())});
  return c;
}

AmbientVector from_coordinates(const Vector& c, const HorizontalBasis& basis) {
  if (c.size() != basis.dimension()) {
    std::ostringstream os;
    os << "from_coordinates: expected " << basis.dimension() << " coordinates, got " << c.size();
    throw InvalidArgument(os.str());
  }
  if (!c.allFinite()) throw InvalidArgument("from_coordinates: non-finite coordinates");
  AmbientVector out(basis.base_point().matrix().rows(), 3);
  const RowMatrix& rows = basis.packed();
  kernels::combine({c.data(), static_cast<std::size_t>(c.size())},
                   {rows.data(), static_cast<std::size_t>(rows.size())}, flat(out));
  return out;
}

AmbientVector horizontal_project(const AmbientVector& v, const PreShape& z) {
  if (v.rows() != z.matrix().rows()) throw InvalidArgument("horizontal_project: dimension mismatch");
  require_nonsingular(z, "horizontal_project");
  const auto n = static_cast<Eigen::Index>(z.ambient_dimension());
  Matrix span(n, 4);
  const auto set = spanning_set(z);
  for (int i = 0; i < 4; ++i)
    span.col(i) = Eigen::Map<const Vector>(set[i].data(), n);
  Eigen::HouseholderQR<Matrix> qr(span);
  const RowMatrix q = qr.householderQ() * Matrix::Identity(n, 4);
  const RowMatrix qt = q.transpose();

  Eigen::Vector4d coeff;
  kernels::gemv({qt.data(), static_cast<std::size_t>(qt.size())}, flat(v), {coeff.data(), 4});
  AmbientVector along(v.rows(), 3);
  kernels::combine({coeff.data(), 4}, {qt.data(), static_cast<std::size_t>(qt.size())},
                   flat(along));
  return v - along;
}

double orthonormality_residual(const HorizontalBasis& basis) {
  const RowMatrix& rows = basis.packed();
  const Matrix gram = rows * rows.transpose();
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

}  // namespace kendall3d
