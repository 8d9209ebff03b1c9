// numeric_oracle.cpp — O'Neill tensor by central differences.

#include "kendall3d/numeric_oracle.hpp"

#include "kendall3d/errors.hpp"
#include "kendall3d/shape_core.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <sstream>
#include <vector>

namespace kendall3d {
namespace {

using Flat = Eigen::VectorXd;

Flat flatten(const ShapeMatrix& m) { return Eigen::Map<const Flat>(m.data(), m.size()); }

ShapeMatrix unflatten(const Flat& f, Eigen::Index rows) {
  return Eigen::Map<const ShapeMatrix>(f.data(), rows, 3);
}

std::vector<Flat> rotation_directions(const ShapeMatrix& y) {
  const auto& gens = lie_generators();
  return {flatten(y * gens[0]), flatten(y * gens[1]), flatten(y * gens[2])};
}

// Modified Gram–Schmidt with one re-orthogonalization pass.
std::vector<Flat> orthonormalize(std::vector<Flat> vs) {
  std::vector<Flat> out;
  for (Flat v : vs) {
    for (int pass = 0; pass < 2; ++pass)
      for (const Flat& q : out) v -= q.dot(v) * q;
    const double n = v.norm();
    if (!(n > 1e-12)) throw SingularShape("oracle: rotation orbit is not three-dimensional");
    out.push_back(v / n);
  }
  return out;
}

Flat remove_span(Flat v, const std::vector<Flat>& basis) {
  for (const Flat& q : basis) v -= q.dot(v) * q;
  return v;
}

// Horizontal extension of v: its projection onto the horizontal space at y.
Flat horizontal_field(const ShapeMatrix& y, const Flat& v) {
  std::vector<Flat> span{flatten(y)};
  for (Flat& w : rotation_directions(y)) span.push_back(std::move(w));
  return remove_span(v, orthonormalize(std::move(span)));
}

Flat geodesic_point(const Flat& z, const Flat& u, double t) {
  const double n = u.norm() * std::abs(t);
  if (n == 0.0) return z;
  const double s = t < 0 ? -1.0 : 1.0;
  return std::cos(n) * z + std::sin(n) * s * u / u.norm();
}

}  // namespace

void validate(const OracleConfig& cfg) {
  if (!(cfg.step > 1e-8 && cfg.step < 1e-2)) {
    std::ostringstream os;
    os << "oracle step " << cfg.step << " outside (1e-8, 1e-2)";
    throw InvalidArgument(os.str());
  }
  if (cfg.order != 2 && cfg.order != 4)
    throw InvalidArgument("oracle difference order must be 2 or 4");
}

AmbientVector oneill_vertical_bracket(const PreShape& z, const AmbientVector& u,
                                      const AmbientVector& v, const OracleConfig& cfg) {
  validate(cfg);
  const auto rows = z.matrix().rows();
  if (u.rows() != rows || v.rows() != rows) throw InvalidArgument("oracle: dimension mismatch");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(z.matrix()));
  if (!(svd.singularValues()(1) > kSingularShapeTol))
    throw SingularShape("oracle: singular shape (rank < 2)");

  const Flat zf = flatten(z.matrix());
  const Flat uf = flatten(u);
  const Flat vf = flatten(v);
  auto field = [&](double t) {
    return horizontal_field(unflatten(geodesic_point(zf, uf, t), rows), vf);
  };

  const double h = cfg.step;
  Flat derivative;
  if (cfg.order == 2) {
    derivative = (field(h) - field(-h)) / (2.0 * h);
  } else {
    derivative = (-field(2 * h) + 8.0 * field(h) - 8.0 * field(-h) + field(-2 * h)) / (12.0 * h);
  }

  const std::vector<Flat> vertical = orthonormalize(rotation_directions(z.matrix()));
  Flat projected = Flat::Zero(zf.size());
  for (const Flat& q : vertical) projected += q.dot(derivative) * q;
  return unflatten(2.0 * projected, rows);
}

double oneill_bracket_norm_sq(const PreShape& z, const AmbientVector& u, const AmbientVector& v,
                              const OracleConfig& cfg) {
  const auto rows = z.matrix().rows();
  if (u.rows() != rows || v.rows() != rows) throw InvalidArgument("oracle: dimension mismatch");
  const double tol = 1e-8;
  const double violation = std::max(horizontality_violation(z, u), horizontality_violation(z, v));
  if (violation > tol) {
    std::ostringstream os;
    os << "oracle: inputs must be horizontal (violation " << violation << ")";
    throw InvalidArgument(os.str());
  }
  const double ortho = std::max({std::abs(u.squaredNorm() - 1.0), std::abs(v.squaredNorm() - 1.0),
                                 std::abs((u.array() * v.array()).sum())});
  if (ortho > tol) {
    std::ostringstream os;
    os << "oracle: inputs must be orthonormal (residual " << ortho << ")";
    throw InvalidArgument(os.str());
  }
  return oneill_vertical_bracket(z, u, v, cfg).squaredNorm();
}

}  // namespace kendall3d
