// kendall_curvature.cpp — adapted basis, commutator table and curvature.

#include "kendall3d/kendall_curvature.hpp"

#include "kendall3d/errors.hpp"
#include "kendall3d/kernels.hpp"
#include "kendall3d/shape_core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace kendall3d {

SvdData kendall_svd(const PreShape& z) {
  Eigen::JacobiSVD<Matrix> svd(Matrix(z.matrix()), Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdData out;
  out.u = svd.matrixU();
  out.v = svd.matrixV();
  const Vector& s = svd.singularValues();
  out.lambdas = Eigen::Vector3d::Zero();
  for (Eigen::Index i = 0; i < std::min<Eigen::Index>(3, s.size()); ++i) out.lambdas(i) = s(i);

  // Reflections are not part of the quotient: keep V in SO(3) and move the
  // sign onto the third pseudo-singular value.
  if (out.v.determinant() < 0.0) {
    out.v.col(2) *= -1.0;
    out.lambdas(2) *= -1.0;
  }
  // Canonical U in SO(k-1). With k-1 > 3 the spare columns of U absorb the
  // sign, so λ3 >= 0 there; at k = 4 the sign of λ3 is the orientation of Z.
  const Eigen::Index n = out.u.cols();
  if (n > 3 && out.lambdas(2) < 0.0) {
    out.u.col(2) *= -1.0;
    out.lambdas(2) *= -1.0;
  }
  if (out.u.determinant() < 0.0) {
    if (n > 3) {
      out.u.col(n - 1) *= -1.0;
    } else {
      out.u.col(2) *= -1.0;
      out.lambdas(2) *= -1.0;
    }
  }
  if (!(out.lambdas(1) > kSingularShapeTol)) {
    std::ostringstream os;
    os << "kendall_svd: singular shape (lambda2 = " << out.lambdas(1) << ")";
    throw SingularShape(os.str());
  }
  return out;
}

std::string to_string(const BasisLabel& label) {
  if (label.kind == BasisLabel::Kind::Dl) return "dl" + std::to_string(label.i);
  return "xi" + std::to_string(label.i) + std::to_string(label.j);
}

BasisLabel parse_basis_label(std::string_view text) {
  auto fail = [&]() -> BasisLabel {
    throw InvalidArgument("malformed basis label '" + std::string(text) +
                          "' (expected dl2, dl3 or xi<i><j>)");
  };
  auto parse_int = [&](std::string_view digits) {
    int value = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || p != digits.data() + digits.size() || digits.empty()) fail();
    return value;
  };
  if (text.starts_with("dl")) {
    const int i = parse_int(text.substr(2));
    if (i != 2 && i != 3) fail();
    return {BasisLabel::Kind::Dl, i, i};
  }
  if (text.starts_with("xi") && text.size() >= 4) {
    const int i = parse_int(text.substr(2, 1));
    const int j = parse_int(text.substr(3));
    if (i < 1 || i > 3 || j <= i) fail();
    return {BasisLabel::Kind::Xi, i, j};
  }
  return fail();
}

namespace {

// Slot of η_pq in (η12, η13, η23) and the sign from η_qp = −η_pq.
std::pair<int, double> eta_slot(int p, int q) {
  double sign = 1.0;
  if (p > q) {
    std::swap(p, q);
    sign = -1.0;
  }
  const int slot = (p == 1) ? (q == 2 ? 0 : 1) : 2;
  return {slot, sign};
}

std::vector<BracketTerm> structure_constants(const Eigen::Vector3d& lambdas,
                                             const std::vector<BasisLabel>& labels) {
  auto lam = [&](int i) { return lambdas(i - 1); };
  auto sq = [&](int i) { return lam(i) * lam(i); };
  std::vector<BracketTerm> terms;
  auto add = [&](int a, int b, int p, int q, double c) {
    const auto [slot, sign] = eta_slot(p, q);
    if (c != 0.0) terms.push_back({a, b, slot, sign * c});
  };

  const int n = static_cast<int>(labels.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const BasisLabel& la = labels[a];
      const BasisLabel& lb = labels[b];
      if (la.kind == BasisLabel::Kind::Dl && lb.kind == BasisLabel::Kind::Dl) continue;

      if (la.kind == BasisLabel::Kind::Dl) {
        // [∂/∂λl, ξij]^V, i < j <= 3; zero against the ξij with j > 3.
        const int l = la.i, i = lb.i, j = lb.j;
        if (j > 3) continue;
        double c = 0.0;
        if (i == 1 && l == j) {
          c = (1.0 / lam(1)) * (sq(1) - sq(j)) / (sq(1) + sq(j));
        } else if (i == 1) {
          const double s = sq(1) + sq(j);
          c = (lam(j) * lam(l) / lam(1)) * (sq(1) - sq(j)) / (s * s);
        } else if (l == i) {
          const double s = sq(i) + sq(j);
          c = lam(j) * (sq(j) - sq(i)) / (s * s);
        } else if (l == j) {
          const double s = sq(i) + sq(j);
          c = lam(i) * (sq(i) - sq(j)) / (s * s);
        }
        // The ∂λ–ξ products enter with the opposite orientation to the
        // ξ–ξ products on the η frame as the basis is built here; checked
        // against the finite-difference O'Neill oracle.
        add(a, b, i, j, -2.0 * c);
        continue;
      }

      const bool small_a = la.j <= 3;
      const bool small_b = lb.j <= 3;
      if (small_a && small_b) {
        // Two distinct index pairs from {1,2,3} share exactly one index s.
        // Write e_a = σa ξ_sp and e_b = σb ξ_sq using ξ_ji = −ξ_ij.
        const int s = (la.i == lb.i || la.i == lb.j) ? la.i : la.j;
        const int p = (la.i == s) ? la.j : la.i;
        const int q = (lb.i == s) ? lb.j : lb.i;
        const double sigma = ((la.i == s) ? 1.0 : -1.0) * ((lb.i == s) ? 1.0 : -1.0);
        const double c = -4.0 * (lam(s) * lam(p) / (sq(s) + sq(p))) *
                             (lam(s) * lam(q) / (sq(s) + sq(q))) +
                         2.0 * lam(p) * lam(q) / (sq(p) + sq(q));
        add(a, b, p, q, sigma * c);
      } else if (!small_a && !small_b && la.j == lb.j && la.i != lb.i) {
        // [ξ_{i1 j}, ξ_{i2 j}]^V for j > 3.
        const int i1 = la.i, i2 = lb.i;
        add(a, b, i1, i2, 2.0 * lam(i1) * lam(i2) / (sq(i1) + sq(i2)));
      }
    }
  }
  return terms;
}

}  // namespace

KendallBasis::KendallBasis(PreShape base_point, SvdData svd, RowMatrix packed,
                           std::vector<BasisLabel> labels)
    : base_point_(std::move(base_point)),
      svd_(std::move(svd)),
      packed_(std::move(packed)),
      labels_(std::move(labels)) {
  gram_ = packed_ * packed_.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram_, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  condition_ = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(condition_ <= kMaxGramCondition)) {
    std::ostringstream os;
    os << "adapted basis Gram matrix is ill-conditioned (condition number " << condition_ << ")";
    throw IllConditionedBasis(os.str());
  }
  gram_factor_.compute(gram_);
  terms_ = structure_constants(svd_.lambdas, labels_);
}

int KendallBasis::index_of(const BasisLabel& label) const noexcept {
  for (int i = 0; i < size(); ++i)
    if (labels_[i] == label) return i;
  return -1;
}

AmbientVector KendallBasis::vector(int position) const {
  if (position < 0 || position >= size()) throw InvalidArgument("basis position out of range");
  return Eigen::Map<const ShapeMatrix>(packed_.row(position).data(),
                                       base_point_.matrix().rows(), 3);
}

Vector KendallBasis::solve_gram(const Vector& rhs) const { return gram_factor_.solve(rhs); }

KendallBasis xi_basis(const PreShape& z, const SvdData& svd) {
  const int k = z.k();
  const int cols = k - 1;
  const Eigen::Vector3d& l = svd.lambdas;
  auto sq = [&](int i) { return l(i - 1) * l(i - 1); };

  for (int i = 1; i <= 3; ++i) {
    for (int j = i + 1; j <= 3; ++j) {
      if (!(std::abs(sq(i) - sq(j)) > kSpectrumGapTol)) {
        std::ostringstream os;
        os << "xi_basis: repeated pseudo-singular values lambda" << i << "=" << l(i - 1)
           << ", lambda" << j << "=" << l(j - 1);
        throw DegenerateSpectrum(os.str());
      }
    }
  }
  if (!(l(1) > kSingularShapeTol)) throw SingularShape("xi_basis: lambda2 vanishes");

  const Matrix3 lambda = l.asDiagonal();
  auto elementary = [&](int i, int j) {
    Matrix e = Matrix::Zero(3, cols);
    e(i - 1, j - 1) = 1.0;
    return e;
  };
  // Z_ij in (k−1)×3 storage: (U·W·V)ᵀ with the 3×(k−1) layout of W.
  auto tangent = [&](const Matrix& w) -> ShapeMatrix {
    return svd.u * w.transpose() * svd.v.transpose();
  };

  std::vector<BasisLabel> labels;
  std::vector<ShapeMatrix> vectors;
  for (int i = 2; i <= 3; ++i) {
    labels.push_back({BasisLabel::Kind::Dl, i, i});
    vectors.push_back(tangent(elementary(i, i) - (l(i - 1) / l(0)) * elementary(1, 1)));
  }
  for (int i = 1; i <= 3; ++i) {
    for (int j = i + 1; j <= 3; ++j) {
      const double scale = (sq(i) - sq(j)) / (sq(i) + sq(j));
      labels.push_back({BasisLabel::Kind::Xi, i, j});
      vectors.push_back(scale * tangent(lambda * (elementary(i, j) + elementary(j, i))));
    }
  }
  for (int j = 4; j <= cols; ++j) {
    for (int i = 1; i <= 3; ++i) {
      labels.push_back({BasisLabel::Kind::Xi, i, j});
      vectors.push_back(l(i - 1) * tangent(elementary(i, j)));
    }
  }

  const auto n = static_cast<Eigen::Index>(z.ambient_dimension());
  RowMatrix packed(static_cast<Eigen::Index>(vectors.size()), n);
  for (std::size_t r = 0; r < vectors.size(); ++r)
    packed.row(static_cast<Eigen::Index>(r)) = Eigen::Map<const Eigen::RowVectorXd>(vectors[r].data(), n);
  return KendallBasis(z, svd, std::move(packed), std::move(labels));
}

KendallBasis xi_basis(const PreShape& z) { return xi_basis(z, kendall_svd(z)); }

Vector kendall_coordinates(const AmbientVector& v, const KendallBasis& basis) {
  const PreShape& z = basis.base_point();
  if (v.rows() != z.matrix().rows()) throw InvalidArgument("kendall_coordinates: dimension mismatch");
  const double violation = horizontality_violation(z, v);
  if (violation > 1e-8 * std::max(1.0, v.norm())) {
    std::ostringstream os;
    os << "kendall_coordinates: vector is not horizontal (violation " << violation << ")";
    throw InvalidArgument(os.str());
  }
  Vector rhs(basis.size());
  const RowMatrix& rows = basis.packed();
  kernels::gemv({rows.data(), static_cast<std::size_t>(rows.size())}, flat(v),
                {rhs.data(), static_cast<std::size_t>(rhs.size())});
  return basis.solve_gram(rhs);
}

AmbientVector from_kendall_coordinates(const Vector& c, const KendallBasis& basis) {
  if (c.size() != basis.size())
    throw InvalidArgument("from_kendall_coordinates: expected " + std::to_string(basis.size()) +
                          " coefficients, got " + std::to_string(c.size()));
  AmbientVector out(basis.base_point().matrix().rows(), 3);
  const RowMatrix& rows = basis.packed();
  kernels::combine({c.data(), static_cast<std::size_t>(c.size())},
                   {rows.data(), static_cast<std::size_t>(rows.size())}, flat(out));
  return out;
}

BracketCoefficients vertical_bracket(const KendallBasis& basis, const Vector& cu,
                                     const Vector& cv) {
  if (cu.size() != basis.size() || cv.size() != basis.size())
    throw InvalidArgument("vertical_bracket: coefficient length mismatch");
  std::array<double, 3> eta{0.0, 0.0, 0.0};
  for (const BracketTerm& t : basis.bracket_terms())
    eta[t.slot] += t.coefficient * (cu(t.a) * cv(t.b) - cu(t.b) * cv(t.a));
  return {eta[0], eta[1], eta[2]};
}

double bracket_norm_sq(const KendallBasis& basis, const BracketCoefficients& bc) {
  const Eigen::Vector3d sq = basis.lambdas().cwiseAbs2();
  return bc.c12 * bc.c12 * (sq(0) + sq(1)) + bc.c13 * bc.c13 * (sq(0) + sq(2)) +
         bc.c23 * bc.c23 * (sq(1) + sq(2));
}

CurvaturePlane evaluate_plane(const KendallBasis& basis, const AmbientVector& u,
                              const AmbientVector& v) {
  const double uu = frobenius_dot(u, u);
  const double vv = frobenius_dot(v, v);
  const double uv = frobenius_dot(u, v);
  if (!(uu > 0.0) || !(vv > 0.0) || !((uu * vv - uv * uv) / (uu * vv) > 1e-12))
    throw DegeneratePlane("sectional curvature: u and v do not span a plane");

  const AmbientVector uhat = u / std::sqrt(uu);
  AmbientVector vperp = v - frobenius_dot(v, uhat) * uhat;
  const AmbientVector vhat = vperp / vperp.norm();

  CurvaturePlane plane;
  plane.u_coefficients = kendall_coordinates(uhat, basis);
  plane.v_coefficients = kendall_coordinates(vhat, basis);
  plane.bracket = vertical_bracket(basis, plane.u_coefficients, plane.v_coefficients);
  plane.bracket_norm_sq = bracket_norm_sq(basis, plane.bracket);
  plane.curvature = 1.0 + 0.75 * plane.bracket_norm_sq;
  return plane;
}

double sectional_curvature(const KendallBasis& basis, const AmbientVector& u,
                           const AmbientVector& v) {
  return evaluate_plane(basis, u, v).curvature;
}

double sectional_curvature(const PreShape& z, const AmbientVector& u, const AmbientVector& v) {
  return sectional_curvature(xi_basis(z), u, v);
}

CurvatureReport compute_curvature(const Configuration& config, const PlaneSpec& plane) {
  CurvatureReport report;
  report.k = config.k();
  report.dimension = shape_space_dimension(config.k());

  std::optional<KendallBasis> basis;
  try {
    const PreShape z = to_preshape(config);
    basis.emplace(xi_basis(z, kendall_svd(z)));
  } catch (const Error& e) {
    rethrow_with_context(e, "compute_curvature: building the adapted basis");
  }

  AmbientVector u, v;
  if (const auto* labels = std::get_if<LabelPlane>(&plane)) {
    const int a = basis->index_of(labels->u);
    const int b = basis->index_of(labels->v);
    if (a < 0 || b < 0)
      throw InvalidArgument("compute_curvature: label " + to_string(a < 0 ? labels->u : labels->v) +
                            " is not in the basis for k = " + std::to_string(config.k()));
    u = basis->vector(a);
    v = basis->vector(b);
  } else {
    const auto& coeffs = std::get<CoefficientPlane>(plane);
    u = from_kendall_coordinates(coeffs.u, *basis);
    v = from_kendall_coordinates(coeffs.v, *basis);
  }

  CurvaturePlane result;
  try {
    result = evaluate_plane(*basis, u, v);
  } catch (const Error& e) {
    rethrow_with_context(e, "compute_curvature: evaluating the plane");
  }

  report.curvature = result.curvature;
  report.bracket_norm_sq = result.bracket_norm_sq;
  report.bracket = result.bracket;
  report.lambdas = basis->lambdas();
  report.gram_condition_number = basis->gram_condition_number();
  report.labels = basis->labels();
  report.u_coefficients = result.u_coefficients;
  report.v_coefficients = result.v_coefficients;
  return report;
}

}  // namespace kendall3d
