// kendall_curvature.hpp — sectional curvature of Kendall's shape space
// Σ^k_3 through Kendall's adapted basis and its closed-form commutators.
//
// At a pre-shape Z = U·Σ·Vᵀ (pseudo-SVD, V in SO(3), λ1 >= λ2 >= |λ3|) the
// horizontal space carries the basis
//   ∂/∂λ2, ∂/∂λ3, ξ12, ξ13, ξ23, ξ1j, ξ2j, ξ3j (4 <= j <= k−1)
// whose vertical Lie brackets are explicit multiples of the rotation frame
// η12, η13, η23 with |η_ij|² = λi² + λj². For orthonormal horizontal u, v
//   K(u, v) = 1 + 3/4 |[u, v]^V|².
// Indices in labels and formulas are 1-based, matching the usual notation.

#pragma once

#include "kendall3d/types.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <Eigen/Cholesky>
#include <vector>

namespace kendall3d {

/// Pseudo-singular value decomposition Z = U·Σ·Vᵀ with Σ = (Λ; 0).
struct SvdData {
  Matrix u;                 ///< (k−1)×(k−1) orthogonal
  Eigen::Vector3d lambdas;  ///< λ1 >= λ2 >= |λ3|; λ3 may be negative
  Matrix3 v;                ///< det = +1
};

/// Pairs of pseudo-singular values closer than this (in squares) are
/// treated as repeated.
inline constexpr double kSpectrumGapTol = 1e-8;
/// Gram matrices of the adapted basis above this condition number are
/// rejected.
inline constexpr double kMaxGramCondition = 1e12;

/// Throws SingularShape when λ2 <= 1e-8.
SvdData kendall_svd(const PreShape& z);

struct BasisLabel {
  enum class Kind { Dl, Xi };
  Kind kind;
  int i;  ///< 1-based
  int j;  ///< 1-based; equals i for Dl

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// "dl2", "dl3", "xi12", ..., "xi3j".
std::string to_string(const BasisLabel& label);
/// Inverse of to_string; throws InvalidArgument on malformed text.
BasisLabel parse_basis_label(std::string_view text);

/// Structure constant [e_a, e_b]^V = coefficient · η_slot for basis
/// positions a < b (slot 0: η12, 1: η13, 2: η23).
struct BracketTerm {
  int a;
  int b;
  int slot;
  double coefficient;
};

class KendallBasis {
 public:
  KendallBasis(PreShape base_point, SvdData svd, RowMatrix packed,
               std::vector<BasisLabel> labels);

  const PreShape& base_point() const noexcept { return base_point_; }
  const SvdData& svd() const noexcept { return svd_; }
  const Eigen::Vector3d& lambdas() const noexcept { return svd_.lambdas; }
  int size() const noexcept { return static_cast<int>(labels_.size()); }
  const std::vector<BasisLabel>& labels() const noexcept { return labels_; }
  /// Position of a label in the basis, or -1 when absent.
  int index_of(const BasisLabel& label) const noexcept;
  AmbientVector vector(int position) const;
  const RowMatrix& packed() const noexcept { return packed_; }
  const Matrix& gram() const noexcept { return gram_; }
  double gram_condition_number() const noexcept { return condition_; }
  const std::vector<BracketTerm>& bracket_terms() const noexcept { return terms_; }

  /// Solves G·c = b with b_i = <e_i, V>.
  Vector solve_gram(const Vector& rhs) const;

 private:
  PreShape base_point_;
  SvdData svd_;
  RowMatrix packed_;
  std::vector<BasisLabel> labels_;
  Matrix gram_;
  Eigen::LLT<Matrix> gram_factor_;
  double condition_;
  std::vector<BracketTerm> terms_;
};

/// Builds ∂/∂λi = Z_ii and ξ_ij from Z_ij = U·W_ijᵀ·Vᵀ (storage transpose of
/// U·W_ij·V in the 3×(k−1) layout), with
///   W_ii = E_ii − (λi/λ1) E_11,                 ∂/∂λi = Z_ii          (i = 2, 3)
///   W_ij = Λ(E_ij + E_ji),                      ξ_ij = (λi²−λj²)/(λi²+λj²) Z_ij  (i < j <= 3)
///   W_ij = E_ij,                                ξ_ij = λi Z_ij        (i <= 3 < j)
/// Throws DegenerateSpectrum for repeated pseudo-singular values and
/// IllConditionedBasis when the Gram condition number exceeds 1e12.
KendallBasis xi_basis(const PreShape& z, const SvdData& svd);
KendallBasis xi_basis(const PreShape& z);

/// Coefficients of a horizontal vector in the adapted basis (Gram solve).
/// Throws InvalidArgument when v is not horizontal within 1e-8.
Vector kendall_coordinates(const AmbientVector& v, const KendallBasis& basis);
AmbientVector from_kendall_coordinates(const Vector& c, const KendallBasis& basis);

struct BracketCoefficients {
  double c12 = 0.0;
  double c13 = 0.0;
  double c23 = 0.0;
};

/// [u, v]^V in the η frame, by bilinearity over the structure constants.
BracketCoefficients vertical_bracket(const KendallBasis& basis, const Vector& cu,
                                     const Vector& cv);

/// |c12 η12 + c13 η13 + c23 η23|² with |η_ij|² = λi² + λj² and distinct η
/// orthogonal.
double bracket_norm_sq(const KendallBasis& basis, const BracketCoefficients& bc);

struct CurvaturePlane {
  Vector u_coefficients;  ///< of the orthonormalized first direction
  Vector v_coefficients;
  BracketCoefficients bracket;
  double bracket_norm_sq = 0.0;
  double curvature = 1.0;
};

/// Orthonormalizes (u, v) by Gram–Schmidt and evaluates the curvature of the
/// plane they span. Throws DegeneratePlane when u, v are (nearly) dependent
/// and InvalidArgument when either is not horizontal.
CurvaturePlane evaluate_plane(const KendallBasis& basis, const AmbientVector& u,
                              const AmbientVector& v);

double sectional_curvature(const KendallBasis& basis, const AmbientVector& u,
                           const AmbientVector& v);
double sectional_curvature(const PreShape& z, const AmbientVector& u, const AmbientVector& v);

/// Plane given by two labels of the adapted basis.
struct LabelPlane {
  BasisLabel u;
  BasisLabel v;
};
/// Plane given by two coefficient vectors in the adapted basis.
struct CoefficientPlane {
  Vector u;
  Vector v;
};
using PlaneSpec = std::variant<LabelPlane, CoefficientPlane>;

struct CurvatureReport {
  int k = 0;
  int dimension = 0;
  double curvature = 1.0;
  double bracket_norm_sq = 0.0;
  BracketCoefficients bracket;
  Eigen::Vector3d lambdas = Eigen::Vector3d::Zero();
  double gram_condition_number = 0.0;
  std::vector<BasisLabel> labels;
  Vector u_coefficients;
  Vector v_coefficients;
};

/// to_preshape → kendall_svd → xi_basis → sectional curvature, with
/// diagnostics. Upstream errors are rethrown with context.
CurvatureReport compute_curvature(const Configuration& config, const PlaneSpec& plane);

}  // namespace kendall3d
