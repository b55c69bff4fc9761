#pragma once

#include <Eigen/Dense>

#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcl {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Invalid space description or operation precondition failure.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical engine failed to reach its certificate.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::string diagnostics)
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}
  const std::string& diagnostics() const { return diagnostics_; }

 private:
  std::string diagnostics_;
};

enum class SpaceKind {
  Lp,         // (R^n, ||.||_p)
  WeightedLp, // ||x|| = ||w .* x||_p, w > 0
  Polyhedral, // ||x|| = max_i |<f_i, x>|
  Calderon,   // product X_1^{a_1}...X_k^{a_k} of coordinate spaces
  DirectSum,  // (+)_p of summands
  VectorSum,  // lambda(X): m blocks of dim k, outer norm lambda on block norms
  TwistedKp,  // ||(y,x)|| = ||y - eps*Omega(x)||_2 + ||x||_2 on R^{2n}
  Pullback,   // {(x,z') : tail(x) = eps*z'} realized on base coordinates
  Subspace,   // ambient norm restricted to span of a basis, in basis coordinates
  DualOf,     // norm(f) = max{<f,x> : ||x||_child <= 1}
};

/// Declarative constructor tree for a finite-dimensional normed space.
struct SpaceSpec {
  SpaceKind kind = SpaceKind::Lp;
  int n = 0;              // coordinate count (lp family); half-dimension for twisted_kp
  double p = 2.0;         // exponent for lp/weighted_lp; outer exponent for direct_sum
  Vector weights;         // weighted_lp
  Matrix functionals;     // polyhedral, one functional per row
  Vector factor_weights;  // calderon, positive, sums to 1
  double eps = 0.0;       // twisted_kp / pullback
  Matrix basis;           // subspace, one ambient vector per column
  std::vector<SpaceSpec> children;  // calderon factors | direct_sum summands |
                                    // {lambda, inner} | {base} | {ambient} | {primal}

  static SpaceSpec lp(int n, double p);
  static SpaceSpec weighted_lp(int n, double p, Vector w);
  static SpaceSpec polyhedral(Matrix functionals);
  static SpaceSpec calderon(std::vector<SpaceSpec> factors, Vector weights);
  static SpaceSpec direct_sum(double outer_p, std::vector<SpaceSpec> summands);
  static SpaceSpec vector_sum(SpaceSpec lambda, SpaceSpec inner);
  static SpaceSpec twisted_kp(int n, double eps);
  static SpaceSpec pullback(SpaceSpec base, double eps);
  static SpaceSpec subspace(SpaceSpec ambient, Matrix basis);
  static SpaceSpec dual_of(SpaceSpec primal);

  int dim() const;
  std::string kind_name() const;
  bool operator==(const SpaceSpec& other) const;
};

/// Throws SpecError if the tree violates a structural invariant.
void validate(const SpaceSpec& spec);

/// Immutable finite-dimensional normed (or quasinormed) space with its
/// evaluation engine. Cheap to copy, safe to share across threads.
class NormedSpace {
 public:
  NormedSpace() = default;

  int dim() const;
  const SpaceSpec& spec() const;

  /// Measured constant C with ||u+v|| <= C(||u||+||v||) on sampled pairs.
  /// Always 1 for genuine norms; > 1 only when a twisted_kp node is present.
  double quasinorm_constant() const;
  bool quasinormed() const;

  /// Koethe (1-unconditional coordinate) structure: lp, weighted_lp,
  /// calderon / vector_sum built from such.
  bool coordinate() const;

  /// Inner-solver tolerance recorded for calderon norms (0 when closed form).
  double calderon_tolerance() const;

  /// True when norm values come from a heuristic ascent rather than a closed
  /// form or an LP (set by dual_space on spaces it cannot dualize exactly).
  bool dual_heuristic() const;

  double norm(const Eigen::Ref<const Vector>& x) const;

  /// A subgradient of the norm at x (gradient where the norm is smooth; the
  /// first maximizing functional at kinks).
  Vector norm_subgradient(const Eigen::Ref<const Vector>& x) const;

  bool valid() const { return impl_ != nullptr; }

  struct Impl;
  const Impl& impl() const { return *impl_; }

 private:
  friend NormedSpace build_space(const SpaceSpec& spec);
  friend NormedSpace dual_space(const NormedSpace& space);
  friend NormedSpace koethe_dual(const NormedSpace& space);
  explicit NormedSpace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

NormedSpace build_space(const SpaceSpec& spec);

/// Dual space X*. Closed form for the lp family, vertex/LP-exact for
/// polyhedral, factorwise for sums and calderon products, heuristic ascent
/// otherwise (flagged on the result). Rejects quasinormed spaces.
NormedSpace dual_space(const NormedSpace& space);

/// Lattice dual of a coordinate space; coincides with dual_space in finite
/// dimension. Rejects non-coordinate spaces.
NormedSpace koethe_dual(const NormedSpace& space);

/// Omega(x)_i = x_i * log(|x_i| / ||x||_2), with 0*log 0 = 0. Rejects x = 0.
Vector kalton_peck_omega(const Eigen::Ref<const Vector>& x);

/// Subspace of an ambient normed space. The stored basis is orthonormalized
/// in coordinates; points are addressed either by ambient coordinates or by
/// basis coefficients.
class Subspace {
 public:
  Subspace(NormedSpace ambient, const Matrix& raw_basis);

  const NormedSpace& ambient() const { return ambient_; }
  const Matrix& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.cols()); }

  Vector embed(const Eigen::Ref<const Vector>& coeffs) const { return basis_ * coeffs; }
  Vector coords(const Eigen::Ref<const Vector>& x) const { return basis_.transpose() * x; }
  Vector project(const Eigen::Ref<const Vector>& x) const { return basis_ * (basis_.transpose() * x); }
  bool contains(const Eigen::Ref<const Vector>& x, double tol = 1e-9) const;

  /// The induced normed space on basis coefficients.
  NormedSpace as_space() const;

 private:
  NormedSpace ambient_;
  Matrix basis_;
};

namespace detail {
double lp_norm(const Eigen::Ref<const Vector>& x, double p);
Vector lp_norm_subgradient(const Eigen::Ref<const Vector>& x, double p);
double conjugate_exponent(double p);
/// Omega with the zero-vector convention Omega(0) = 0 (used by norms).
Vector omega_or_zero(const Eigen::Ref<const Vector>& x);
/// Calderon norm by convex minimization in log coordinates. Returns the
/// factorization infimum for |x| <= prod |y_j|^{a_j}; factors must be
/// lattice (coordinate) norms. achieved_tol receives an estimate of the
/// remaining relative error.
double calderon_norm_general(const std::vector<NormedSpace>& factors,
                             const Eigen::Ref<const Vector>& factor_weights,
                             const Eigen::Ref<const Vector>& x,
                             double rel_tol, double* achieved_tol = nullptr);
}  // namespace detail

}  // namespace bcl
