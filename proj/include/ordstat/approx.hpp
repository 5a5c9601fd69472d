#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ordstat/dist.hpp"
#include "ordstat/mc.hpp"
#include "ordstat/orthogonal.hpp"

namespace ordstat {

/// Symmetric positive semidefinite n×n covariance.
class CovarianceModel {
 public:
  explicit CovarianceModel(Eigen::MatrixXd matrix);

  /// T diag(a) Tᵀ.
  static CovarianceModel from_spectrum(const OrthogonalMatrix& t, std::span<const double> a);

  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

 private:
  Eigen::MatrixXd matrix_;
};

/// Karhunen–Loève basis: orthonormal eigenvectors (as columns) ordered by
/// non-increasing eigenvalue.
struct KlBasis {
  Eigen::MatrixXd vectors;
  std::vector<double> eigenvalues;
};

/// Eigenvalue ties (within 1e-12·trace) are ordered by the position of each
/// vector's largest-magnitude entry, and that entry is made positive, so a
/// diagonal covariance yields a permutation of the standard basis.
KlBasis kl_basis(const CovarianceModel& cov);

/// diag(Uᵀ C U): coordinate variances after expressing X in the columns of U.
std::vector<double> variances_in_basis(const CovarianceModel& cov, const Eigen::MatrixXd& basis);

/// E₀(X,m): sum of the n − m smallest coordinate variances, 0 ≤ m < n.
double linear_error(std::span<const double> variances, std::size_t m);

/// E(X,m) = E Σ_{j ≤ n−m} j-min X_i², 0 ≤ m < n.
McEstimate nonlinear_error(const VectorModel& model, std::size_t m, std::size_t samples,
                           std::uint64_t seed, const McOptions& options = {});

/// Largest u with u·E X² ≤ ∫₀^∞ max(P{X² ≥ τ} − 1/2, 0) dτ for X = scale·ξ,
/// ξ ~ dist. Scale-invariant; a zero scale gives +∞.
double wrd_constant(const DistributionSpec& dist, double scale = 1.0);

/// Minimum of wrd_constant over the coordinates of a model.
double model_wrd_constant(const VectorModel& model);

struct LastpropVerdict {
  bool passed = false;
  double u = 0.0;
  double linear_error_2m = 0.0;
  McEstimate nonlinear;
};

/// Checks u·E₀(X,2m) ≤ Ê(X,m) + 3SE for m < n/2. When `u` is not given it is
/// computed with model_wrd_constant.
LastpropVerdict check_lastprop(const VectorModel& model, std::size_t m, std::size_t samples,
                               std::uint64_t seed, std::optional<double> u = std::nullopt,
                               const McOptions& options = {});

/// Independent Gaussian vector of dimension n with m + 1 unit variances, rest zero.
VectorModel sparse_unit_model(std::size_t n, std::size_t m);

struct ErrorCurvePoint {
  std::size_t m = 0;
  double linear = 0.0;
  McEstimate nonlinear;
};

std::vector<ErrorCurvePoint> error_curve(const VectorModel& model, std::span<const std::size_t> ms,
                                         std::size_t samples, std::uint64_t seed,
                                         const McOptions& options = {});

}  // namespace ordstat
