#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ordstat/mc.hpp"
#include "ordstat/orthogonal.hpp"

namespace ordstat {

/// The doubly stochastic matrix (t_ij²).
Eigen::MatrixXd squared_entries(const OrthogonalMatrix& t);

/// Coordinate variances b_i = Σ_j t_ij² a_j of T X for independent X with
/// variances a, sorted non-increasing.
std::vector<double> propagate_variances(const OrthogonalMatrix& t, std::span<const double> a);

/// Source and propagated variances, both sorted non-increasing.
struct VariancePair {
  std::vector<double> a;
  std::vector<double> b;
};
VariancePair make_variance_pair(const OrthogonalMatrix& t, std::span<const double> a);

/// Values sorted non-increasing.
std::vector<double> sorted_descending(std::span<const double> v);

struct MajorizationReport {
  bool passed = false;
  /// prefix_a(ℓ) − prefix_b(ℓ) for ℓ = 1..n
  std::vector<double> margins;
  double worst_margin = 0.0;
  std::size_t worst_prefix = 0;  ///< 1-based ℓ of the worst margin
  double total_gap = 0.0;        ///< Σa − Σb
};

/// a majorizes b: every prefix sum of a is ≥ that of b and the totals agree.
/// Both inputs must be sorted non-increasing; the tolerance is relative to
/// max(Σa, Σb) (absolute when both totals vanish).
MajorizationReport majorization_check(std::span<const double> a_sorted,
                                      std::span<const double> b_sorted, double tol);

struct MzResult {
  McEstimate lhs;  ///< E Σ_{j≤k} j-min X_i², independent coordinates
  McEstimate rhs;  ///< E Σ_{j≤k} j-min Y_i², Y = T X
  double ratio = 0.0;
  double ratio_std_error = 0.0;
  bool reliable = false;  ///< rhs.mean − 3·rhs.std_error > 0
};

/// lhs/rhs with first-order (delta-method) uncertainty. lhs uses streams
/// under `seed`, rhs under `seed + 1`.
MzResult mz_ratio(std::span<const double> variances, const OrthogonalMatrix& t, std::size_t k,
                  std::size_t samples, std::uint64_t seed, const McOptions& options = {});

}  // namespace ordstat
