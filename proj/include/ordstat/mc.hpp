#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "ordstat/bounds.hpp"
#include "ordstat/dist.hpp"
#include "ordstat/orthogonal.hpp"
#include "ordstat/ostat.hpp"
#include "ordstat/rng.hpp"

namespace ordstat {

/// Coordinates x_i ξ_i with independent ξ_i ~ dists[i].
struct IndependentScaled {
  std::vector<DistributionSpec> dists;
  ScaledSequence x;
};

/// Independent centered Gaussians with the given variances.
struct GaussianDiagonal {
  std::vector<double> variances;
};

/// T (√v ∘ g) for standard Gaussian g.
struct RotatedGaussian {
  std::vector<double> variances;
  OrthogonalMatrix transform;
};

/// Coordinates x_i ξ driven by a single scalar draw ξ.
struct Comonotone {
  DistributionSpec dist;
  ScaledSequence x;
};

/// Recipe for sampling an n-dimensional random vector.
class VectorModel {
 public:
  using Kind = std::variant<IndependentScaled, GaussianDiagonal, RotatedGaussian, Comonotone>;

  static VectorModel independent(std::vector<DistributionSpec> dists, ScaledSequence x);
  static VectorModel independent(const DistributionSpec& dist, ScaledSequence x);
  static VectorModel gaussian_diagonal(std::vector<double> variances);
  static VectorModel rotated_gaussian(std::vector<double> variances, OrthogonalMatrix transform);
  static VectorModel comonotone(const DistributionSpec& dist, ScaledSequence x);

  std::size_t dimension() const { return dimension_; }
  const Kind& kind() const { return kind_; }

  /// E X_i² per coordinate.
  std::vector<double> coordinate_second_moments() const;

  /// Writes one draw into `out` (size dimension()).
  void draw(RandomStream& stream, std::span<double> out) const;

 private:
  VectorModel(Kind kind, std::size_t dimension);

  Kind kind_;
  std::size_t dimension_;
  std::vector<double> sqrt_variances_;
};

SampleVector sample_vector(const VectorModel& model, RandomStream& stream);

enum class Statistic { kth_min, sum_k_smallest };

struct StatisticSpec {
  Statistic kind = Statistic::sum_k_smallest;
  std::size_t k = 1;
  double p = 1.0;  ///< applied as |v_i|^p
};

/// Work layout. Results depend on (seed, chunks) only; `threads` = 0 picks
/// default_thread_count().
struct McOptions {
  std::size_t chunks = 16;
  unsigned threads = 0;
};

/// ORDSTAT_THREADS if set, else hardware concurrency.
unsigned default_thread_count();
/// Overrides default_thread_count() for the process (0 restores the default).
void set_default_thread_count(unsigned threads);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  double median = 0.0;
  std::pair<double, double> median_ci{0.0, 0.0};  ///< order-statistic 99% interval
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Per-draw statistic values in deterministic order: chunk c covers draws
/// [c·N/C, (c+1)·N/C) using random stream c.
std::vector<double> simulate_statistic(const VectorModel& model, const StatisticSpec& stat,
                                       std::size_t samples, std::uint64_t seed,
                                       const McOptions& options = {});

/// Mean, standard error, median and its CI of a sample of statistic values.
McEstimate summarize(std::span<const double> values, std::uint64_t seed);

McEstimate estimate_statistic(const VectorModel& model, const StatisticSpec& stat,
                              std::size_t samples, std::uint64_t seed,
                              const McOptions& options = {});

/// E Σ_{j ≤ k} j-min |X_i|^p; samples ≥ 10³.
McEstimate estimate_sum_kmin(const VectorModel& model, std::size_t k, double p,
                             std::size_t samples, std::uint64_t seed,
                             const McOptions& options = {});

struct CdfPoint {
  double t = 0.0;
  double probability = 0.0;
  double std_error = 0.0;
};

/// Empirical P{statistic ≤ t} on `grid` with binomial standard errors.
std::vector<CdfPoint> empirical_cdf(const VectorModel& model, const StatisticSpec& stat,
                                    std::span<const double> grid, std::size_t samples,
                                    std::uint64_t seed, const McOptions& options = {});
std::vector<CdfPoint> empirical_cdf(std::span<const double> values, std::span<const double> grid);

struct SandwichVerdict {
  bool passed = false;
  McEstimate estimate;
  double lower = 0.0;
  double upper = 0.0;
};

/// Pass iff lower ≤ mean + 3SE and mean − 3SE ≤ upper, each bound widened
/// by a relative 1e-9.
SandwichVerdict sandwich_verdict(const McEstimate& estimate, const BoundReport& report);

SandwichVerdict check_sandwich(const VectorModel& model, const BoundReport& report, std::size_t k,
                               double p, std::size_t samples, std::uint64_t seed,
                               const McOptions& options = {});

}  // namespace ordstat
