#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ordstat/rng.hpp"

namespace ordstat {

enum class DistKind { half_normal, exponential, uniform01, gen_exponential };

/// Law of a nonnegative scalar |ξ| together with the constants of its
/// small-ball condition P(|ξ| ≤ t) ≤ αt, its tail condition
/// P(|ξ| > t) ≤ exp(−βt), and optionally the cdf-decay pair (δ, A).
///
/// Parameter meaning per kind: half_normal → σ, exponential → rate,
/// uniform01 → unused, gen_exponential → q (density c_q exp(−s^q) on s ≥ 0).
class DistributionSpec {
 public:
  static DistributionSpec half_normal(double sigma = 1.0);
  static DistributionSpec exponential(double rate = 1.0);
  static DistributionSpec uniform01();
  static DistributionSpec gen_exponential(double q);

  /// Same law with explicit (α, β); throws DomainError if α < β.
  DistributionSpec with_constants(double alpha, double beta) const;
  /// Same law with a cdf-decay pair attached; δ ∈ (0,1), A > 1.
  DistributionSpec with_decay(double delta, double decay_A) const;

  DistKind kind() const { return kind_; }
  double parameter() const { return parameter_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  std::optional<double> delta() const { return delta_; }
  std::optional<double> decay_A() const { return decay_A_; }

  /// Name as accepted by parse_distribution.
  std::string name() const;

 private:
  DistributionSpec(DistKind kind, double parameter, double alpha, double beta);

  DistKind kind_;
  double parameter_;
  double alpha_;
  double beta_;
  std::optional<double> delta_;
  std::optional<double> decay_A_;
};

/// Builds a spec with the canonical (α, β) of the kind attached.
DistributionSpec make_distribution(DistKind kind, double parameter = 1.0);

/// Accepts "half-normal", "half-normal:σ", "exponential", "exponential:rate",
/// "uniform" and "gen-exp:q".
DistributionSpec parse_distribution(std::string_view name);

/// c_q = 1/Γ(1 + 1/q).
double gen_exponential_normalizer(double q);

double cdf(const DistributionSpec& dist, double t);
/// 1 − cdf(t), evaluated without cancellation.
double survival(const DistributionSpec& dist, double t);
/// Left-continuous inverse inf{t : cdf(t) ≥ r} for r ∈ [0, 1).
double quantile(const DistributionSpec& dist, double r);
/// E|ξ|².
double second_moment(const DistributionSpec& dist);
double sample(const DistributionSpec& dist, RandomStream& stream);

struct ConditionReport {
  bool passed = false;
  double worst_t = 0.0;
  double worst_margin = 0.0;
  std::size_t grid_size = 0;
};

/// `points` log-spaced values from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t points);
/// 10⁴ points on [1e-6, 50].
std::vector<double> default_condition_grid();

/// Margin αt − cdf(t).
ConditionReport check_alpha_condition(const DistributionSpec& dist, double alpha,
                                      std::span<const double> grid);
/// Margin exp(−βt) − (1 − cdf(t)).
ConditionReport check_beta_condition(const DistributionSpec& dist, double beta,
                                     std::span<const double> grid);
/// Margin cdf(t) − 2 cdf(t/A) over grid points with cdf(t) ≤ δ.
ConditionReport check_cdf_decay(const DistributionSpec& dist, double delta, double decay_A,
                                std::span<const double> grid);

}  // namespace ordstat
