#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ordstat/dist.hpp"
#include "ordstat/ostat.hpp"

namespace ordstat {

/// Sorted positive weights x_1 ≤ ... ≤ x_n with cached tail sums
/// b_j = Σ_{i ≥ j} 1/x_i (compensated summation).
class ScaledSequence {
 public:
  explicit ScaledSequence(std::vector<double> x);

  std::size_t size() const { return x_.size(); }
  std::span<const double> x() const { return x_; }
  std::span<const double> tail_sums() const { return tail_; }
  /// x_j, 1-based.
  double weight(std::size_t j) const { return x_.at(j - 1); }
  /// b_j, 1-based.
  double b(std::size_t j) const { return tail_.at(j - 1); }

  /// max_{1 ≤ j ≤ k} (k − j + 1)/b_j.
  double max_ratio(std::size_t k) const;

  ScaledSequence scaled(double c) const;

 private:
  std::vector<double> x_;
  std::vector<double> tail_;
};

inline ScaledSequence tail_sums(std::vector<double> x) { return ScaledSequence(std::move(x)); }

/// A named inequality with its deterministic lower and upper values. Either
/// side may be infinite when the inequality is one-sided. Non-assertable
/// reports carry a constant that is only known up to a universal factor and
/// never take part in pass/fail verdicts.
struct BoundReport {
  std::string name;
  std::size_t k = 0;
  double p = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::map<std::string, double> params;
  std::string citation;
  bool assertable = true;
};

/// Greedy interval partition of a non-increasing positive sequence into k
/// blocks: the pivot m is the smallest index with a_m (k + 1 − m) ≤ b_m,
/// blocks before it are singletons, and blocks from m on are cut where the
/// running tail sum first exceeds ℓ·b_m/(k + 1 − m).
IntervalPartition greedy_partition(std::span<const double> a, std::size_t k);

/// min(1, α b_1 t): bound on P{min_i |x_i ξ_i| ≤ t} under the α-condition.
double min_probability_lower(const ScaledSequence& x, double alpha, double t);
/// exp(−β b_1 t): bound on P{min_i |x_i ξ_i| > t} for independent ξ_i under the β-condition.
double min_tail_upper(const ScaledSequence& x, double beta, double t);

struct MinExpectationBounds {
  BoundReport expectation;  ///< 1/((1+p) α^p b^p) ≤ E min^p ≤ Γ(1+p)/(β^p b^p)
  BoundReport median;       ///< 1/(2^p α^p b^p) ≤ Med min^p ≤ (ln 2)^p/(β^p b^p)
};
MinExpectationBounds min_expectation_bounds(const ScaledSequence& x, double alpha, double beta,
                                            double p);

/// Γ(2+p) (α/β)^p.
double malzeit_ratio(double alpha, double beta, double p);

/// (1/√(2πk)) (at)^k/(1 − at) with a = α e b_1/k; 1 once t ≥ 1/a.
double kmin_tail_upper(const ScaledSequence& x, double alpha, std::size_t k, double t);

/// Lower bound on E k-min|x_i ξ_i|^p for independent ξ_i under the α-condition.
/// For k ≥ 2 this is (max_j (k+1−j)/b_j / (2^{1/p}·4α))^p; k = 1 uses the
/// sharper 1/((1+p) α^p b_1^p).
double kmin_expectation_lower(const ScaledSequence& x, double alpha, std::size_t k, double p);

/// (1/(2α)) max_{j ≤ k} (k − j + 1)/b_j.
double quantile_lower_bound(const ScaledSequence& x, double alpha, std::size_t k);

/// Left r-quantile of F(t) = (1/n) Σ cdf_i(t/x_i), by bisection to 1e-10·max(x).
double averaged_cdf_quantile(std::span<const DistributionSpec> dists, const ScaledSequence& x,
                             double r);

/// t_0 = min_i sup{t > 0 : F_i(t) ≤ δ}.
double truncation_threshold(std::span<const DistributionSpec> dists, double delta);

/// (δ/(2Aα)) max_{j ≤ k} (k − j + 1)/b_j: median lower bound valid without independence.
double kmin_median_lower_dependent(const ScaledSequence& x, double alpha, double delta,
                                   double decay_A, std::size_t k);

/// S = Σ_{j ≤ k} (k − j + 1)^p / b_j^p.
double weighted_tail_sum(const ScaledSequence& x, double p, std::size_t k);

/// W(β,p) = β^{−p} Γ(1+p)(1 + 2·4^p).
double w_constant(double beta, double p);

/// β^{−p}Γ(1+p)[Σ_{j<m} x_j^p + 2^p (k−m+1)^{1+p}/b_m^p], m from greedy_partition(1/x, k).
double refined_sum_kmin_upper(const ScaledSequence& x, double beta, double p, std::size_t k);

/// Sandwich (1/2)(16α)^{−p} S ≤ E Σ_{j≤k} j-min|x_i ξ_i|^p ≤ W(β,p) S. The refined
/// upper value and its pivot are recorded in params.
BoundReport sum_kmin_bounds(const ScaledSequence& x, double alpha, double beta, double p,
                            std::size_t k);

struct LowEstReport {
  double upper_expr = 0.0;  ///< 4^p Σ_{ℓ≤k} max_{j≤ℓ} (ℓ−j+1)^p/b_j^p
  double middle = 0.0;      ///< Σ_{j≤k} (k−j+1)^p/b_j^p
  double lower_expr = 0.0;  ///< 2^{−1−p} max_{j≤k} (k−j+1)^{1+p}/b_j^p
  bool left_holds = false;
  bool right_holds = false;
  bool holds() const { return left_holds && right_holds; }
};
LowEstReport low_est_check(const ScaledSequence& x, double p, std::size_t k,
                           double rel_tol = 1e-12);

/// 6 (32Aα/(δβ))^p Γ(1+p).
double comparison_constant(double alpha, double beta, double delta, double decay_A, double p);

/// Report-only: upper bound on E k-min|x_i ξ_i|^p with the universal constant set to 1.
BoundReport kmin_upper_report_only(const ScaledSequence& x, double beta, double p, std::size_t k);
/// Report-only: ratio constant 2^{1/p} A α max{p, ln(k+1)}/(βδ) with the universal constant set to 1.
BoundReport dependent_ratio_report_only(double alpha, double beta, double delta, double decay_A,
                                        double p, std::size_t k);

/// e_0..e_n of nonnegative a by the standard O(n²) recurrence; n ≤ 25.
std::vector<double> elementary_symmetric(std::span<const double> a);

struct MaclaurinReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool applicable = true;
  bool holds = false;
};
/// e_ℓ(a) ≤ C(n,ℓ)·(mean a)^ℓ.
MaclaurinReport maclaurin_check(std::span<const double> a, std::size_t ell);
/// Σ_{ℓ ≥ k} e_ℓ(a) < (1/√(2πk)) A^k/(1 − A), A = (e/k) Σ a_i; not applicable unless 0 < A < 1.
MaclaurinReport agmean_bound(std::span<const double> a, std::size_t k);

}  // namespace ordstat
