#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ordstat {

/// One realization (v_1, ..., v_n); entries must be finite.
using SampleVector = std::vector<double>;

/// Partition of {1..n} into consecutive blocks A_j = (n_{j-1}, n_j].
///
/// Blocks before the pivot are singletons A_j = {j}. Indices in the public
/// interface are 1-based to match block numbering; block(j) returns the
/// corresponding 0-based half-open range.
class IntervalPartition {
 public:
  IntervalPartition(std::vector<std::size_t> boundaries, std::size_t pivot_m);

  std::size_t block_count() const { return boundaries_.size() - 1; }
  std::size_t size() const { return boundaries_.back(); }
  std::size_t pivot_m() const { return pivot_m_; }
  const std::vector<std::size_t>& boundaries() const { return boundaries_; }

  struct Range {
    std::size_t begin;
    std::size_t end;
  };
  /// 0-based half-open index range of block j, 1 ≤ j ≤ block_count().
  Range block(std::size_t j) const;

 private:
  std::vector<std::size_t> boundaries_;
  std::size_t pivot_m_;
};

/// |v|^p; p ∈ {1,2,3,4} exact, otherwise exp(p ln|v|) with |v| = 0 ↦ 0.
double pow_abs(double v, double p);

/// j-th smallest entry of v (1-based), by expected-linear selection.
double jth_min(std::span<const double> v, std::size_t j);

/// Σ_{j ≤ k} j-min(|v_i|^p). The result is bit-identical to sorting |v_i|^p
/// and summing the first k terms in ascending order.
double sum_k_smallest(std::span<const double> v, std::size_t k, double p);

/// In-place variant over already-transformed values; reorders `values`.
double sum_k_smallest_inplace(std::span<double> values, std::size_t k);

/// Σ_j min_{i ∈ A_j} |v_i|^p; never smaller than sum_k_smallest with k blocks.
double sum_partition_min(std::span<const double> v, const IntervalPartition& part, double p);

}  // namespace ordstat
