#include "ordstat/ostat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ordstat/errors.hpp"

namespace ordstat {

IntervalPartition::IntervalPartition(std::vector<std::size_t> boundaries, std::size_t pivot_m)
    : boundaries_(std::move(boundaries)), pivot_m_(pivot_m) {
  if (boundaries_.size() < 2 || boundaries_.front() != 0)
    throw UsageError("partition boundaries must start at 0 and have at least one block");
  for (std::size_t j = 1; j < boundaries_.size(); ++j)
    if (boundaries_[j] <= boundaries_[j - 1])
      throw UsageError("partition boundaries must be strictly increasing");
  const std::size_t k = block_count();
  if (pivot_m_ < 1 || pivot_m_ > k) throw UsageError("pivot m must lie in [1, k]");
  for (std::size_t j = 1; j < pivot_m_; ++j)
    if (boundaries_[j] != j) throw UsageError("blocks before the pivot must be singletons");
}

IntervalPartition::Range IntervalPartition::block(std::size_t j) const {
  if (j < 1 || j > block_count()) throw UsageError("block index out of range");
  return {boundaries_[j - 1], boundaries_[j]};
}

double pow_abs(double v, double p) {
  const double a = std::abs(v);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  if (p == 3.0) return a * a * a;
  if (p == 4.0) {
    const double s = a * a;
    return s * s;
  }
  if (a == 0.0) return 0.0;
  return std::exp(p * std::log(a));
}

namespace {

void require_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) throw DomainError("sample vector entries must be finite");
}

}  // namespace

double jth_min(std::span<const double> v, std::size_t j) {
  if (j < 1 || j > v.size())
    throw UsageError("j = " + std::to_string(j) + " out of range [1, " + std::to_string(v.size()) + "]");
  require_finite(v);
  std::vector<double> scratch(v.begin(), v.end());
  std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(j - 1), scratch.end());
  return scratch[j - 1];
}

double sum_k_smallest_inplace(std::span<double> values, std::size_t k) {
  if (k < 1 || k > values.size())
    throw UsageError("k = " + std::to_string(k) + " out of range [1, " + std::to_string(values.size()) + "]");
  const auto kth = values.begin() + static_cast<std::ptrdiff_t>(k);
  if (k < values.size()) std::nth_element(values.begin(), kth - 1, values.end());
  std::sort(values.begin(), kth);
  double sum = 0.0;
  for (auto it = values.begin(); it != kth; ++it) sum += *it;
  return sum;
}

double sum_k_smallest(std::span<const double> v, std::size_t k, double p) {
  if (!(p > 0.0)) throw DomainError("p must be positive");
  require_finite(v);
  std::vector<double> scratch(v.size());
  std::transform(v.begin(), v.end(), scratch.begin(), [p](double x) { return pow_abs(x, p); });
  return sum_k_smallest_inplace(scratch, k);
}

double sum_partition_min(std::span<const double> v, const IntervalPartition& part, double p) {
  if (!(p > 0.0)) throw DomainError("p must be positive");
  if (part.size() != v.size())
    throw UsageError("partition covers " + std::to_string(part.size()) + " indices but vector has " +
                     std::to_string(v.size()));
  std::vector<double> minima;
  minima.reserve(part.block_count());
  for (std::size_t j = 1; j <= part.block_count(); ++j) {
    const auto [begin, end] = part.block(j);
    double block_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = begin; i < end; ++i) block_min = std::min(block_min, pow_abs(v[i], p));
    minima.push_back(block_min);
  }
  // ascending order, so the comparison with sum_k_smallest survives rounding
  std::sort(minima.begin(), minima.end());
  double sum = 0.0;
  for (double m : minima) sum += m;
  return sum;
}

}  // namespace ordstat
