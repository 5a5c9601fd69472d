#include "ordstat/transform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "ordstat/errors.hpp"

namespace ordstat {

Eigen::MatrixXd squared_entries(const OrthogonalMatrix& t) {
  return t.matrix().cwiseAbs2();
}

std::vector<double> sorted_descending(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<double> propagate_variances(const OrthogonalMatrix& t, std::span<const double> a) {
  const std::size_t n = t.dimension();
  if (a.size() != n)
    throw UsageError("variance vector has length " + std::to_string(a.size()) + ", transform is " +
                     std::to_string(n) + "x" + std::to_string(n));
  for (double v : a)
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("variances must be nonnegative");
  const Eigen::Map<const Eigen::VectorXd> source(a.data(), static_cast<Eigen::Index>(n));
  const Eigen::VectorXd b = squared_entries(t) * source;
  return sorted_descending(std::span<const double>(b.data(), n));
}

VariancePair make_variance_pair(const OrthogonalMatrix& t, std::span<const double> a) {
  return {sorted_descending(a), propagate_variances(t, a)};
}

MajorizationReport majorization_check(std::span<const double> a_sorted,
                                      std::span<const double> b_sorted, double tol) {
  if (a_sorted.size() != b_sorted.size()) throw UsageError("majorization inputs differ in length");
  if (a_sorted.empty()) throw UsageError("majorization inputs are empty");
  auto non_increasing = [](std::span<const double> v) {
    return std::is_sorted(v.begin(), v.end(), std::greater<>());
  };
  if (!non_increasing(a_sorted) || !non_increasing(b_sorted))
    throw UsageError("majorization inputs must be sorted non-increasing");

  MajorizationReport r;
  const std::size_t n = a_sorted.size();
  r.margins.resize(n);
  long double pa = 0.0L;
  long double pb = 0.0L;
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < n; ++l) {
    pa += a_sorted[l];
    pb += b_sorted[l];
    r.margins[l] = static_cast<double>(pa - pb);
    if (r.margins[l] < r.worst_margin) {
      r.worst_margin = r.margins[l];
      r.worst_prefix = l + 1;
    }
  }
  r.total_gap = r.margins.back();
  const double scale = std::max(static_cast<double>(pa), static_cast<double>(pb));
  const double slack = scale > 0.0 ? tol * scale : tol;
  r.passed = r.worst_margin >= -slack && std::abs(r.total_gap) <= slack;
  return r;
}

MzResult mz_ratio(std::span<const double> variances, const OrthogonalMatrix& t, std::size_t k,
                  std::size_t samples, std::uint64_t seed, const McOptions& options) {
  const std::size_t n = variances.size();
  if (k < 1 || k >= n) throw UsageError("mz_ratio needs 1 <= k < n");
  std::vector<double> v(variances.begin(), variances.end());
  const auto lhs_model = VectorModel::gaussian_diagonal(v);
  const auto rhs_model = VectorModel::rotated_gaussian(v, t);

  MzResult r;
  r.lhs = estimate_sum_kmin(lhs_model, k, 2.0, samples, seed, options);
  r.rhs = estimate_sum_kmin(rhs_model, k, 2.0, samples, seed + 1, options);
  r.reliable = r.rhs.mean - 3.0 * r.rhs.std_error > 0.0;
  if (r.rhs.mean > 0.0) {
    r.ratio = r.lhs.mean / r.rhs.mean;
    const double rel_l = r.lhs.mean > 0.0 ? r.lhs.std_error / r.lhs.mean : 0.0;
    const double rel_r = r.rhs.std_error / r.rhs.mean;
    r.ratio_std_error = r.lhs.mean > 0.0 ? r.ratio * std::hypot(rel_l, rel_r)
                                         : r.lhs.std_error / r.rhs.mean;
  } else {
    r.ratio = r.lhs.mean > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    r.ratio_std_error = std::numeric_limits<double>::infinity();
  }
  return r;
}

}  // namespace ordstat
