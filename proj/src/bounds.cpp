#include "ordstat/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ordstat/errors.hpp"

namespace ordstat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_k(std::size_t k, std::size_t n) {
  if (k < 1 || k > n)
    throw UsageError("k = " + std::to_string(k) + " out of range [1, " + std::to_string(n) + "]");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive");
}

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Σ_{i ≥ j} a_i for every j, returned 0-based.
std::vector<double> suffix_sums(std::span<const double> a) {
  std::vector<double> out(a.size());
  CompensatedSum acc;
  for (std::size_t i = a.size(); i-- > 0;) {
    acc.add(a[i]);
    out[i] = acc.value();
  }
  return out;
}

}  // namespace

ScaledSequence::ScaledSequence(std::vector<double> x) : x_(std::move(x)) {
  if (x_.empty()) throw DomainError("scaled sequence must be nonempty");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!(x_[i] > 0.0) || !std::isfinite(x_[i])) throw DomainError("weights must be positive and finite");
    if (i > 0 && x_[i] < x_[i - 1]) throw DomainError("weights must be sorted non-decreasing");
  }
  std::vector<double> inv(x_.size());
  std::transform(x_.begin(), x_.end(), inv.begin(), [](double v) { return 1.0 / v; });
  tail_ = suffix_sums(inv);
}

double ScaledSequence::max_ratio(std::size_t k) const {
  require_k(k, size());
  double best = 0.0;
  for (std::size_t j = 1; j <= k; ++j)
    best = std::max(best, static_cast<double>(k - j + 1) / tail_[j - 1]);
  return best;
}

ScaledSequence ScaledSequence::scaled(double c) const {
  require_positive(c, "scale");
  std::vector<double> y(x_);
  for (double& v : y) v *= c;
  return ScaledSequence(std::move(y));
}

IntervalPartition greedy_partition(std::span<const double> a, std::size_t k) {
  const std::size_t n = a.size();
  require_k(k, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a[i] > 0.0) || !std::isfinite(a[i])) throw DomainError("sequence must be positive");
    if (i > 0 && a[i] > a[i - 1]) throw DomainError("sequence must be non-increasing");
  }
  const std::vector<double> tail = suffix_sums(a);

  // a_k ≤ b_k always holds, so the search stops at m = k at the latest.
  std::size_t m = k;
  for (std::size_t j = 1; j <= k; ++j) {
    if (a[j - 1] * static_cast<double>(k + 1 - j) <= tail[j - 1]) {
      m = j;
      break;
    }
  }

  std::vector<std::size_t> bounds(k + 1);
  for (std::size_t j = 0; j < m; ++j) bounds[j] = j;

  // Blocks m..k partition {m, ..., n} into k' = k + 1 − m intervals.
  const std::size_t offset = m - 1;
  const std::size_t len = n - offset;
  const std::size_t blocks = k + 1 - m;
  const double total = tail[offset];

  std::vector<double> prefix(len + 1, 0.0);
  CompensatedSum acc;
  for (std::size_t i = 0; i < len; ++i) {
    acc.add(a[offset + i]);
    prefix[i + 1] = acc.value();
  }

  constexpr double kSlack = 1.0 + 8.0 * std::numeric_limits<double>::epsilon();
  std::size_t previous = 0;
  for (std::size_t ell = 1; ell < blocks; ++ell) {
    const double threshold = static_cast<double>(ell) * total / static_cast<double>(blocks) * kSlack;
    // largest i with prefix[i] ≤ threshold
    const auto it = std::upper_bound(prefix.begin(), prefix.end(), threshold);
    std::size_t cut = static_cast<std::size_t>(it - prefix.begin()) - 1;
    cut = std::max(cut, previous + 1);
    cut = std::min(cut, len - (blocks - ell));
    bounds[offset + ell] = offset + cut;
    previous = cut;
  }
  bounds[k] = n;
  return IntervalPartition(std::move(bounds), m);
}

double min_probability_lower(const ScaledSequence& x, double alpha, double t) {
  require_positive(alpha, "alpha");
  if (t <= 0.0) return 0.0;
  return std::min(1.0, alpha * x.b(1) * t);
}

double min_tail_upper(const ScaledSequence& x, double beta, double t) {
  require_positive(beta, "beta");
  if (t <= 0.0) return 1.0;
  return std::exp(-beta * x.b(1) * t);
}

MinExpectationBounds min_expectation_bounds(const ScaledSequence& x, double alpha, double beta,
                                            double p) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  require_positive(p, "p");
  const double b = x.b(1);
  MinExpectationBounds out;
  auto& e = out.expectation;
  e.name = "min_expectation";
  e.k = 1;
  e.p = p;
  e.lower = 1.0 / ((1.0 + p) * std::pow(alpha * b, p));
  e.upper = std::tgamma(1.0 + p) / std::pow(beta * b, p);
  e.params = {{"alpha", alpha}, {"beta", beta}, {"b1", b}};
  e.citation = "1/((1+p) alpha^p b1^p) <= E min|x_i xi_i|^p <= Gamma(1+p)/(beta^p b1^p)";

  auto& m = out.median;
  m.name = "min_median";
  m.k = 1;
  m.p = p;
  m.lower = 1.0 / std::pow(2.0 * alpha * b, p);
  m.upper = std::pow(std::numbers::ln2 / (beta * b), p);
  m.params = e.params;
  m.citation = "1/(2^p alpha^p b1^p) <= Med min|x_i xi_i|^p <= (ln 2)^p/(beta^p b1^p)";
  return out;
}

double malzeit_ratio(double alpha, double beta, double p) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  require_positive(p, "p");
  return std::tgamma(2.0 + p) * std::pow(alpha / beta, p);
}

double kmin_tail_upper(const ScaledSequence& x, double alpha, std::size_t k, double t) {
  require_k(k, x.size());
  require_positive(alpha, "alpha");
  if (t <= 0.0) return 0.0;
  const double kd = static_cast<double>(k);
  const double at = alpha * std::numbers::e * x.b(1) / kd * t;
  if (at >= 1.0) return 1.0;
  const double bound = std::pow(at, kd) / ((1.0 - at) * std::sqrt(2.0 * std::numbers::pi * kd));
  return std::min(1.0, bound);
}

double kmin_expectation_lower(const ScaledSequence& x, double alpha, std::size_t k, double p) {
  require_k(k, x.size());
  require_positive(alpha, "alpha");
  require_positive(p, "p");
  if (k == 1) return 1.0 / ((1.0 + p) * std::pow(alpha * x.b(1), p));
  const double root = x.max_ratio(k) / (std::pow(2.0, 1.0 / p) * 4.0 * alpha);
  return std::pow(root, p);
}

double quantile_lower_bound(const ScaledSequence& x, double alpha, std::size_t k) {
  require_positive(alpha, "alpha");
  return x.max_ratio(k) / (2.0 * alpha);
}

double averaged_cdf_quantile(std::span<const DistributionSpec> dists, const ScaledSequence& x,
                             double r) {
  const std::size_t n = x.size();
  if (dists.size() != n)
    throw UsageError("need one distribution per weight (" + std::to_string(n) + ")");
  if (!(r >= 0.0 && r < 1.0)) throw UsageError("quantile order must lie in [0,1)");
  if (r == 0.0) return 0.0;

  auto averaged = [&](double t) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += cdf(dists[i], t / x.weight(i + 1));
    return s / static_cast<double>(n);
  };
  // Every term reaches r by max_i x_i q_i(r), so the average does too.
  double hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) hi = std::max(hi, x.weight(i + 1) * quantile(dists[i], r));
  double lo = 0.0;
  const double tol = 1e-10 * x.weight(n);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (averaged(mid) >= r)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double truncation_threshold(std::span<const DistributionSpec> dists, double delta) {
  if (dists.empty()) throw UsageError("need at least one distribution");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
  double t0 = kInf;
  for (const auto& d : dists) {
    // inf{t : F(t) > δ} = sup{t : F(t) ≤ δ} for a right-continuous cdf
    double lo = 0.0;
    double hi = quantile(d, 0.5 * (1.0 + delta));
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (cdf(d, mid) > delta)
        hi = mid;
      else
        lo = mid;
    }
    t0 = std::min(t0, hi);
  }
  return t0;
}

double kmin_median_lower_dependent(const ScaledSequence& x, double alpha, double delta,
                                   double decay_A, std::size_t k) {
  require_positive(alpha, "alpha");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
  if (!(decay_A > 1.0)) throw DomainError("A must exceed 1");
  return delta / (2.0 * decay_A * alpha) * x.max_ratio(k);
}

double weighted_tail_sum(const ScaledSequence& x, double p, std::size_t k) {
  require_k(k, x.size());
  require_positive(p, "p");
  double s = 0.0;
  for (std::size_t j = 1; j <= k; ++j) s += std::pow(static_cast<double>(k - j + 1) / x.b(j), p);
  return s;
}

double w_constant(double beta, double p) {
  require_positive(beta, "beta");
  require_positive(p, "p");
  return std::pow(beta, -p) * std::tgamma(1.0 + p) * (1.0 + 2.0 * std::pow(4.0, p));
}

double refined_sum_kmin_upper(const ScaledSequence& x, double beta, double p, std::size_t k) {
  require_k(k, x.size());
  require_positive(beta, "beta");
  require_positive(p, "p");
  std::vector<double> inv(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) inv[i] = 1.0 / x.weight(i + 1);
  const std::size_t m = greedy_partition(inv, k).pivot_m();
  double head = 0.0;
  for (std::size_t j = 1; j < m; ++j) head += std::pow(x.weight(j), p);
  const double tail = std::pow(2.0, p) * std::pow(static_cast<double>(k - m + 1), 1.0 + p) /
                      std::pow(x.b(m), p);
  return std::pow(beta, -p) * std::tgamma(1.0 + p) * (head + tail);
}

BoundReport sum_kmin_bounds(const ScaledSequence& x, double alpha, double beta, double p,
                            std::size_t k) {
  require_positive(alpha, "alpha");
  const double s = weighted_tail_sum(x, p, k);
  std::vector<double> inv(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) inv[i] = 1.0 / x.weight(i + 1);
  const auto m = greedy_partition(inv, k).pivot_m();

  BoundReport r;
  r.name = "sum_kmin";
  r.k = k;
  r.p = p;
  r.lower = 0.5 * std::pow(16.0 * alpha, -p) * s;
  r.upper = w_constant(beta, p) * s;
  r.params = {{"alpha", alpha},
              {"beta", beta},
              {"S", s},
              {"refined_upper", refined_sum_kmin_upper(x, beta, p, k)},
              {"m", static_cast<double>(m)}};
  r.citation =
      "(1/2)(16 alpha)^-p S <= E sum_{j<=k} j-min|x_i xi_i|^p <= beta^-p Gamma(1+p)(1+2*4^p) S, "
      "S = sum_{j<=k} (k-j+1)^p/b_j^p";
  return r;
}

LowEstReport low_est_check(const ScaledSequence& x, double p, std::size_t k, double rel_tol) {
  require_k(k, x.size());
  require_positive(p, "p");
  LowEstReport r;
  double running = 0.0;
  for (std::size_t ell = 1; ell <= k; ++ell) {
    double best = 0.0;
    for (std::size_t j = 1; j <= ell; ++j)
      best = std::max(best, std::pow(static_cast<double>(ell - j + 1) / x.b(j), p));
    running += best;
  }
  r.upper_expr = std::pow(4.0, p) * running;
  r.middle = weighted_tail_sum(x, p, k);
  double best = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    const double w = static_cast<double>(k - j + 1);
    best = std::max(best, w * std::pow(w / x.b(j), p));
  }
  r.lower_expr = std::pow(2.0, -1.0 - p) * best;
  r.left_holds = r.upper_expr >= r.middle * (1.0 - rel_tol);
  r.right_holds = r.middle >= r.lower_expr * (1.0 - rel_tol);
  return r;
}

double comparison_constant(double alpha, double beta, double delta, double decay_A, double p) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  require_positive(p, "p");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
  if (!(decay_A > 1.0)) throw DomainError("A must exceed 1");
  return 6.0 * std::pow(32.0 * decay_A * alpha / (delta * beta), p) * std::tgamma(1.0 + p);
}

BoundReport kmin_upper_report_only(const ScaledSequence& x, double beta, double p, std::size_t k) {
  require_positive(beta, "beta");
  require_positive(p, "p");
  const double factor = std::max(p, std::log(static_cast<double>(k) + 1.0));
  BoundReport r;
  r.name = "kmin_upper_unscaled";
  r.k = k;
  r.p = p;
  r.lower = 0.0;
  r.upper = std::pow(factor / beta * x.max_ratio(k), p);
  r.params = {{"beta", beta}, {"C", 1.0}};
  r.citation = "(E k-min|x_i xi_i|^p)^(1/p) <= C max(p, ln(k+1)) beta^-1 max_j (k+1-j)/b_j, C unknown";
  r.assertable = false;
  return r;
}

BoundReport dependent_ratio_report_only(double alpha, double beta, double delta, double decay_A,
                                        double p, std::size_t k) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  require_positive(p, "p");
  BoundReport r;
  r.name = "independent_vs_dependent_kmin_ratio_unscaled";
  r.k = k;
  r.p = p;
  r.lower = 0.0;
  r.upper = std::pow(2.0, 1.0 / p) * decay_A * alpha / (beta * delta) *
            std::max(p, std::log(static_cast<double>(k) + 1.0));
  r.params = {{"alpha", alpha}, {"beta", beta}, {"delta", delta}, {"A", decay_A}, {"C", 1.0}};
  r.citation =
      "(E k-min|x_i eta_i|^p)^(1/p) <= C 2^(1/p) A alpha max(p, ln(k+1))/(beta delta) "
      "(E k-min|x_i xi_i|^p)^(1/p), C unknown";
  r.assertable = false;
  return r;
}

std::vector<double> elementary_symmetric(std::span<const double> a) {
  if (a.size() > 25) throw UsageError("elementary_symmetric supports n <= 25");
  std::vector<double> e(a.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] >= 0.0)) throw DomainError("entries must be nonnegative");
    for (std::size_t l = i + 1; l >= 1; --l) e[l] += a[i] * e[l - 1];
  }
  return e;
}

MaclaurinReport maclaurin_check(std::span<const double> a, std::size_t ell) {
  const std::size_t n = a.size();
  if (ell < 1 || ell > n) throw UsageError("ell must lie in [1, n]");
  const auto e = elementary_symmetric(a);
  double mean = 0.0;
  for (double v : a) mean += v;
  mean /= static_cast<double>(n);
  double binom = 1.0;
  for (std::size_t i = 1; i <= ell; ++i)
    binom = binom * static_cast<double>(n - ell + i) / static_cast<double>(i);
  MaclaurinReport r;
  r.lhs = e[ell];
  r.rhs = std::round(binom) * std::pow(mean, static_cast<double>(ell));
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-12);
  return r;
}

MaclaurinReport agmean_bound(std::span<const double> a, std::size_t k) {
  const std::size_t n = a.size();
  if (k < 1 || k > n) throw UsageError("k must lie in [1, n]");
  const auto e = elementary_symmetric(a);
  double total = 0.0;
  for (double v : a) total += v;
  const double kd = static_cast<double>(k);
  const double big_a = std::numbers::e / kd * total;
  MaclaurinReport r;
  for (std::size_t l = k; l <= n; ++l) r.lhs += e[l];
  r.applicable = big_a > 0.0 && big_a < 1.0;
  if (!r.applicable) {
    r.rhs = kInf;
    r.holds = false;
    return r;
  }
  r.rhs = std::pow(big_a, kd) / ((1.0 - big_a) * std::sqrt(2.0 * std::numbers::pi * kd));
  r.holds = r.lhs < r.rhs;
  return r;
}

}  // namespace ordstat
