#include "ordstat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>

#include <fmt/format.h>

#include "ordstat/approx.hpp"
#include "ordstat/dist.hpp"
#include "ordstat/errors.hpp"
#include "ordstat/report.hpp"
#include "ordstat/transform.hpp"

namespace ordstat::verify {

namespace {

constexpr std::uint64_t kInstanceStream = 0x1000;

// Instance parameters come from stream 0 of the suite seed; Monte Carlo runs
// get their own seeds derived per instance.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : stream_(seed, 0) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * stream_.uniform(); }
  double loguniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  std::size_t integer(std::size_t lo, std::size_t hi) {
    const auto span = static_cast<double>(hi - lo + 1);
    return std::min(hi, lo + static_cast<std::size_t>(stream_.uniform() * span));
  }
  double normal() { return stream_.normal(); }

 private:
  RandomStream stream_;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  RandomStream s(seed, kInstanceStream + index);
  return s.next_u64();
}

std::string note(std::string_view key, double value) {
  return fmt::format("{}={}", key, format_double(value));
}

SuiteResult finish(SuiteResult r) {
  r.passed = r.failures == 0 && r.instances > 0;
  return r;
}

const DistributionSpec& half_normal_spec() {
  static const DistributionSpec d = DistributionSpec::half_normal(1.0);
  return d;
}

}  // namespace

std::vector<double> loguniform_sequence(std::size_t n, double lo, double hi, std::uint64_t seed) {
  if (n == 0) throw UsageError("sequence length must be positive");
  if (!(lo > 0.0) || !(hi >= lo)) throw UsageError("need 0 < lo <= hi");
  Draws d(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = d.loguniform(lo, hi);
  std::sort(x.begin(), x.end());
  return x;
}

std::vector<std::string> partition_violations(std::span<const double> a, std::size_t k,
                                              const IntervalPartition& part, double rel_tol) {
  std::vector<std::string> out;
  const std::size_t n = a.size();
  if (part.block_count() != k) out.push_back(fmt::format("block count {} != k {}", part.block_count(), k));
  if (part.size() != n) out.push_back(fmt::format("partition covers {} of {}", part.size(), n));
  if (!out.empty()) return out;

  std::vector<long double> tail(n + 1, 0.0L);
  for (std::size_t i = n; i-- > 0;) tail[i] = tail[i + 1] + a[i];
  const auto b = [&](std::size_t j) { return static_cast<double>(tail[j - 1]); };
  const auto weight = [&](std::size_t j) { return static_cast<double>(k + 1 - j); };

  const std::size_t m = part.pivot_m();
  if (m < 1 || m > k) {
    out.push_back(fmt::format("pivot {} outside [1, k]", m));
    return out;
  }
  for (std::size_t j = 1; j < m; ++j)
    if (a[j - 1] * weight(j) <= b(j) * (1.0 - rel_tol))
      out.push_back(fmt::format("pivot not minimal: j={} already qualifies", j));
  if (a[m - 1] * weight(m) > b(m) * (1.0 + rel_tol))
    out.push_back(fmt::format("pivot m={} does not satisfy a_m (k+1-m) <= b_m", m));

  const auto& bd = part.boundaries();
  for (std::size_t j = 1; j < m; ++j)
    if (bd[j - 1] != j - 1 || bd[j] != j) out.push_back(fmt::format("block {} is not a singleton", j));

  // Cuts n_ℓ: the largest index whose running tail sum is ≤ ℓ b_m/k'.
  const std::size_t blocks = k + 1 - m;
  const long double step = tail[m - 1] / static_cast<long double>(blocks);
  for (std::size_t ell = 1; ell < blocks; ++ell) {
    const std::size_t cut = bd[m - 1 + ell];
    const long double threshold = step * static_cast<long double>(ell);
    const long double run = tail[m - 1] - tail[cut];
    if (run > threshold * (1.0L + rel_tol))
      out.push_back(fmt::format("cut {} overshoots its threshold", ell));
    if (cut < n && run + a[cut] <= threshold * (1.0L - rel_tol))
      out.push_back(fmt::format("cut {} is not the largest admissible index", ell));
  }

  long double min_ratio = INFINITY;
  for (std::size_t j = 1; j <= k; ++j) min_ratio = std::min(min_ratio, tail[j - 1] / (k + 1 - j));
  const double block_floor = b(m) / (2.0 * static_cast<double>(blocks));
  for (std::size_t j = 1; j <= k; ++j) {
    const auto r = part.block(j);
    long double sum = 0.0L;
    for (std::size_t i = r.begin; i < r.end; ++i) sum += a[i];
    if (j >= m && sum < block_floor * (1.0 - rel_tol))
      out.push_back(fmt::format("block {} sum below b_m/(2(k+1-m))", j));
    if (sum < 0.5L * min_ratio * (1.0L - rel_tol))
      out.push_back(fmt::format("block {} sum below (1/2) min_j b_j/(k+1-j)", j));
  }
  return out;
}

SandwichVerdict sandwich_instance(const ScaledSequence& x, std::size_t k, double p,
                                  std::size_t samples, std::uint64_t seed,
                                  const McOptions& options) {
  const auto& hn = half_normal_spec();
  const auto report = sum_kmin_bounds(x, hn.alpha(), hn.beta(), p, k);
  const auto model = VectorModel::independent(hn, x);
  return check_sandwich(model, report, k, p, samples, seed, options);
}

SuiteResult sandwich_suite(const SandwichConfig& c, const McOptions& options) {
  SuiteResult r{"sandwich", false, 0, 0, {}};
  Draws d(c.seed);
  double lowest_lower = INFINITY;
  double highest_lower = 0.0;
  double lowest_upper = INFINITY;
  for (std::size_t i = 0; i < c.instances; ++i) {
    const std::size_t n = d.integer(c.n_min, c.n_max);
    const std::size_t k = d.integer(1, n);
    const double p = d.integer(1, 2);
    const auto x = loguniform_sequence(n, c.x_lo, c.x_hi, derive_seed(c.seed, 2 * i));
    const auto v = sandwich_instance(ScaledSequence(x), k, p, c.samples, derive_seed(c.seed, 2 * i + 1),
                                     options);
    ++r.instances;
    const double mean = v.estimate.mean;
    lowest_lower = std::min(lowest_lower, v.lower / mean);
    highest_lower = std::max(highest_lower, v.lower / mean);
    lowest_upper = std::min(lowest_upper, v.upper / mean);
    if (!v.passed) {
      ++r.failures;
      r.notes.push_back(fmt::format("fail n={} k={} p={} mean={} lower={} upper={}", n, k, p,
                                    format_double(mean), format_double(v.lower),
                                    format_double(v.upper)));
    }
  }
  r.notes.push_back(note("max_lower_over_mean", highest_lower));
  r.notes.push_back(note("min_lower_over_mean", lowest_lower));
  r.notes.push_back(note("min_upper_over_mean", lowest_upper));
  return finish(std::move(r));
}

SuiteResult min_bounds_suite(const MinBoundsConfig& c, const McOptions& options) {
  SuiteResult r{"min-bounds", false, 0, 0, {}};
  const DistributionSpec dists[] = {DistributionSpec::half_normal(1.0),
                                    DistributionSpec::exponential(1.0)};
  Draws d(c.seed);
  const auto unit_grid = log_grid(0.01, 4.0, c.grid_points);
  const double n_samples = static_cast<double>(c.samples);
  double worst_lower = -INFINITY;
  double worst_upper = -INFINITY;
  std::size_t index = 0;
  for (const auto& dist : dists) {
    for (std::size_t s = 0; s < c.sequences; ++s, ++index) {
      const std::size_t n = d.integer(1, c.n_max);
      const ScaledSequence x(loguniform_sequence(n, 0.1, 10.0, derive_seed(c.seed, 2 * index)));
      const auto model = VectorModel::independent(dist, x);
      std::vector<double> grid(unit_grid.size());
      for (std::size_t g = 0; g < grid.size(); ++g) grid[g] = unit_grid[g] / x.b(1);
      const auto cdf_points = empirical_cdf(model, {Statistic::kth_min, 1, 1.0}, grid, c.samples,
                                            derive_seed(c.seed, 2 * index + 1), options);
      ++r.instances;
      std::size_t bad = 0;
      for (const auto& pt : cdf_points) {
        // Binomial SE under the bound itself when larger than the plug-in SE,
        // so near-equality cases are tested at their actual sampling spread.
        const double lo_bound = min_probability_lower(x, dist.alpha(), pt.t);
        const double hi_bound = min_tail_upper(x, dist.beta(), pt.t);
        const double q = 1.0 - pt.probability;
        const double se_lo = std::sqrt(std::max(pt.probability * q, lo_bound * (1.0 - lo_bound)) / n_samples);
        const double se_hi = std::sqrt(std::max(pt.probability * q, hi_bound * (1.0 - hi_bound)) / n_samples);
        const double m_lo = (pt.probability - lo_bound) / std::max(se_lo, 1e-300);
        const double m_hi = (q - hi_bound) / std::max(se_hi, 1e-300);
        worst_lower = std::max(worst_lower, se_lo > 0 ? m_lo : (pt.probability > lo_bound ? INFINITY : -INFINITY));
        worst_upper = std::max(worst_upper, se_hi > 0 ? m_hi : (q > hi_bound ? INFINITY : -INFINITY));
        if (pt.probability > lo_bound + 3.0 * se_lo || q > hi_bound + 3.0 * se_hi) ++bad;
      }
      if (bad > 0) {
        ++r.failures;
        r.notes.push_back(fmt::format("fail dist={} n={} points={}", dist.name(), n, bad));
      }
    }
  }
  r.notes.push_back(note("max_lower_excess_in_se", worst_lower));
  r.notes.push_back(note("max_tail_excess_in_se", worst_upper));
  return finish(std::move(r));
}

SuiteResult kernel_suite(const KernelConfig& c) {
  SuiteResult r{"kernel", false, 0, 0, {}};
  Draws d(c.seed);
  constexpr double powers[] = {1.0, 2.0, 0.5, 3.0, 1.7};
  std::vector<double> v;
  std::vector<double> sorted;
  std::vector<double> transformed;
  const auto same_bits = [](double u, double w) { return std::memcmp(&u, &w, sizeof(double)) == 0; };
  for (std::size_t i = 0; i < c.vectors; ++i) {
    const std::size_t n = d.integer(1, c.n_max);
    v.resize(n);
    for (auto& e : v) {
      switch (i % 3) {
        case 0: e = d.normal(); break;
        case 1: e = std::round(4.0 * d.normal()) / 4.0 + 0.0; break;  // ties and zeros
        default: e = d.loguniform(1e-8, 1e8) * (d.uniform(0, 1) < 0.5 ? -1.0 : 1.0); break;
      }
    }
    const double p = powers[i % 5];
    sorted = v;
    std::sort(sorted.begin(), sorted.end());
    transformed.resize(n);
    for (std::size_t j = 0; j < n; ++j) transformed[j] = pow_abs(v[j], p);
    std::sort(transformed.begin(), transformed.end());
    bool ok = true;
    double oracle = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      oracle += transformed[k - 1];
      ok = ok && same_bits(sum_k_smallest(v, k, p), oracle);
      ok = ok && same_bits(jth_min(v, k), sorted[k - 1]);
    }
    ++r.instances;
    if (!ok) {
      ++r.failures;
      if (r.failures <= 5) r.notes.push_back(fmt::format("fail vector={} n={} p={}", i, n, p));
    }
  }
  return finish(std::move(r));
}

SuiteResult partition_suite(const PartitionConfig& c) {
  SuiteResult r{"partition", false, 0, 0, {}};
  Draws d(c.seed);
  std::size_t nontrivial_pivots = 0;
  for (std::size_t i = 0; i < c.sequences; ++i) {
    const std::size_t n = d.integer(1, c.n_max);
    const std::size_t k = d.integer(1, n);
    std::vector<double> a(n);
    switch (i % 4) {
      case 0:
        for (auto& e : a) e = d.loguniform(1e-3, 1e3);
        break;
      case 1: {
        const double ratio = d.uniform(0.5, 1.0);
        for (std::size_t j = 0; j < n; ++j) a[j] = std::pow(ratio, static_cast<double>(j));
        break;
      }
      case 2: {
        const std::size_t spikes = d.integer(0, std::min<std::size_t>(n, 10));
        for (std::size_t j = 0; j < n; ++j) a[j] = j < spikes ? d.loguniform(10.0, 1e4) : d.uniform(0.5, 1.5);
        break;
      }
      default:
        for (auto& e : a) e = std::ceil(d.uniform(0.0, 3.0));
        break;
    }
    std::sort(a.begin(), a.end(), std::greater<>());
    const auto part = greedy_partition(a, k);
    if (part.pivot_m() > 1) ++nontrivial_pivots;
    const auto bad = partition_violations(a, k, part, c.rel_tol);
    ++r.instances;
    if (!bad.empty()) {
      ++r.failures;
      if (r.failures <= 5) r.notes.push_back(fmt::format("fail seq={} n={} k={}: {}", i, n, k, bad.front()));
    }
  }
  r.notes.push_back(fmt::format("pivot_above_one={}", nontrivial_pivots));
  return finish(std::move(r));
}

SuiteResult majorization_suite(const MajorizationConfig& c) {
  SuiteResult r{"majorization", false, 0, 0, {}};
  Draws d(c.seed);
  double worst_margin = INFINITY;
  double worst_stochastic = 0.0;
  for (std::size_t i = 0; i < c.matrices; ++i) {
    const std::size_t n = d.integer(1, c.n_max);
    const auto t = random_orthogonal(n, derive_seed(c.seed, i));
    std::vector<double> a(n);
    switch (i % 3) {
      case 0:
        for (auto& e : a) e = d.loguniform(1e-3, 1e3);
        break;
      case 1:
        for (auto& e : a) e = d.uniform(0.0, 1.0) < 0.3 ? 0.0 : d.uniform(0.0, 1.0);
        break;
      default:
        for (auto& e : a) e = d.uniform(0.0, 1e-2);
        a[d.integer(0, n - 1)] = 1e2;
        break;
    }
    const auto pair = make_variance_pair(t, a);
    const auto rep = majorization_check(pair.a, pair.b, c.tol);
    const Eigen::MatrixXd sq = squared_entries(t);
    const double row_err = (sq.rowwise().sum().array() - 1.0).abs().maxCoeff();
    const double col_err = (sq.colwise().sum().array() - 1.0).abs().maxCoeff();
    worst_stochastic = std::max({worst_stochastic, row_err, col_err});
    double scale = 0.0;
    for (double v : pair.a) scale += v;
    if (scale > 0.0) worst_margin = std::min(worst_margin, rep.worst_margin / scale);
    ++r.instances;
    if (!rep.passed || row_err > c.tol || col_err > c.tol) {
      ++r.failures;
      if (r.failures <= 5)
        r.notes.push_back(fmt::format("fail matrix={} n={} prefix={} margin={}", i, n, rep.worst_prefix,
                                      format_double(rep.worst_margin)));
    }
  }
  r.notes.push_back(note("worst_relative_margin", worst_margin));
  r.notes.push_back(note("worst_doubly_stochastic_error", worst_stochastic));
  return finish(std::move(r));
}

SuiteResult mz_suite(const MzConfig& c, const McOptions& options) {
  SuiteResult r{"mz", false, 0, 0, {}};
  const auto& hn = half_normal_spec();
  const auto decay = check_cdf_decay(hn, c.delta, c.decay_A, default_condition_grid());
  if (!decay.passed) {
    r.failures = 1;
    r.notes.push_back(fmt::format("cdf decay ({}, {}) not validated", c.delta, c.decay_A));
    return r;
  }
  const double constant = comparison_constant(hn.alpha(), hn.beta(), c.delta, c.decay_A, 2.0);
  r.notes.push_back(note("comparison_constant", constant));
  Draws d(c.seed);
  double max_ratio = 0.0;
  std::size_t within_one = 0;
  std::size_t unreliable = 0;
  for (std::size_t i = 0; i < c.instances; ++i) {
    const std::size_t n = d.integer(2, c.n_max);
    const std::size_t k = d.integer(1, n - 1);
    std::vector<double> variances(n);
    for (auto& v : variances) v = d.loguniform(1e-2, 1e2);
    const auto t = random_orthogonal(n, derive_seed(c.seed, 2 * i));
    const auto res = mz_ratio(variances, t, k, c.samples, derive_seed(c.seed, 2 * i + 1), options);
    ++r.instances;
    if (!res.reliable) {
      ++unreliable;
      continue;
    }
    max_ratio = std::max(max_ratio, res.ratio);
    if (res.ratio <= 1.0 + 3.0 * res.ratio_std_error) ++within_one;
    if (res.ratio > constant + 3.0 * res.ratio_std_error) {
      ++r.failures;
      r.notes.push_back(fmt::format("fail n={} k={} ratio={}", n, k, format_double(res.ratio)));
    }
  }
  r.notes.push_back(note("max_ratio", max_ratio));
  r.notes.push_back(fmt::format("ratio_within_1_plus_3se={}/{}", within_one, r.instances - unreliable));
  r.notes.push_back(fmt::format("unreliable={}", unreliable));
  return finish(std::move(r));
}

SuiteResult lastprop_suite(const LastpropConfig& c, const McOptions& options) {
  SuiteResult r{"lastprop", false, 0, 0, {}};
  Draws d(c.seed);
  double tightest = INFINITY;
  for (std::size_t i = 0; i < c.instances; ++i) {
    const std::size_t n = d.integer(3, c.n_max);
    const std::size_t m = d.integer(1, (n - 1) / 2);
    std::vector<double> variances(n);
    for (auto& v : variances) v = d.loguniform(1e-2, 1e2);
    const bool rotated = i % 2 == 1;
    const auto model = rotated ? VectorModel::rotated_gaussian(variances, random_orthogonal(n, derive_seed(c.seed, 2 * i)))
                               : VectorModel::gaussian_diagonal(variances);
    const auto v = check_lastprop(model, m, c.samples, derive_seed(c.seed, 2 * i + 1), c.u, options);
    ++r.instances;
    if (v.u * v.linear_error_2m > 0.0) tightest = std::min(tightest, v.nonlinear.mean / (v.u * v.linear_error_2m));
    if (!v.passed) {
      ++r.failures;
      r.notes.push_back(fmt::format("fail {} n={} m={}", rotated ? "rotated" : "diagonal", n, m));
    }
  }
  r.notes.push_back(note("min_nonlinear_over_u_linear", tightest));

  const double u_gauss = wrd_constant(DistributionSpec::half_normal(1.0));
  const auto expo = DistributionSpec::exponential(1.0).with_constants(1.0, 1.0);
  const double u_exp = wrd_constant(expo);
  const double exp_floor = expo.beta() * expo.beta() / (48.0 * expo.alpha() * expo.alpha());
  r.instances += 2;
  if (!(u_gauss >= 1.0 / 20.0)) ++r.failures;
  if (!(u_exp >= exp_floor)) ++r.failures;
  r.notes.push_back(note("wrd_gaussian", u_gauss));
  r.notes.push_back(note("wrd_exponential", u_exp));
  return finish(std::move(r));
}

SuiteResult scaling_suite(const ScalingConfig& c, const McOptions& options) {
  SuiteResult r{"scalings", false, 0, 0, {}};
  constexpr std::pair<std::size_t, std::size_t> exact_cases[] = {{32, 8}, {64, 16}, {128, 8}, {16, 2}, {100, 50}};
  for (const auto& [n, k] : exact_cases) {
    ++r.instances;
    const std::vector<double> ones(n, 1.0);
    if (linear_error(ones, n - k / 2) != static_cast<double>(k / 2)) {
      ++r.failures;
      r.notes.push_back(fmt::format("fail E0 n={} k={}", n, k));
    }
  }
  const auto e_hat = [&](std::size_t n, std::size_t k, std::uint64_t index) {
    return nonlinear_error(VectorModel::gaussian_diagonal(std::vector<double>(n, 1.0)), n - k, c.samples,
                           derive_seed(c.seed, index), options);
  };
  const auto e32 = e_hat(32, 8, 0);
  const auto e64 = e_hat(64, 16, 1);
  const auto e128 = e_hat(128, 8, 2);
  const double band_ratio = e64.mean / e32.mean;
  const double growth = (4.0 / e128.mean) / (4.0 / e32.mean);
  r.instances += 2;
  if (!(band_ratio >= 1.0 && band_ratio <= 4.0)) ++r.failures;
  if (!(growth >= 2.0)) ++r.failures;
  r.notes.push_back(note("E_32_8", e32.mean));
  r.notes.push_back(note("E_64_16", e64.mean));
  r.notes.push_back(note("E_128_8", e128.mean));
  r.notes.push_back(note("ratio_64_16_over_32_8", band_ratio));
  r.notes.push_back(note("growth_128_over_32", growth));
  return finish(std::move(r));
}

SuiteResult regularity_suite(const RegularityConfig& c) {
  SuiteResult r{"regularity", false, 0, 0, {}};
  const auto& hn = half_normal_spec();
  const auto grid = default_condition_grid();
  r.instances += 2;
  if (!check_cdf_decay(hn, 0.3, 3.0, grid).passed) {
    ++r.failures;
    r.notes.push_back("fail cdf decay (0.3, 3) rejected");
  }
  if (check_cdf_decay(hn, 0.3, 2.0, grid).passed) {
    ++r.failures;
    r.notes.push_back("fail cdf decay (0.3, 2) accepted");
  }

  Draws d(c.seed);
  std::size_t symmetric_failures = 0;
  for (std::size_t i = 0; i < c.symmetric_instances; ++i) {
    const std::size_t n = d.integer(1, 25);
    std::vector<double> a(n);
    if (i % 4 == 0) {
      std::fill(a.begin(), a.end(), d.loguniform(1e-2, 1e2));
    } else {
      for (auto& e : a) e = d.loguniform(1e-3, 1e1);
    }
    const auto mac = maclaurin_check(a, d.integer(1, n));

    const std::size_t k = d.integer(1, n);
    const double target = d.uniform(0.01, 0.99);  // A = (e/k) Σ a
    std::vector<double> w(n);
    double total = 0.0;
    for (auto& e : w) total += (e = d.uniform(0.0, 1.0));
    for (auto& e : w) e *= target * static_cast<double>(k) / (std::numbers::e * total);
    const auto ag = agmean_bound(w, k);

    r.instances += 2;
    if (!mac.holds) ++symmetric_failures;
    if (!(ag.applicable && ag.holds)) ++symmetric_failures;
  }
  r.failures += symmetric_failures;
  r.notes.push_back(fmt::format("symmetric_failures={}", symmetric_failures));

  std::size_t low_est_failures = 0;
  std::size_t refined_failures = 0;
  for (std::size_t i = 0; i < c.low_est_instances; ++i) {
    const std::size_t n = d.integer(1, 64);
    const ScaledSequence x(loguniform_sequence(n, 1e-2, 1e2, derive_seed(c.seed, i)));
    const std::size_t k = d.integer(1, n);
    const double p = d.uniform(1.0, 4.0);  // the left inequality needs p >= 1
    r.instances += 2;
    if (!low_est_check(x, p, k).holds()) ++low_est_failures;
    const auto rep = sum_kmin_bounds(x, 1.0, 1.0, p, k);
    if (!(rep.params.at("refined_upper") <= rep.upper * (1.0 + 1e-12)) || !(rep.lower <= rep.upper))
      ++refined_failures;
  }
  r.failures += low_est_failures + refined_failures;
  r.notes.push_back(fmt::format("low_est_failures={}", low_est_failures));
  r.notes.push_back(fmt::format("refined_upper_failures={}", refined_failures));
  return finish(std::move(r));
}

SuiteResult dependence_suite(const DependenceConfig& c, const McOptions& options) {
  SuiteResult r{"dependence", false, 0, 0, {}};
  if (c.k == 0 || c.k > c.n) throw UsageError("dependence suite needs 1 <= k <= n");
  const auto& hn = half_normal_spec();
  if (!check_cdf_decay(hn, c.delta, c.decay_A, default_condition_grid()).passed) {
    r.failures = 1;
    r.notes.push_back("cdf decay not validated");
    return r;
  }
  const double big = static_cast<double>(c.n) * static_cast<double>(c.n);
  std::vector<double> xs(c.n, big);
  std::fill(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(c.k), 1.0);
  const ScaledSequence x(xs);
  const StatisticSpec stat{Statistic::kth_min, c.k, 1.0};
  const auto ind = estimate_statistic(VectorModel::independent(hn, x), stat, c.samples, derive_seed(c.seed, 0), options);
  const auto com = estimate_statistic(VectorModel::comonotone(hn, x), stat, c.samples, derive_seed(c.seed, 1), options);
  const double bound = kmin_median_lower_dependent(x, hn.alpha(), c.delta, c.decay_A, c.k);
  const double ratio = ind.median / com.median;
  r.instances = 3;
  if (!(ratio >= 2.0)) ++r.failures;
  if (!(bound <= ind.median_ci.second)) ++r.failures;
  if (!(bound <= com.median_ci.second)) ++r.failures;
  r.notes.push_back(note("median_independent", ind.median));
  r.notes.push_back(note("median_comonotone", com.median));
  r.notes.push_back(note("median_ratio", ratio));
  r.notes.push_back(note("dependent_lower_bound", bound));
  return finish(std::move(r));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"sandwich", "min-bounds", "kernel", "partition",
                                                 "majorization", "mz", "lastprop", "scalings",
                                                 "regularity", "dependence"};
  return names;
}

}  // namespace ordstat::verify
