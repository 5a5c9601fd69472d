#include "ordstat/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "ordstat/errors.hpp"

namespace ordstat {

namespace {

std::atomic<unsigned> g_thread_override{0};

void require_finite_nonneg(std::span<const double> v, const char* what) {
  for (double x : v)
    if (!(x >= 0.0) || !std::isfinite(x))
      throw DomainError(std::string(what) + " must be nonnegative and finite");
}

}  // namespace

VectorModel::VectorModel(Kind kind, std::size_t dimension)
    : kind_(std::move(kind)), dimension_(dimension) {
  if (dimension_ == 0) throw UsageError("vector model must have dimension >= 1");
  auto roots = [](const std::vector<double>& v) {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](double x) { return std::sqrt(x); });
    return out;
  };
  if (const auto* g = std::get_if<GaussianDiagonal>(&kind_)) sqrt_variances_ = roots(g->variances);
  if (const auto* r = std::get_if<RotatedGaussian>(&kind_)) sqrt_variances_ = roots(r->variances);
}

VectorModel VectorModel::independent(std::vector<DistributionSpec> dists, ScaledSequence x) {
  if (dists.size() != x.size())
    throw UsageError("need one distribution per coordinate (" + std::to_string(x.size()) + ")");
  const auto n = x.size();
  return VectorModel(IndependentScaled{std::move(dists), std::move(x)}, n);
}

VectorModel VectorModel::independent(const DistributionSpec& dist, ScaledSequence x) {
  std::vector<DistributionSpec> dists(x.size(), dist);
  return independent(std::move(dists), std::move(x));
}

VectorModel VectorModel::gaussian_diagonal(std::vector<double> variances) {
  require_finite_nonneg(variances, "variances");
  const auto n = variances.size();
  return VectorModel(GaussianDiagonal{std::move(variances)}, n);
}

VectorModel VectorModel::rotated_gaussian(std::vector<double> variances, OrthogonalMatrix transform) {
  require_finite_nonneg(variances, "variances");
  if (transform.dimension() != variances.size())
    throw UsageError("transform dimension does not match the variance vector");
  const auto n = variances.size();
  return VectorModel(RotatedGaussian{std::move(variances), std::move(transform)}, n);
}

VectorModel VectorModel::comonotone(const DistributionSpec& dist, ScaledSequence x) {
  const auto n = x.size();
  return VectorModel(Comonotone{dist, std::move(x)}, n);
}

std::vector<double> VectorModel::coordinate_second_moments() const {
  std::vector<double> out(dimension_);
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, IndependentScaled>) {
          for (std::size_t i = 0; i < dimension_; ++i) {
            const double w = m.x.weight(i + 1);
            out[i] = w * w * second_moment(m.dists[i]);
          }
        } else if constexpr (std::is_same_v<M, GaussianDiagonal>) {
          out = m.variances;
        } else if constexpr (std::is_same_v<M, RotatedGaussian>) {
          const auto& t = m.transform.matrix();
          for (std::size_t i = 0; i < dimension_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < dimension_; ++j) {
              const double tij = t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
              s += tij * tij * m.variances[j];
            }
            out[i] = s;
          }
        } else {
          const double s2 = second_moment(m.dist);
          for (std::size_t i = 0; i < dimension_; ++i) {
            const double w = m.x.weight(i + 1);
            out[i] = w * w * s2;
          }
        }
      },
      kind_);
  return out;
}

void VectorModel::draw(RandomStream& stream, std::span<double> out) const {
  if (out.size() != dimension_) throw UsageError("output buffer has the wrong dimension");
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, IndependentScaled>) {
          const auto x = m.x.x();
          for (std::size_t i = 0; i < dimension_; ++i) out[i] = x[i] * sample(m.dists[i], stream);
        } else if constexpr (std::is_same_v<M, GaussianDiagonal>) {
          for (std::size_t i = 0; i < dimension_; ++i) out[i] = sqrt_variances_[i] * stream.normal();
        } else if constexpr (std::is_same_v<M, RotatedGaussian>) {
          const auto n = static_cast<Eigen::Index>(dimension_);
          Eigen::VectorXd z(n);
          for (Eigen::Index j = 0; j < n; ++j)
            z(j) = sqrt_variances_[static_cast<std::size_t>(j)] * stream.normal();
          Eigen::Map<Eigen::VectorXd>(out.data(), n).noalias() = m.transform.matrix() * z;
        } else {
          const double xi = sample(m.dist, stream);
          const auto x = m.x.x();
          for (std::size_t i = 0; i < dimension_; ++i) out[i] = x[i] * xi;
        }
      },
      kind_);
}

SampleVector sample_vector(const VectorModel& model, RandomStream& stream) {
  SampleVector v(model.dimension());
  model.draw(stream, v);
  return v;
}

unsigned default_thread_count() {
  if (const unsigned forced = g_thread_override.load()) return forced;
  if (const char* env = std::getenv("ORDSTAT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_default_thread_count(unsigned threads) { g_thread_override.store(threads); }

std::vector<double> simulate_statistic(const VectorModel& model, const StatisticSpec& stat,
                                       std::size_t samples, std::uint64_t seed,
                                       const McOptions& options) {
  const std::size_t n = model.dimension();
  if (stat.k < 1 || stat.k > n)
    throw UsageError("k = " + std::to_string(stat.k) + " out of range [1, " + std::to_string(n) + "]");
  if (!(stat.p > 0.0)) throw DomainError("p must be positive");
  if (samples == 0) throw UsageError("samples must be positive");
  const std::size_t chunks = std::clamp<std::size_t>(options.chunks, 1, samples);
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(
      options.threads ? options.threads : default_thread_count(), chunks));

  std::vector<double> values(samples);
  std::atomic<std::size_t> next_chunk{0};

  auto worker = [&] {
    std::vector<double> buffer(n);
    for (std::size_t c; (c = next_chunk.fetch_add(1)) < chunks;) {
      const std::size_t begin = c * samples / chunks;
      const std::size_t end = (c + 1) * samples / chunks;
      RandomStream stream(seed, c);
      for (std::size_t s = begin; s < end; ++s) {
        model.draw(stream, buffer);
        for (double& v : buffer) v = pow_abs(v, stat.p);
        if (stat.kind == Statistic::sum_k_smallest) {
          values[s] = sum_k_smallest_inplace(buffer, stat.k);
        } else {
          const auto kth = buffer.begin() + static_cast<std::ptrdiff_t>(stat.k - 1);
          std::nth_element(buffer.begin(), kth, buffer.end());
          values[s] = *kth;
        }
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return values;
}

McEstimate summarize(std::span<const double> values, std::uint64_t seed) {
  const std::size_t n = values.size();
  if (n == 0) throw UsageError("cannot summarize an empty sample");
  McEstimate est;
  est.samples = n;
  est.seed = seed;

  long double sum = 0.0L;
  for (double v : values) sum += v;
  const long double mean = sum / static_cast<long double>(n);
  long double ss = 0.0L;
  for (double v : values) ss += (v - mean) * (v - mean);
  est.mean = static_cast<double>(mean);
  est.std_error = n > 1 ? static_cast<double>(std::sqrt(ss / static_cast<long double>(n - 1) /
                                                        static_cast<long double>(n)))
                        : 0.0;

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  est.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  constexpr double kZ99 = 2.5758293035489004;
  const double half = 0.5 * static_cast<double>(n);
  const double spread = 0.5 * kZ99 * std::sqrt(static_cast<double>(n));
  const auto lo = static_cast<std::size_t>(std::max(1.0, std::floor(half - spread)));
  const auto hi = static_cast<std::size_t>(std::min(static_cast<double>(n), std::ceil(half + spread)));
  est.median_ci = {sorted[lo - 1], sorted[hi - 1]};
  return est;
}

McEstimate estimate_statistic(const VectorModel& model, const StatisticSpec& stat,
                              std::size_t samples, std::uint64_t seed, const McOptions& options) {
  return summarize(simulate_statistic(model, stat, samples, seed, options), seed);
}

McEstimate estimate_sum_kmin(const VectorModel& model, std::size_t k, double p,
                             std::size_t samples, std::uint64_t seed, const McOptions& options) {
  if (samples < 1000) throw UsageError("estimate_sum_kmin needs at least 1000 samples");
  return estimate_statistic(model, {Statistic::sum_k_smallest, k, p}, samples, seed, options);
}

std::vector<CdfPoint> empirical_cdf(std::span<const double> values, std::span<const double> grid) {
  if (values.empty()) throw UsageError("empirical cdf of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<CdfPoint> out;
  out.reserve(grid.size());
  for (double t : grid) {
    const auto count = std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
    const double prob = static_cast<double>(count) / n;
    out.push_back({t, prob, std::sqrt(prob * (1.0 - prob) / n)});
  }
  return out;
}

std::vector<CdfPoint> empirical_cdf(const VectorModel& model, const StatisticSpec& stat,
                                    std::span<const double> grid, std::size_t samples,
                                    std::uint64_t seed, const McOptions& options) {
  return empirical_cdf(simulate_statistic(model, stat, samples, seed, options), grid);
}

SandwichVerdict sandwich_verdict(const McEstimate& estimate, const BoundReport& report) {
  if (report.upper < report.lower)
    throw UsageError("bound report '" + report.name + "' has upper < lower");
  constexpr double kRelSlack = 1e-9;
  SandwichVerdict v;
  v.estimate = estimate;
  v.lower = report.lower;
  v.upper = report.upper;
  const double margin = 3.0 * estimate.std_error;
  const bool lower_ok = report.lower * (1.0 - kRelSlack) <= estimate.mean + margin;
  const bool upper_ok = estimate.mean - margin <= report.upper * (1.0 + kRelSlack);
  v.passed = lower_ok && upper_ok;
  return v;
}

SandwichVerdict check_sandwich(const VectorModel& model, const BoundReport& report, std::size_t k,
                               double p, std::size_t samples, std::uint64_t seed,
                               const McOptions& options) {
  if (report.upper < report.lower)
    throw UsageError("bound report '" + report.name + "' has upper < lower");
  return sandwich_verdict(estimate_sum_kmin(model, k, p, samples, seed, options), report);
}

}  // namespace ordstat
