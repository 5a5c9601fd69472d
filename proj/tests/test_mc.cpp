#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

#include "ordstat/errors.hpp"
#include "ordstat/mc.hpp"

using namespace ordstat;
using Catch::Matchers::WithinAbs;

namespace {

const double kGaussAlpha = std::sqrt(2.0 / std::numbers::pi);

bool within3(const McEstimate& e, double truth) { return std::abs(e.mean - truth) <= 3 * e.std_error; }

bool identical(const McEstimate& a, const McEstimate& b) {
  return std::memcmp(&a.mean, &b.mean, sizeof(double)) == 0 &&
         std::memcmp(&a.std_error, &b.std_error, sizeof(double)) == 0 && a.median == b.median &&
         a.median_ci == b.median_ci && a.samples == b.samples && a.seed == b.seed;
}

}  // namespace

TEST_CASE("sample_vector shapes") {
  RandomStream s(1, 0);
  const auto zero = sample_vector(VectorModel::gaussian_diagonal({0, 0, 0}), s);
  CHECK(zero == std::vector<double>{0, 0, 0});
  const auto com = sample_vector(VectorModel::comonotone(DistributionSpec::half_normal(), ScaledSequence({1, 2, 5})), s);
  CHECK(com[1] == 2 * com[0]);
  CHECK(com[2] == 5 * com[0]);
  CHECK(com[0] >= 0.0);
  CHECK_THROWS_AS(VectorModel::gaussian_diagonal({}), UsageError);
  CHECK_THROWS_AS(VectorModel::gaussian_diagonal({1, -1}), DomainError);
  CHECK_THROWS_AS(VectorModel::rotated_gaussian({1, 1, 1}, OrthogonalMatrix::identity(2)), UsageError);
}

TEST_CASE("rotated standard Gaussian matches the diagonal model") {
  const auto t = random_orthogonal(4, 3);
  const auto rot = VectorModel::rotated_gaussian({1, 1, 1, 1}, t);
  const auto diag = VectorModel::gaussian_diagonal({1, 1, 1, 1});
  const auto a = estimate_sum_kmin(rot, 2, 2.0, 100000, 4);
  const auto b = estimate_sum_kmin(diag, 2, 2.0, 100000, 5);
  CHECK(std::abs(a.mean - b.mean) <= 3 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("estimates of known expectations") {
  CHECK(within3(estimate_sum_kmin(VectorModel::gaussian_diagonal({1, 1}), 2, 1.0, 100000, 1), 2 * kGaussAlpha));
  CHECK(within3(estimate_sum_kmin(VectorModel::gaussian_diagonal({1}), 1, 2.0, 100000, 2), 1.0));
  CHECK(within3(estimate_sum_kmin(VectorModel::comonotone(DistributionSpec::uniform01(), ScaledSequence({1, 1})), 1,
                                  1.0, 100000, 3),
                0.5));
  // minimum of two unit exponentials is exponential with rate 2
  const auto ex = VectorModel::independent(DistributionSpec::exponential(), ScaledSequence({1, 1}));
  CHECK(within3(estimate_statistic(ex, {Statistic::kth_min, 1, 1.0}, 100000, 4), 0.5));
  CHECK_THROWS_AS(estimate_sum_kmin(VectorModel::gaussian_diagonal({1}), 1, 1.0, 999, 1), UsageError);
}

TEST_CASE("standard error and median interval") {
  const auto e = estimate_statistic(VectorModel::gaussian_diagonal({1}), {Statistic::kth_min, 1, 1.0}, 50000, 9);
  CHECK(e.samples == 50000);
  CHECK(e.seed == 9);
  CHECK_THAT(e.std_error * std::sqrt(50000.0), WithinAbs(std::sqrt(1 - 2 / std::numbers::pi), 0.01));
  CHECK(e.median_ci.first <= e.median);
  CHECK(e.median <= e.median_ci.second);
  CHECK(e.median_ci.first <= 0.674489750196082);
  CHECK(0.674489750196082 <= e.median_ci.second);
}

TEST_CASE("summaries of fixed samples") {
  std::vector<double> v;
  for (int i = 1; i <= 1001; ++i) v.push_back(i);
  const auto s = summarize(v, 0);
  CHECK(s.mean == 501.0);
  CHECK(s.median == 501.0);
  CHECK(s.median_ci.first < 501.0);
  CHECK(s.median_ci.second > 501.0);
  CHECK_THROWS_AS(summarize(std::vector<double>{}, 0), UsageError);
}

TEST_CASE("results do not depend on the thread count") {
  const auto model = VectorModel::independent(DistributionSpec::half_normal(), ScaledSequence({0.5, 1, 2, 3, 7}));
  const StatisticSpec stat{Statistic::sum_k_smallest, 3, 1.5};
  const auto one = estimate_statistic(model, stat, 20000, 17, {16, 1});
  const auto four = estimate_statistic(model, stat, 20000, 17, {16, 4});
  const auto again = estimate_statistic(model, stat, 20000, 17, {16, 3});
  CHECK(identical(one, four));
  CHECK(identical(one, again));
  CHECK(simulate_statistic(model, stat, 1000, 17, {16, 1}) == simulate_statistic(model, stat, 1000, 17, {16, 2}));
  const auto other = estimate_statistic(model, stat, 20000, 18, {16, 1});
  CHECK(other.mean != one.mean);
}

TEST_CASE("thread count fallback") {
  set_default_thread_count(3);
  CHECK(default_thread_count() == 3);
  set_default_thread_count(0);
  CHECK(default_thread_count() >= 1);
}

TEST_CASE("estimates from disjoint seeds are uncorrelated") {
  const auto model = VectorModel::gaussian_diagonal({1, 2, 3});
  const StatisticSpec stat{Statistic::sum_k_smallest, 2, 2.0};
  std::vector<double> a, b;
  for (std::uint64_t r = 0; r < 100; ++r) {
    a.push_back(estimate_statistic(model, stat, 2000, 1000 + 2 * r, {4, 1}).mean);
    b.push_back(estimate_statistic(model, stat, 2000, 1001 + 2 * r, {4, 1}).mean);
  }
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) ma += a[i] / 100, mb += b[i] / 100;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  // 100 repeats give a correlation SE of about 0.1; allow 3 SE
  CHECK(std::abs(sab / std::sqrt(saa * sbb)) < 0.3);
}

TEST_CASE("empirical cdf") {
  const auto model = VectorModel::gaussian_diagonal({1});
  const std::vector<double> grid{0.0, 0.674489750196082, INFINITY};
  const auto pts = empirical_cdf(model, {Statistic::kth_min, 1, 1.0}, grid, 40000, 5);
  CHECK(pts[0].probability == 0.0);
  CHECK(std::abs(pts[1].probability - 0.5) <= 3 * pts[1].std_error);
  CHECK(pts[2].probability == 1.0);
  const auto zero = empirical_cdf(VectorModel::gaussian_diagonal({0, 0}), {Statistic::kth_min, 1, 1.0},
                                  std::vector<double>{0.0, 1.0}, 1000, 5);
  CHECK(zero[0].probability == 1.0);
  CHECK(zero[1].probability == 1.0);
}

TEST_CASE("empirical k-min cdf respects the tail product bound") {
  const ScaledSequence x({0.5, 1, 1, 2, 3, 4, 8, 9});
  const auto model = VectorModel::independent(DistributionSpec::half_normal(), x);
  const double alpha = kGaussAlpha;
  for (std::size_t k : {1, 2, 4}) {
    const double a = alpha * std::numbers::e * x.b(1) / double(k);
    std::vector<double> grid;
    for (double f = 0.05; f < 1.0; f += 0.1) grid.push_back(f / a);
    const auto pts = empirical_cdf(model, {Statistic::kth_min, k, 1.0}, grid, 50000, 40 + k);
    for (const auto& pt : pts) {
      const double bound = kmin_tail_upper(x, alpha, k, pt.t);
      const double se = std::sqrt(std::max(pt.probability * (1 - pt.probability), bound * (1 - bound)) / 50000);
      CHECK(pt.probability <= bound + 3 * se);
    }
  }
}

TEST_CASE("sandwich verdicts") {
  const auto g = VectorModel::gaussian_diagonal({1, 1});
  const auto r = sum_kmin_bounds(ScaledSequence({1, 1}), kGaussAlpha, kGaussAlpha, 1.0, 2);
  const auto v = check_sandwich(g, r, 2, 1.0, 100000, 1);
  CHECK(v.passed);
  CHECK(v.estimate.mean > r.lower);
  const auto single = min_expectation_bounds(ScaledSequence({1}), kGaussAlpha, kGaussAlpha, 2.0).expectation;
  CHECK(check_sandwich(VectorModel::gaussian_diagonal({1}), single, 1, 2.0, 100000, 2).passed);

  BoundReport bad = r;
  bad.lower = 5;
  bad.upper = 1;
  CHECK_THROWS_AS(check_sandwich(g, bad, 2, 1.0, 1000, 1), UsageError);

  McEstimate exact;
  exact.mean = 2.0;
  BoundReport tight = r;
  tight.lower = 0.5;
  tight.upper = 1.5;
  CHECK_FALSE(sandwich_verdict(exact, tight).passed);
  tight.upper = 2.0;
  CHECK(sandwich_verdict(exact, tight).passed);
}

TEST_CASE("comonotone medians stay bounded while independent ones grow") {
  const std::size_t n = 128, k = 64;
  std::vector<double> xs(n, double(n * n));
  std::fill(xs.begin(), xs.begin() + k, 1.0);
  const ScaledSequence x(xs);
  const StatisticSpec stat{Statistic::kth_min, k, 1.0};
  const auto hn = DistributionSpec::half_normal();
  const auto ind = estimate_statistic(VectorModel::independent(hn, x), stat, 20000, 1);
  const auto com = estimate_statistic(VectorModel::comonotone(hn, x), stat, 20000, 2);
  CHECK(com.median <= 2.0);
  CHECK(ind.median / com.median >= 2.0);
}
