#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "ordstat/errors.hpp"
#include "ordstat/orthogonal.hpp"
#include "ordstat/transform.hpp"
#include "ordstat/verify.hpp"

using namespace ordstat;
using Catch::Matchers::WithinAbs;

namespace {

OrthogonalMatrix rotation45() {
  const double c = std::sqrt(0.5);
  Eigen::MatrixXd m(2, 2);
  m << c, -c, c, c;
  return OrthogonalMatrix(m);
}

}  // namespace

TEST_CASE("Haar sampling") {
  const auto one = random_orthogonal(1, 4);
  CHECK(std::abs(one(0, 0)) == 1.0);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto t = random_orthogonal(1 + s % 20, s);
    CHECK(t.orthogonality_error() <= 1e-10);
    CHECK(((t.matrix() * t.matrix().transpose()) - Eigen::MatrixXd::Identity(t.dimension(), t.dimension()))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
  }
  CHECK(random_orthogonal(5, 9).matrix() == random_orthogonal(5, 9).matrix());
  CHECK_THROWS_AS(random_orthogonal(0, 1), UsageError);
}

TEST_CASE("Haar entries have zero mean") {
  const std::size_t n = 3, draws = 10000;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t s = 0; s < draws; ++s) sum += random_orthogonal(n, 1000 + s).matrix();
  // each entry has variance 1/n
  const double se = std::sqrt(1.0 / n / draws);
  CHECK((sum / double(draws)).cwiseAbs().maxCoeff() <= 4 * se);
}

TEST_CASE("non-orthogonal matrices are rejected") {
  Eigen::MatrixXd m(2, 2);
  m << 1, 0.1, 0, 1;
  CHECK_THROWS_AS(OrthogonalMatrix(m), DomainError);
  CHECK_THROWS_AS(OrthogonalMatrix(Eigen::MatrixXd(2, 3)), UsageError);
}

TEST_CASE("matrix text format round-trips") {
  const auto t = random_orthogonal(6, 21);
  std::stringstream ss;
  write_matrix(ss, t.matrix());
  const auto back = read_matrix(ss);
  CHECK(back == t.matrix());
  std::stringstream bad("2\n1 0\n0");
  CHECK_THROWS_AS(read_matrix(bad), UsageError);
}

TEST_CASE("variance propagation") {
  const std::vector<double> a{3, 1, 2};
  CHECK(propagate_variances(OrthogonalMatrix::identity(3), a) == std::vector<double>{3, 2, 1});
  const auto b = propagate_variances(rotation45(), std::vector<double>{2, 0});
  CHECK_THAT(b[0], WithinAbs(1.0, 1e-15));
  CHECK_THAT(b[1], WithinAbs(1.0, 1e-15));
  const auto c = propagate_variances(random_orthogonal(7, 2), std::vector<double>(7, 2.5));
  for (double v : c) CHECK_THAT(v, WithinAbs(2.5, 1e-12));
  CHECK_THROWS_AS(propagate_variances(rotation45(), a), UsageError);
}

TEST_CASE("majorization examples") {
  const std::vector<double> a{2, 0}, b{1, 1};
  const auto same = majorization_check(a, a, 1e-9);
  CHECK(same.passed);
  CHECK(same.worst_margin == 0.0);
  const auto ok = majorization_check(a, b, 1e-9);
  CHECK(ok.passed);
  CHECK(ok.margins == std::vector<double>{1, 0});
  const auto fail = majorization_check(b, a, 1e-9);
  CHECK_FALSE(fail.passed);
  CHECK(fail.worst_prefix == 1);
  CHECK_THROWS_AS(majorization_check(std::vector<double>{0, 1}, b, 1e-9), UsageError);
  CHECK_FALSE(majorization_check(std::vector<double>{2, 1}, b, 1e-9).passed);  // totals differ
}

TEST_CASE("orthogonal transforms are majorized by their source") {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const std::size_t n = 1 + s % 32;
    const auto t = random_orthogonal(n, 50 + s);
    auto a = verify::loguniform_sequence(n, 1e-3, 1e3, 9000 + s);
    if (s % 3 == 0) a[s % n] = 0.0;
    const auto pair = make_variance_pair(t, a);
    CHECK(majorization_check(pair.a, pair.b, 1e-9).passed);
    const Eigen::MatrixXd sq = squared_entries(t);
    CHECK((sq.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-9);
    CHECK((sq.colwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("comparison ratio examples") {
  const auto eq = mz_ratio(std::vector<double>(5, 1.0), random_orthogonal(5, 1), 2, 100000, 3);
  CHECK(eq.reliable);
  CHECK(std::abs(eq.ratio - 1.0) <= 3 * eq.ratio_std_error);

  const auto degenerate = mz_ratio(std::vector<double>{1, 0}, rotation45(), 1, 100000, 4);
  CHECK(degenerate.lhs.mean == 0.0);
  CHECK(degenerate.ratio == 0.0);
  CHECK(std::abs(degenerate.rhs.mean - 0.5) <= 3 * degenerate.rhs.std_error);

  Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(4, 4);
  perm(0, 2) = perm(1, 0) = perm(2, 3) = perm(3, 1) = 1.0;
  const auto p = mz_ratio(std::vector<double>{4, 1, 0.5, 2}, OrthogonalMatrix(perm), 2, 100000, 5);
  CHECK(std::abs(p.ratio - 1.0) <= 3 * p.ratio_std_error);

  CHECK_THROWS_AS(mz_ratio(std::vector<double>{1, 1}, rotation45(), 2, 1000, 1), UsageError);
  CHECK_THROWS_AS(mz_ratio(std::vector<double>{1, 1}, rotation45(), 0, 1000, 1), UsageError);
}

TEST_CASE("comparison ratio stays below the explicit constant") {
  const double a = std::sqrt(2.0 / std::numbers::pi);
  const double c = comparison_constant(a, a, 0.3, 3.0, 2.0);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const std::size_t n = 2 + s % 10;
    const auto v = verify::loguniform_sequence(n, 1e-2, 1e2, s);
    const auto r = mz_ratio(v, random_orthogonal(n, 70 + s), 1 + s % (n - 1), 20000, 80 + s);
    CHECK(r.ratio <= c + 3 * r.ratio_std_error);
  }
}
