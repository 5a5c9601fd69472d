#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ordstat/approx.hpp"
#include "ordstat/errors.hpp"
#include "ordstat/transform.hpp"
#include "ordstat/verify.hpp"

using namespace ordstat;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("covariance validation") {
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.5, 0.4, 1;
  CHECK_THROWS_AS(CovarianceModel(asym), DomainError);
  Eigen::MatrixXd indef(2, 2);
  indef << 1, 2, 2, 1;
  CHECK_THROWS_AS(CovarianceModel(indef), DomainError);
}

TEST_CASE("basis of a diagonal covariance") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
  d.diagonal() << 3, 1, 2;
  const auto kl = kl_basis(CovarianceModel(d));
  CHECK(kl.eigenvalues == std::vector<double>{3, 2, 1});
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(3, 3);
  expected(0, 0) = expected(2, 1) = expected(1, 2) = 1.0;
  CHECK((kl.vectors - expected).cwiseAbs().maxCoeff() <= 1e-12);

  const auto id = kl_basis(CovarianceModel(Eigen::MatrixXd::Identity(4, 4)));
  CHECK((id.vectors - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-12);
  for (double e : id.eigenvalues) CHECK_THAT(e, WithinAbs(1.0, 1e-12));
}

TEST_CASE("basis recovers a known spectrum") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const std::size_t n = 2 + s % 12;
    const auto a = verify::loguniform_sequence(n, 0.01, 100, s);
    const auto cov = CovarianceModel::from_spectrum(random_orthogonal(n, 40 + s), a);
    const auto kl = kl_basis(cov);
    const auto sorted = sorted_descending(a);
    for (std::size_t i = 0; i < n; ++i) CHECK_THAT(kl.eigenvalues[i], WithinAbs(sorted[i], 1e-9 * sorted[0]));
    const Eigen::MatrixXd& u = kl.vectors;
    CHECK((u.transpose() * u - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-9);
    Eigen::VectorXd ev = Eigen::Map<const Eigen::VectorXd>(kl.eigenvalues.data(), n);
    const Eigen::MatrixXd rebuilt = u * ev.asDiagonal() * u.transpose();
    CHECK((rebuilt - cov.matrix()).cwiseAbs().maxCoeff() <= 1e-8 * cov.matrix().trace());
  }
}

TEST_CASE("basis minimizes the linear error") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t n = 2 + s % 10;
    const auto cov = CovarianceModel::from_spectrum(random_orthogonal(n, 200 + s),
                                                    verify::loguniform_sequence(n, 0.01, 100, 300 + s));
    const auto kl_vars = variances_in_basis(cov, kl_basis(cov).vectors);
    const auto other = variances_in_basis(cov, random_orthogonal(n, 400 + s).matrix());
    const auto natural = variances_in_basis(cov, Eigen::MatrixXd::Identity(n, n));
    for (std::size_t m = 0; m < n; ++m) {
      CHECK(linear_error(kl_vars, m) <= linear_error(other, m) + 1e-9);
      CHECK(linear_error(kl_vars, m) <= linear_error(natural, m) + 1e-9);
    }
  }
}

TEST_CASE("linear error") {
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{32, 8}, {64, 16}, {10, 2}})
    CHECK(linear_error(std::vector<double>(n, 1.0), n - k / 2) == double(k / 2));
  for (std::size_t m = 1; m < 6; ++m) {
    std::vector<double> v(12, 0.0);
    std::fill(v.begin(), v.begin() + m + 1, 1.0);
    CHECK(linear_error(v, m) == 1.0);
  }
  CHECK(linear_error(std::vector<double>{4, 0.5, 2}, 2) == 0.5);
  CHECK_THROWS_AS(linear_error(std::vector<double>{1, 2}, 2), UsageError);
}

TEST_CASE("nonlinear error never exceeds the linear error") {
  const std::vector<double> v{5, 0.1, 2, 1, 0.3, 3};
  const auto diag = VectorModel::gaussian_diagonal(v);
  const auto rot = VectorModel::rotated_gaussian(v, random_orthogonal(6, 5));
  std::vector<std::size_t> ms(6);
  std::iota(ms.begin(), ms.end(), 0);
  for (const auto* model : {&diag, &rot}) {
    const auto curve = error_curve(*model, ms, 20000, 6);
    for (std::size_t i = 0; i < curve.size(); ++i) {
      const auto& pt = curve[i];
      CHECK(pt.nonlinear.mean <= pt.linear + 3 * pt.nonlinear.std_error);
      if (i > 0) {
        CHECK(pt.linear <= curve[i - 1].linear);
        CHECK(pt.nonlinear.mean <= curve[i - 1].nonlinear.mean);
      }
    }
  }
  const auto zero = nonlinear_error(diag, 0, 50000, 7);
  CHECK(std::abs(zero.mean - std::accumulate(v.begin(), v.end(), 0.0)) <= 3 * zero.std_error);
}

TEST_CASE("sparse model error decays like the inverse square") {
  for (std::size_t m = 1; m <= 5; ++m) {
    const auto e = nonlinear_error(sparse_unit_model(32, m), m, 50000, 10 + m);
    const double scaled = double(m * m) * e.mean;
    INFO("m=" << m << " m^2 E=" << scaled);
    CHECK(scaled >= 0.25);
    CHECK(scaled <= 4.0);
    CHECK(e.mean + 3 * e.std_error >= 1.0 / 20);
  }
}

TEST_CASE("weak-regularity constants") {
  const double ug = wrd_constant(DistributionSpec::half_normal());
  CHECK(ug >= 1.0 / 20);
  CHECK_THAT(ug, WithinRel(0.0713259177442594, 1e-8));
  const double ue = wrd_constant(DistributionSpec::exponential().with_constants(1, 1));
  CHECK(ue >= 1.0 / 48);
  CHECK_THAT(ue, WithinRel(0.0333131562404770, 1e-8));
  CHECK_THAT(wrd_constant(DistributionSpec::uniform01()), WithinRel(0.125, 1e-8));
  CHECK_THAT(wrd_constant(DistributionSpec::half_normal(), 7.5), WithinRel(ug, 1e-10));
  CHECK_THAT(wrd_constant(DistributionSpec::half_normal(3.0)), WithinRel(ug, 1e-8));
  CHECK(std::isinf(wrd_constant(DistributionSpec::half_normal(), 0.0)));
  CHECK(std::isinf(model_wrd_constant(VectorModel::gaussian_diagonal({0, 0}))));
  CHECK_THAT(model_wrd_constant(VectorModel::gaussian_diagonal({0, 2, 5})), WithinRel(ug, 1e-8));
}

TEST_CASE("last proposition checks") {
  for (std::size_t n : {5, 8, 16}) {
    const auto model = VectorModel::gaussian_diagonal(std::vector<double>(n, 1.0));
    for (std::size_t m = 0; 2 * m < n; ++m) CHECK(check_lastprop(model, m, 20000, 100 + m, 1.0 / 20).passed);
  }
  const auto rot = VectorModel::rotated_gaussian(verify::loguniform_sequence(9, 0.01, 100, 2), random_orthogonal(9, 3));
  for (std::size_t m = 1; m < 5; ++m) CHECK(check_lastprop(rot, m, 20000, 200 + m).passed);
  for (std::size_t m = 1; m <= 5; ++m) {
    const auto v = check_lastprop(sparse_unit_model(12, m), m, 50000, 300 + m);
    CHECK(v.passed);
    CHECK_THAT(v.u, WithinRel(0.0713259177442594, 1e-8));
  }
  CHECK_THROWS_AS(check_lastprop(VectorModel::gaussian_diagonal({1, 1, 1, 1}), 2, 1000, 1), UsageError);
}

TEST_CASE("linear over nonlinear ratio grows with dimension") {
  const auto e = [](std::size_t n, std::size_t k, std::uint64_t seed) {
    return nonlinear_error(VectorModel::gaussian_diagonal(std::vector<double>(n, 1.0)), n - k, 100000, seed).mean;
  };
  const double r32 = 4.0 / e(32, 8, 1);
  const double r128 = 4.0 / e(128, 8, 2);
  CHECK(r128 >= 2 * r32);
  const double band = e(64, 16, 3) / e(32, 8, 4);
  CHECK(band >= 1.0);
  CHECK(band <= 4.0);
}
