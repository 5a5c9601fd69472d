#include "ordstat/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ordstat/errors.hpp"

namespace ordstat {

CovarianceModel::CovarianceModel(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols())
    throw UsageError("covariance must be square and nonempty");
  if (!matrix_.allFinite()) throw DomainError("covariance has non-finite entries");
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  if ((matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw DomainError("covariance is not symmetric");
  const double trace = matrix_.trace();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10 * std::max(trace, 1e-300))
    throw DomainError("covariance is not positive semidefinite");
}

CovarianceModel CovarianceModel::from_spectrum(const OrthogonalMatrix& t, std::span<const double> a) {
  if (a.size() != t.dimension()) throw UsageError("spectrum length does not match the transform");
  const Eigen::Map<const Eigen::VectorXd> diag(a.data(), static_cast<Eigen::Index>(a.size()));
  Eigen::MatrixXd c = t.matrix() * diag.asDiagonal() * t.matrix().transpose();
  c = 0.5 * (c + c.transpose()).eval();
  return CovarianceModel(std::move(c));
}

KlBasis kl_basis(const CovarianceModel& cov) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov.matrix());
  if (solver.info() != Eigen::Success) throw DomainError("eigendecomposition failed");
  const auto n = static_cast<Eigen::Index>(cov.dimension());
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::MatrixXd& vectors = solver.eigenvectors();

  std::vector<Eigen::Index> lead(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) vectors.col(j).cwiseAbs().maxCoeff(&lead[static_cast<std::size_t>(j)]);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return values(a) > values(b); });
  // Reorder runs of (numerically) equal eigenvalues by leading-entry position.
  const double tie = 1e-12 * std::max(std::abs(cov.matrix().trace()), 1e-300);
  for (std::size_t start = 0; start < order.size();) {
    std::size_t end = start + 1;
    while (end < order.size() && values(order[start]) - values(order[end]) <= tie) ++end;
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(start), order.begin() + static_cast<std::ptrdiff_t>(end),
              [&](Eigen::Index a, Eigen::Index b) {
                return lead[static_cast<std::size_t>(a)] < lead[static_cast<std::size_t>(b)];
              });
    start = end;
  }

  KlBasis basis;
  basis.vectors.resize(n, n);
  basis.eigenvalues.resize(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    Eigen::VectorXd v = vectors.col(src);
    if (v(lead[static_cast<std::size_t>(src)]) < 0.0) v = -v;
    basis.vectors.col(j) = v;
    basis.eigenvalues[static_cast<std::size_t>(j)] = std::max(0.0, values(src));
  }
  return basis;
}

std::vector<double> variances_in_basis(const CovarianceModel& cov, const Eigen::MatrixXd& basis) {
  if (basis.rows() != cov.matrix().rows() || basis.cols() != cov.matrix().cols())
    throw UsageError("basis dimension does not match the covariance");
  const Eigen::VectorXd d = (basis.transpose() * cov.matrix() * basis).diagonal();
  return {d.data(), d.data() + d.size()};
}

double linear_error(std::span<const double> variances, std::size_t m) {
  const std::size_t n = variances.size();
  if (m >= n) throw UsageError("linear_error needs 0 <= m < n");
  std::vector<double> v(variances.begin(), variances.end());
  return sum_k_smallest_inplace(v, n - m);
}

McEstimate nonlinear_error(const VectorModel& model, std::size_t m, std::size_t samples,
                           std::uint64_t seed, const McOptions& options) {
  const std::size_t n = model.dimension();
  if (m >= n) throw UsageError("nonlinear_error needs 0 <= m < n");
  return estimate_sum_kmin(model, n - m, 2.0, samples, seed, options);
}

double wrd_constant(const DistributionSpec& dist, double scale) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) throw DomainError("scale must be nonnegative");
  if (scale == 0.0) return std::numeric_limits<double>::infinity();
  // With τ = s², ∫₀^M (P{X² ≥ τ} − 1/2) dτ = ∫₀^√M (P{|X| ≥ s} − 1/2) 2s ds,
  // and √M is the median of |X|.
  const double root_median = scale * quantile(dist, 0.5);
  auto integrand = [&](double s) { return (survival(dist, s / scale) - 0.5) * 2.0 * s; };
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, root_median, 20, 1e-12);
  return integral / (scale * scale * second_moment(dist));
}

double model_wrd_constant(const VectorModel& model) {
  return std::visit(
      [](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, IndependentScaled>) {
          double u = std::numeric_limits<double>::infinity();
          for (const auto& d : m.dists) u = std::min(u, wrd_constant(d));
          return u;
        } else if constexpr (std::is_same_v<M, Comonotone>) {
          return wrd_constant(m.dist);
        } else {
          // every coordinate is a centered Gaussian; zero-variance ones are vacuous
          const auto& v = m.variances;
          const bool all_zero = std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
          return all_zero ? std::numeric_limits<double>::infinity()
                          : wrd_constant(DistributionSpec::half_normal(1.0));
        }
      },
      model.kind());
}

LastpropVerdict check_lastprop(const VectorModel& model, std::size_t m, std::size_t samples,
                               std::uint64_t seed, std::optional<double> u,
                               const McOptions& options) {
  const std::size_t n = model.dimension();
  if (2 * m >= n) throw UsageError("check_lastprop needs m < n/2");
  LastpropVerdict v;
  v.u = u ? *u : model_wrd_constant(model);
  v.linear_error_2m = linear_error(model.coordinate_second_moments(), 2 * m);
  v.nonlinear = nonlinear_error(model, m, samples, seed, options);
  const double lhs = v.linear_error_2m == 0.0 ? 0.0 : v.u * v.linear_error_2m;
  v.passed = lhs <= v.nonlinear.mean + 3.0 * v.nonlinear.std_error;
  return v;
}

VectorModel sparse_unit_model(std::size_t n, std::size_t m) {
  if (m + 1 > n) throw UsageError("sparse_unit_model needs m + 1 <= n");
  std::vector<double> v(n, 0.0);
  std::fill(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m + 1), 1.0);
  return VectorModel::gaussian_diagonal(std::move(v));
}

std::vector<ErrorCurvePoint> error_curve(const VectorModel& model, std::span<const std::size_t> ms,
                                         std::size_t samples, std::uint64_t seed,
                                         const McOptions& options) {
  const auto moments = model.coordinate_second_moments();
  std::vector<ErrorCurvePoint> out;
  out.reserve(ms.size());
  for (const std::size_t m : ms)
    out.push_back({m, linear_error(moments, m), nonlinear_error(model, m, samples, seed, options)});
  return out;
}

}  // namespace ordstat
