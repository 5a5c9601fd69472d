#include "ordstat/dist.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "ordstat/errors.hpp"

namespace ordstat {

namespace {

const double kSqrt2OverPi = std::sqrt(2.0 / std::numbers::pi);

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw DomainError(std::string(what) + " must be positive and finite");
}

std::string format_number(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

DistributionSpec::DistributionSpec(DistKind kind, double parameter, double alpha, double beta)
    : kind_(kind), parameter_(parameter), alpha_(alpha), beta_(beta) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  if (alpha < beta) throw DomainError("alpha must be >= beta when both conditions hold");
}

DistributionSpec DistributionSpec::half_normal(double sigma) {
  require_positive(sigma, "sigma");
  const double c = kSqrt2OverPi / sigma;
  return DistributionSpec(DistKind::half_normal, sigma, c, c);
}

DistributionSpec DistributionSpec::exponential(double rate) {
  require_positive(rate, "rate");
  return DistributionSpec(DistKind::exponential, rate, rate, rate);
}

DistributionSpec DistributionSpec::uniform01() {
  return DistributionSpec(DistKind::uniform01, 1.0, 1.0, 1.0);
}

DistributionSpec DistributionSpec::gen_exponential(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("gen_exponential requires q >= 1");
  const double c = gen_exponential_normalizer(q);
  return DistributionSpec(DistKind::gen_exponential, q, c, c);
}

DistributionSpec DistributionSpec::with_constants(double alpha, double beta) const {
  DistributionSpec out(kind_, parameter_, alpha, beta);
  out.delta_ = delta_;
  out.decay_A_ = decay_A_;
  return out;
}

DistributionSpec DistributionSpec::with_decay(double delta, double decay_A) const {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
  if (!(decay_A > 1.0) || !std::isfinite(decay_A)) throw DomainError("A must exceed 1");
  DistributionSpec out = *this;
  out.delta_ = delta;
  out.decay_A_ = decay_A;
  return out;
}

std::string DistributionSpec::name() const {
  switch (kind_) {
    case DistKind::half_normal:
      return parameter_ == 1.0 ? "half-normal" : "half-normal:" + format_number(parameter_);
    case DistKind::exponential:
      return parameter_ == 1.0 ? "exponential" : "exponential:" + format_number(parameter_);
    case DistKind::uniform01:
      return "uniform";
    case DistKind::gen_exponential:
      return "gen-exp:" + format_number(parameter_);
  }
  return {};
}

DistributionSpec make_distribution(DistKind kind, double parameter) {
  switch (kind) {
    case DistKind::half_normal: return DistributionSpec::half_normal(parameter);
    case DistKind::exponential: return DistributionSpec::exponential(parameter);
    case DistKind::uniform01: return DistributionSpec::uniform01();
    case DistKind::gen_exponential: return DistributionSpec::gen_exponential(parameter);
  }
  throw UsageError("unknown distribution kind");
}

DistributionSpec parse_distribution(std::string_view name) {
  std::string_view head = name;
  std::optional<double> param;
  if (const auto colon = name.find(':'); colon != std::string_view::npos) {
    head = name.substr(0, colon);
    const std::string_view tail = name.substr(colon + 1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), value);
    if (ec != std::errc() || ptr != tail.data() + tail.size())
      throw UsageError("bad distribution parameter in '" + std::string(name) + "'");
    param = value;
  }
  if (head == "half-normal") return DistributionSpec::half_normal(param.value_or(1.0));
  if (head == "exponential") return DistributionSpec::exponential(param.value_or(1.0));
  if (head == "uniform") {
    if (param) throw UsageError("uniform takes no parameter");
    return DistributionSpec::uniform01();
  }
  if (head == "gen-exp") {
    if (!param) throw UsageError("gen-exp requires a q parameter, e.g. gen-exp:2");
    return DistributionSpec::gen_exponential(*param);
  }
  throw UsageError("unknown distribution '" + std::string(name) + "'");
}

double gen_exponential_normalizer(double q) { return 1.0 / std::tgamma(1.0 + 1.0 / q); }

double cdf(const DistributionSpec& dist, double t) {
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (t <= 0.0) return 0.0;
  if (std::isinf(t)) return 1.0;
  const double p = dist.parameter();
  switch (dist.kind()) {
    case DistKind::half_normal: return std::erf(t / (p * std::numbers::sqrt2));
    case DistKind::exponential: return -std::expm1(-p * t);
    case DistKind::uniform01: return std::min(t, 1.0);
    case DistKind::gen_exponential:
      if (p == 1.0) return -std::expm1(-t);
      if (p == 2.0) return std::erf(t);
      return boost::math::gamma_p(1.0 / p, std::pow(t, p));
  }
  return 0.0;
}

double survival(const DistributionSpec& dist, double t) {
  if (t <= 0.0) return 1.0;
  if (std::isinf(t)) return 0.0;
  const double p = dist.parameter();
  switch (dist.kind()) {
    case DistKind::half_normal: return std::erfc(t / (p * std::numbers::sqrt2));
    case DistKind::exponential: return std::exp(-p * t);
    case DistKind::uniform01: return t >= 1.0 ? 0.0 : 1.0 - t;
    case DistKind::gen_exponential:
      if (p == 1.0) return std::exp(-t);
      if (p == 2.0) return std::erfc(t);
      return boost::math::gamma_q(1.0 / p, std::pow(t, p));
  }
  return 0.0;
}

double quantile(const DistributionSpec& dist, double r) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("quantile order must lie in [0,1)");
  if (r == 0.0) return 0.0;
  const double p = dist.parameter();
  switch (dist.kind()) {
    case DistKind::half_normal:
      return p * std::numbers::sqrt2 * boost::math::erf_inv(r);
    case DistKind::exponential: return -std::log1p(-r) / p;
    case DistKind::uniform01: return r;
    case DistKind::gen_exponential:
      return std::pow(boost::math::gamma_p_inv(1.0 / p, r), 1.0 / p);
  }
  return 0.0;
}

double second_moment(const DistributionSpec& dist) {
  const double p = dist.parameter();
  switch (dist.kind()) {
    case DistKind::half_normal: return p * p;
    case DistKind::exponential: return 2.0 / (p * p);
    case DistKind::uniform01: return 1.0 / 3.0;
    case DistKind::gen_exponential: return std::tgamma(3.0 / p) / std::tgamma(1.0 / p);
  }
  return 0.0;
}

double sample(const DistributionSpec& dist, RandomStream& stream) {
  const double p = dist.parameter();
  switch (dist.kind()) {
    case DistKind::half_normal: return p * std::abs(stream.normal());
    case DistKind::exponential: return -std::log(stream.uniform()) / p;
    case DistKind::uniform01: return stream.uniform();
    case DistKind::gen_exponential:
      // |ξ|^q ~ Gamma(1/q, 1)
      return std::pow(boost::math::gamma_q_inv(1.0 / p, stream.uniform()), 1.0 / p);
  }
  return 0.0;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi >= lo)) throw DomainError("log_grid needs 0 < lo <= hi");
  if (points == 0) return {};
  if (points == 1) return {lo};
  std::vector<double> grid(points);
  const double step = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo * std::exp(step * static_cast<double>(i));
  grid.back() = hi;
  return grid;
}

std::vector<double> default_condition_grid() { return log_grid(1e-6, 50.0, 10000); }

namespace {

// signed margin and the magnitude it was computed from
using Margin = std::pair<double, double>;

// margins within a few ulps of the compared values count as equality
constexpr double kRoundingSlack = 8.0 * std::numeric_limits<double>::epsilon();

template <class Margin>
ConditionReport scan(std::span<const double> grid, Margin margin) {
  ConditionReport report;
  report.passed = true;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (const double t : grid) {
    if (!(t >= 0.0)) throw UsageError("condition grid must contain only t >= 0");
    const auto m = margin(t);
    if (!m) continue;
    ++report.grid_size;
    if (m->first < -kRoundingSlack * m->second) report.passed = false;
    if (m->first < report.worst_margin) {
      report.worst_margin = m->first;
      report.worst_t = t;
    }
  }
  if (report.grid_size == 0) throw UsageError("condition grid is empty");
  return report;
}

}  // namespace

ConditionReport check_alpha_condition(const DistributionSpec& dist, double alpha,
                                      std::span<const double> grid) {
  return scan(grid, [&](double t) -> std::optional<Margin> {
    const double a = alpha * t;
    const double f = cdf(dist, t);
    return Margin{a - f, std::max(a, f)};
  });
}

ConditionReport check_beta_condition(const DistributionSpec& dist, double beta,
                                     std::span<const double> grid) {
  return scan(grid, [&](double t) -> std::optional<Margin> {
    const double e = std::exp(-beta * t);
    const double s = survival(dist, t);
    return Margin{e - s, std::max(e, s)};
  });
}

ConditionReport check_cdf_decay(const DistributionSpec& dist, double delta, double decay_A,
                                std::span<const double> grid) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
  if (!(decay_A > 1.0)) throw DomainError("A must exceed 1");
  return scan(grid, [&](double t) -> std::optional<Margin> {
    const double f = cdf(dist, t);
    if (f > delta) return std::nullopt;
    const double g = 2.0 * cdf(dist, t / decay_A);
    return Margin{f - g, std::max(f, g)};
  });
}

}  // namespace ordstat
