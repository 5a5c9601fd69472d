#include "ordstat/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ordstat/approx.hpp"
#include "ordstat/bounds.hpp"
#include "ordstat/dist.hpp"
#include "ordstat/errors.hpp"
#include "ordstat/mc.hpp"
#include "ordstat/orthogonal.hpp"
#include "ordstat/report.hpp"
#include "ordstat/transform.hpp"
#include "ordstat/verify.hpp"

namespace ordstat::cli {

namespace {

struct Options {
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
  std::optional<std::size_t> m;
  std::optional<double> p;
  std::string dist = "half-normal";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::string out;
  std::string format = "csv";
  std::string x;
  std::string x_gen;
  std::string a;
  std::string variances;
  std::string matrix;
  std::string suite = "all";
  std::string stat = "sum";
  std::optional<unsigned> threads;
  double delta = 0.3;
  double decay_A = 3.0;
};

struct Output {
  std::vector<Record> records;
  nlohmann::json meta = nlohmann::json::object();
  bool violation = false;
};

std::uint64_t seed_of(const Options& o) { return o.seed.value_or(1); }

McOptions mc_options(const Options& o) {
  McOptions mc;
  if (o.threads) mc.threads = *o.threads;
  return mc;
}


template <class V>
void set_field(Record& rec, const std::string& name, V value) {
  for (auto& f : rec)
    if (f.name == name) {
      f.value = value;
      return;
    }
  rec.push_back({name, value});
}

void stamp(Record& rec, const std::string& citation, std::uint64_t seed, std::size_t samples) {
  set_field(rec, "citation", citation);
  set_field(rec, "seed", seed);
  set_field(rec, "samples", static_cast<std::int64_t>(samples));
}

std::size_t require_k(const Options& o, std::string_view command) {
  if (!o.k) throw UsageError(fmt::format("{} needs --k", command));
  if (*o.k == 0) throw UsageError("--k must be positive");
  return *o.k;
}

std::optional<std::vector<double>> x_sequence(const Options& o) {
  if (!o.x.empty() && !o.x_gen.empty()) throw UsageError("give either --x or --x-gen, not both");
  std::vector<double> x;
  if (!o.x.empty())
    x = parse_list(o.x);
  else if (!o.x_gen.empty())
    x = generate_sequence(o.x_gen, seed_of(o));
  else
    return std::nullopt;
  if (o.n && *o.n != x.size()) throw UsageError("--n disagrees with the length of the x-sequence");
  std::sort(x.begin(), x.end());
  return x;
}

ScaledSequence require_x(const Options& o, std::string_view command) {
  auto x = x_sequence(o);
  if (!x) throw UsageError(fmt::format("{} needs --x or --x-gen", command));
  return ScaledSequence(std::move(*x));
}

void check_k(std::size_t k, std::size_t n) {
  if (k > n) throw UsageError(fmt::format("--k {} exceeds dimension {}", k, n));
}

Output cmd_bounds(const Options& o) {
  const auto x = require_x(o, "bounds");
  const std::size_t k = require_k(o, "bounds");
  check_k(k, x.size());
  const double p = o.p.value_or(1.0);
  const auto dist = parse_distribution(o.dist);
  const double alpha = dist.alpha();
  const double beta = dist.beta();

  std::vector<BoundReport> reports;
  const auto min_bounds = min_expectation_bounds(x, alpha, beta, p);
  reports.push_back(min_bounds.expectation);
  reports.push_back(min_bounds.median);
  reports.push_back(sum_kmin_bounds(x, alpha, beta, p, k));

  BoundReport kexp;
  kexp.name = "kmin_expectation";
  kexp.k = k;
  kexp.p = p;
  kexp.lower = kmin_expectation_lower(x, alpha, k, p);
  kexp.upper = std::numeric_limits<double>::infinity();
  kexp.params = {{"alpha", alpha}};
  kexp.citation = "E k-min|x_i xi_i|^p >= (max_j (k-j+1)/b_j / (2^(1/p) 4 alpha))^p, independent";
  reports.push_back(kexp);

  BoundReport quant;
  quant.name = "kmin_quantile";
  quant.k = k;
  quant.p = 1.0;
  quant.lower = quantile_lower_bound(x, alpha, k);
  quant.upper = std::numeric_limits<double>::infinity();
  quant.params = {{"alpha", alpha}, {"r", (static_cast<double>(k) - 0.5) / static_cast<double>(x.size())}};
  quant.citation = "(1/(2 alpha)) max_j (k-j+1)/b_j <= left quantile of averaged cdf at (k-1/2)/n";
  reports.push_back(quant);

  if (check_cdf_decay(dist, o.delta, o.decay_A, default_condition_grid()).passed) {
    BoundReport dep;
    dep.name = "kmin_median_dependent";
    dep.k = k;
    dep.p = 1.0;
    dep.lower = kmin_median_lower_dependent(x, alpha, o.delta, o.decay_A, k);
    dep.upper = std::numeric_limits<double>::infinity();
    dep.params = {{"alpha", alpha}, {"delta", o.delta}, {"A", o.decay_A}};
    dep.citation = "Med k-min|x_i xi_i| >= (delta/(2 A alpha)) max_j (k-j+1)/b_j, any dependence";
    reports.push_back(dep);
  }
  reports.push_back(kmin_upper_report_only(x, beta, p, k));

  Output out;
  for (const auto& r : reports) {
    if (r.assertable && r.lower > r.upper) out.violation = true;
    out.records.push_back(to_record(r));
  }
  out.meta["dist"] = dist.name();
  return out;
}

Output cmd_partition(const Options& o) {
  std::vector<double> a;
  if (!o.a.empty()) {
    a = parse_list(o.a);
  } else {
    const auto x = require_x(o, "partition");
    for (double v : x.x()) a.push_back(1.0 / v);
  }
  const std::size_t k = require_k(o, "partition");
  check_k(k, a.size());
  const auto part = greedy_partition(a, k);
  Output out;
  for (std::size_t j = 1; j <= k; ++j) {
    const auto r = part.block(j);
    double sum = 0.0;
    for (std::size_t i = r.begin; i < r.end; ++i) sum += a[i];
    out.records.push_back({{"block", static_cast<std::int64_t>(j)},
                           {"first", static_cast<std::int64_t>(r.begin + 1)},
                           {"last", static_cast<std::int64_t>(r.end)},
                           {"sum", sum},
                           {"pivot_m", static_cast<std::int64_t>(part.pivot_m())}});
    stamp(out.records.back(),
          "pivot m: smallest j with a_j (k+1-j) <= b_j; singletons before m; block sums >= b_m/(2(k+1-m))",
          0, 0);
  }
  const auto bad = verify::partition_violations(a, k, part, 1e-12);
  out.violation = !bad.empty();
  out.meta["violations"] = bad;
  return out;
}

Output cmd_estimate(const Options& o) {
  auto xs = x_sequence(o);
  if (!xs) {
    if (!o.n) throw UsageError("estimate needs --n, --x or --x-gen");
    xs = std::vector<double>(*o.n, 1.0);
  }
  const std::size_t k = require_k(o, "estimate");
  check_k(k, xs->size());
  const double p = o.p.value_or(1.0);
  const auto dist = parse_distribution(o.dist);
  const ScaledSequence x(std::move(*xs));
  const auto model = VectorModel::independent(dist, x);
  const std::size_t samples = o.samples.value_or(100000);
  const std::uint64_t seed = seed_of(o);
  const auto mc = mc_options(o);

  Output out;
  if (o.stat == "sum") {
    const auto report = sum_kmin_bounds(x, dist.alpha(), dist.beta(), p, k);
    const auto verdict = check_sandwich(model, report, k, p, samples, seed, mc);
    auto rec = to_record(report);
    for (auto& f : to_record(verdict.estimate, "sum_kmin"))
      if (f.name != "label") set_field(rec, f.name, f.value);
    set_field(rec, "passed", verdict.passed);
    stamp(rec, report.citation, seed, samples);
    out.records.push_back(std::move(rec));
    out.violation = !verdict.passed;
  } else if (o.stat == "kth-min") {
    const auto est = estimate_statistic(model, {Statistic::kth_min, k, p}, samples, seed, mc);
    const double lower = kmin_expectation_lower(x, dist.alpha(), k, p);
    const bool passed = lower <= est.mean + 3.0 * est.std_error;
    auto rec = to_record(est, "kmin");
    set_field(rec, "lower", lower);
    set_field(rec, "passed", passed);
    stamp(rec, "E k-min|x_i xi_i|^p >= (max_j (k-j+1)/b_j / (2^(1/p) 4 alpha))^p, independent", seed,
          samples);
    out.records.push_back(std::move(rec));
    out.violation = !passed;
  } else {
    throw UsageError("--stat must be sum or kth-min");
  }
  out.meta["dist"] = dist.name();
  return out;
}

Record suite_record(const verify::SuiteResult& r) {
  std::string notes;
  for (const auto& n : r.notes) notes += (notes.empty() ? "" : "; ") + n;
  return {{"suite", r.name},
          {"passed", r.passed},
          {"instances", static_cast<std::int64_t>(r.instances)},
          {"failures", static_cast<std::int64_t>(r.failures)},
          {"notes", notes}};
}

Output cmd_verify(const Options& o) {
  const auto mc = mc_options(o);
  Output out;
  const auto& names = verify::suite_names();
  if (o.suite != "all" && std::find(names.begin(), names.end(), o.suite) == names.end())
    throw UsageError(fmt::format("unknown suite '{}'", o.suite));

  if (o.suite == "sandwich" && o.n) {
    const std::size_t k = require_k(o, "verify --suite sandwich");
    check_k(k, *o.n);
    const double p = o.p.value_or(1.0);
    const std::uint64_t seed = seed_of(o);
    auto xs = x_sequence(o);
    if (!xs) xs = verify::loguniform_sequence(*o.n, 0.1, 10.0, seed);
    const std::size_t samples = o.samples.value_or(200000);
    const auto v = verify::sandwich_instance(ScaledSequence(std::move(*xs)), k, p, samples, seed, mc);
    auto rec = to_record(v.estimate, "sandwich");
    set_field(rec, "k", static_cast<std::int64_t>(k));
    set_field(rec, "p", p);
    set_field(rec, "lower", v.lower);
    set_field(rec, "upper", v.upper);
    set_field(rec, "passed", v.passed);
    stamp(rec, "(1/2)(16 alpha)^-p S <= E sum_{j<=k} j-min|x_i xi_i|^p <= beta^-p Gamma(1+p)(1+2*4^p) S", seed,
          samples);
    out.records.push_back(std::move(rec));
    out.violation = !v.passed;
    return out;
  }

  const auto wants = [&](const char* name) { return o.suite == "all" || o.suite == name; };
  const auto add = [&](const verify::SuiteResult& r, std::uint64_t seed, std::size_t samples) {
    auto rec = suite_record(r);
    stamp(rec, "acceptance suite " + r.name, seed, samples);
    out.records.push_back(std::move(rec));
    if (!r.passed) out.violation = true;
  };
  if (wants("sandwich")) {
    verify::SandwichConfig c;
    if (o.seed) c.seed = *o.seed;
    if (o.samples) c.samples = *o.samples;
    add(verify::sandwich_suite(c, mc), c.seed, c.samples);
  }
  if (wants("min-bounds")) {
    verify::MinBoundsConfig c;
    if (o.seed) c.seed = *o.seed;
    if (o.samples) c.samples = *o.samples;
    add(verify::min_bounds_suite(c, mc), c.seed, c.samples);
  }
  if (wants("kernel")) {
    verify::KernelConfig c;
    if (o.seed) c.seed = *o.seed;
    add(verify::kernel_suite(c), c.seed, 0);
  }
  if (wants("partition")) {
    verify::PartitionConfig c;
    if (o.seed) c.seed = *o.seed;
    add(verify::partition_suite(c), c.seed, 0);
  }
  if (wants("majorization")) {
    verify::MajorizationConfig c;
    if (o.seed) c.seed = *o.seed;
    add(verify::majorization_suite(c), c.seed, 0);
  }
  if (wants("mz")) {
    verify::MzConfig c;
    if (o.seed) c.seed = *o.seed;
    if (o.samples) c.samples = *o.samples;
    c.delta = o.delta;
    c.decay_A = o.decay_A;
    add(verify::mz_suite(c, mc), c.seed, c.samples);
  }
  if (wants("lastprop")) {
    verify::LastpropConfig c;
    if (o.seed) c.seed = *o.seed;
    if (o.samples) c.samples = *o.samples;
    add(verify::lastprop_suite(c, mc), c.seed, c.samples);
  }
  if (wants("scalings")) {
    verify::ScalingConfig c;
    if (o.seed) c.seed = *o.seed;
    if (o.samples) c.samples = *o.samples;
    add(verify::scaling_suite(c, mc), c.seed, c.samples);
  }
  if (wants("regularity")) {
    verify::RegularityConfig c;
    if (o.seed) c.seed = *o.seed;
    add(verify::regularity_suite(c), c.seed, 0);
  }
  if (wants("dependence")) {
    verify::DependenceConfig c;
    if (o.seed) c.seed = *o.seed;
    if (o.samples) c.samples = *o.samples;
    if (o.n) c.n = *o.n;
    if (o.k) c.k = *o.k;
    c.delta = o.delta;
    c.decay_A = o.decay_A;
    add(verify::dependence_suite(c, mc), c.seed, c.samples);
  }
  return out;
}

std::vector<double> variances_of(const Options& o, std::string_view command) {
  if (!o.variances.empty()) {
    auto v = parse_list(o.variances);
    if (o.n && *o.n != v.size()) throw UsageError("--n disagrees with the length of --variances");
    return v;
  }
  if (!o.n) throw UsageError(fmt::format("{} needs --variances or --n", command));
  return verify::loguniform_sequence(*o.n, 1e-2, 1e2, seed_of(o) + 2);
}

OrthogonalMatrix matrix_of(const Options& o, std::size_t n) {
  if (o.matrix.empty()) return random_orthogonal(n, seed_of(o) + 3);
  std::ifstream in(o.matrix);
  if (!in) throw UsageError(fmt::format("cannot open matrix file '{}'", o.matrix));
  OrthogonalMatrix t(read_matrix(in));
  if (t.dimension() != n) throw UsageError("matrix dimension disagrees with the variances");
  return t;
}

Output cmd_mz(const Options& o) {
  const auto variances = variances_of(o, "mz");
  const std::size_t n = variances.size();
  const std::size_t k = require_k(o, "mz");
  if (k >= n) throw UsageError("mz needs 1 <= k < n");
  const auto t = matrix_of(o, n);
  const std::size_t samples = o.samples.value_or(100000);
  const std::uint64_t seed = seed_of(o);
  const auto res = mz_ratio(variances, t, k, samples, seed, mc_options(o));
  const auto hn = DistributionSpec::half_normal(1.0);
  const double constant = comparison_constant(hn.alpha(), hn.beta(), o.delta, o.decay_A, 2.0);
  Output out;
  out.records.push_back({{"k", static_cast<std::int64_t>(k)},
                         {"lhs_mean", res.lhs.mean},
                         {"lhs_std_error", res.lhs.std_error},
                         {"rhs_mean", res.rhs.mean},
                         {"rhs_std_error", res.rhs.std_error},
                         {"ratio", res.ratio},
                         {"ratio_std_error", res.ratio_std_error},
                         {"reliable", res.reliable},
                         {"comparison_constant", constant}});
  stamp(out.records.back(), "E sum_{j<=k} j-min X_i^2 <= C E sum_{j<=k} j-min (TX)_i^2, C = 6 (32 A alpha/(delta beta))^2 Gamma(3)",
        seed, samples);
  out.violation = res.reliable && res.ratio > constant + 3.0 * res.ratio_std_error;
  return out;
}

Output cmd_approx(const Options& o) {
  auto variances = variances_of(o, "approx");
  const std::size_t n = variances.size();
  const bool rotated = !o.matrix.empty();
  const auto model = rotated ? VectorModel::rotated_gaussian(variances, matrix_of(o, n))
                             : VectorModel::gaussian_diagonal(variances);
  std::vector<std::size_t> ms;
  if (o.m) {
    if (*o.m >= n) throw UsageError("--m must be below the dimension");
    ms.push_back(*o.m);
  } else {
    for (std::size_t m = 0; m < n; ++m) ms.push_back(m);
  }
  const std::size_t samples = o.samples.value_or(100000);
  const std::uint64_t seed = seed_of(o);
  const auto mc = mc_options(o);
  const double u = model_wrd_constant(model);
  const auto moments = model.coordinate_second_moments();
  Output out;
  for (const auto& pt : error_curve(model, ms, samples, seed, mc)) {
    const bool below_linear = pt.nonlinear.mean - 3.0 * pt.nonlinear.std_error <= pt.linear * (1.0 + 1e-12);
    Record rec{{"m", static_cast<std::int64_t>(pt.m)},
               {"E0", pt.linear},
               {"E_mean", pt.nonlinear.mean},
               {"E_stderr", pt.nonlinear.std_error},
               {"nonlinear_le_linear", below_linear}};
    if (!below_linear) out.violation = true;
    if (2 * pt.m < n) {
      const double lhs = u * linear_error(moments, 2 * pt.m);
      const bool holds = lhs <= pt.nonlinear.mean + 3.0 * pt.nonlinear.std_error;
      rec.push_back({"u_E0_2m", lhs});
      rec.push_back({"lastprop", holds});
      if (!holds) out.violation = true;
    }
    stamp(rec, "E(X,m) <= E0(X,m); u E0(X,2m) <= E(X,m) for m < n/2", seed, samples);
    out.records.push_back(std::move(rec));
  }
  out.meta["u"] = u;
  return out;
}

void emit(const Output& result, const std::string& command, const Options& o, std::ostream& out) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw UsageError(fmt::format("cannot write '{}'", o.out));
    sink = &file;
  }
  if (o.format == "json")
    write_json(*sink, command, result.meta, result.records);
  else
    write_csv(*sink, result.records);
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("not a number: '{}'", item));
    }
    if (used != item.size()) throw UsageError(fmt::format("not a number: '{}'", item));
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<double> generate_sequence(const std::string& spec, unsigned long long default_seed) {
  const std::string prefix = "loguniform:";
  if (spec.rfind(prefix, 0) != 0) throw UsageError("--x-gen must start with 'loguniform:'");
  std::optional<std::size_t> n;
  double lo = 0.1;
  double hi = 10.0;
  std::uint64_t seed = default_seed;
  std::stringstream ss(spec.substr(prefix.size()));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError(fmt::format("bad --x-gen entry '{}'", item));
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "n")
        n = std::stoull(value);
      else if (key == "lo")
        lo = std::stod(value);
      else if (key == "hi")
        hi = std::stod(value);
      else if (key == "seed")
        seed = std::stoull(value);
      else
        throw UsageError(fmt::format("unknown --x-gen key '{}'", key));
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const UsageError*>(&e)) throw;
      throw UsageError(fmt::format("bad --x-gen value '{}'", item));
    }
  }
  if (!n) throw UsageError("--x-gen needs n=");
  return verify::loguniform_sequence(*n, lo, hi, seed);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Order statistics of scaled random vectors: bounds, Monte Carlo checks, experiments",
               "ordstat"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1, 1);
  app.fallthrough();

  Options o;
  app.add_option("--n", o.n, "dimension");
  app.add_option("--k", o.k, "number of smallest terms / order");
  app.add_option("--m", o.m, "approximation terms kept");
  app.add_option("--p", o.p, "power p > 0");
  app.add_option("--dist", o.dist, "half-normal[:sigma], exponential[:rate], uniform, gen-exp:q");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--samples", o.samples, "Monte Carlo sample count");
  app.add_option("--out", o.out, "output file (default standard output)");
  app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--x", o.x, "comma-separated weights x_i > 0");
  app.add_option("--x-gen", o.x_gen, "loguniform:n=16,lo=0.1,hi=10,seed=3");
  app.add_option("--a", o.a, "non-increasing sequence for partition");
  app.add_option("--variances", o.variances, "comma-separated coordinate variances");
  app.add_option("--matrix", o.matrix, "orthogonal matrix file (n, then n rows)");
  app.add_option("--suite", o.suite, "acceptance suite name or 'all'");
  app.add_option("--stat", o.stat, "sum or kth-min")->check(CLI::IsMember({"sum", "kth-min"}));
  app.add_option("--threads", o.threads, "worker threads (fallback ORDSTAT_THREADS)");
  app.add_option("--delta", o.delta, "cdf-decay delta");
  app.add_option("--decay-A", o.decay_A, "cdf-decay A");

  auto* bounds = app.add_subcommand("bounds", "deterministic bounds for an x-sequence");
  auto* partition = app.add_subcommand("partition", "greedy interval partition");
  auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimate with sandwich check");
  auto* verify_cmd = app.add_subcommand("verify", "acceptance suites");
  auto* mz = app.add_subcommand("mz", "independent vs rotated comparison ratio");
  auto* approx = app.add_subcommand("approx", "linear and nonlinear approximation errors");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (o.samples && *o.samples == 0) throw UsageError("--samples must be positive");
    if (o.p && !(*o.p > 0.0)) throw UsageError("--p must be positive");
    Output result;
    std::string command;
    if (bounds->parsed()) {
      command = "bounds";
      result = cmd_bounds(o);
    } else if (partition->parsed()) {
      command = "partition";
      result = cmd_partition(o);
    } else if (estimate->parsed()) {
      command = "estimate";
      result = cmd_estimate(o);
    } else if (verify_cmd->parsed()) {
      command = "verify";
      result = cmd_verify(o);
    } else if (mz->parsed()) {
      command = "mz";
      result = cmd_mz(o);
    } else if (approx->parsed()) {
      command = "approx";
      result = cmd_approx(o);
    }
    emit(result, command, o, out);
    return result.violation ? 1 : 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace ordstat::cli
