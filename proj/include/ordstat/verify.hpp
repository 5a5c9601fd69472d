#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ordstat/bounds.hpp"
#include "ordstat/mc.hpp"
#include "ordstat/ostat.hpp"

namespace ordstat::verify {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t instances = 0;
  std::size_t failures = 0;
  /// key=value lines describing the run (worst margins, observed ratios, ...)
  std::vector<std::string> notes;
};

/// n values drawn log-uniformly from [lo, hi], sorted ascending.
std::vector<double> loguniform_sequence(std::size_t n, double lo, double hi, std::uint64_t seed);

/// Descriptions of violated postconditions of `part` as a greedy partition of
/// `a` into k blocks; empty when all hold at relative tolerance `rel_tol`.
std::vector<std::string> partition_violations(std::span<const double> a, std::size_t k,
                                              const IntervalPartition& part, double rel_tol);

struct SandwichConfig {
  std::size_t instances = 50;
  std::size_t n_min = 4;
  std::size_t n_max = 64;
  std::size_t samples = 200000;
  double x_lo = 0.1;
  double x_hi = 10.0;
  std::uint64_t seed = 1;
};
/// Half-normal coordinates, α = β = √(2/π).
SandwichVerdict sandwich_instance(const ScaledSequence& x, std::size_t k, double p,
                                  std::size_t samples, std::uint64_t seed,
                                  const McOptions& options = {});
SuiteResult sandwich_suite(const SandwichConfig& config, const McOptions& options = {});

struct MinBoundsConfig {
  std::size_t sequences = 20;
  std::size_t n_max = 32;
  std::size_t grid_points = 20;
  std::size_t samples = 100000;
  std::uint64_t seed = 2;
};
SuiteResult min_bounds_suite(const MinBoundsConfig& config, const McOptions& options = {});

struct KernelConfig {
  std::size_t vectors = 10000;
  std::size_t n_max = 100;
  std::uint64_t seed = 3;
};
SuiteResult kernel_suite(const KernelConfig& config);

struct PartitionConfig {
  std::size_t sequences = 1000;
  std::size_t n_max = 200;
  double rel_tol = 1e-12;
  std::uint64_t seed = 4;
};
SuiteResult partition_suite(const PartitionConfig& config);

struct MajorizationConfig {
  std::size_t matrices = 1000;
  std::size_t n_max = 32;
  double tol = 1e-9;
  std::uint64_t seed = 5;
};
SuiteResult majorization_suite(const MajorizationConfig& config);

struct MzConfig {
  std::size_t instances = 200;
  std::size_t n_max = 16;
  std::size_t samples = 100000;
  double delta = 0.3;
  double decay_A = 3.0;
  std::uint64_t seed = 6;
};
SuiteResult mz_suite(const MzConfig& config, const McOptions& options = {});

struct LastpropConfig {
  std::size_t instances = 20;
  std::size_t n_max = 32;
  std::size_t samples = 20000;
  double u = 1.0 / 20.0;
  std::uint64_t seed = 7;
};
SuiteResult lastprop_suite(const LastpropConfig& config, const McOptions& options = {});

struct ScalingConfig {
  std::size_t samples = 200000;
  std::uint64_t seed = 8;
};
SuiteResult scaling_suite(const ScalingConfig& config, const McOptions& options = {});

struct RegularityConfig {
  std::size_t symmetric_instances = 1000;
  std::size_t low_est_instances = 10000;
  std::uint64_t seed = 9;
};
SuiteResult regularity_suite(const RegularityConfig& config);

struct DependenceConfig {
  std::size_t n = 128;
  std::size_t k = 64;
  std::size_t samples = 20000;
  double delta = 0.3;
  double decay_A = 3.0;
  std::uint64_t seed = 10;
};
SuiteResult dependence_suite(const DependenceConfig& config, const McOptions& options = {});

/// Suite names in acceptance order.
const std::vector<std::string>& suite_names();

}  // namespace ordstat::verify
