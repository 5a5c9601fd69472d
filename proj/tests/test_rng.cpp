#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ordstat/rng.hpp"

using ordstat::philox4x32;
using ordstat::RandomStream;

TEST_CASE("philox4x32-10 known answers") {
  using C = std::array<std::uint32_t, 4>;
  using K = std::array<std::uint32_t, 2>;
  CHECK(philox4x32(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  RandomStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs_c |= x != c.next_u64();
    differs_d |= x != d.next_u64();
  }
  CHECK(differs_c);
  CHECK(differs_d);
}

TEST_CASE("uniform draws lie strictly inside (0,1) with the right moments") {
  RandomStream s(1, 0);
  const int n = 100000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sq += u * u;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean - 0.5) < 3 * std::sqrt(1.0 / 12 / n));
  CHECK(std::abs(sq / n - mean * mean - 1.0 / 12) < 2e-3);
}

TEST_CASE("normal draws have zero mean, unit variance and zero skew") {
  RandomStream s(2, 0);
  const int n = 200000;
  double m1 = 0, m2 = 0, m3 = 0;
  for (int i = 0; i < n; ++i) {
    const double g = s.normal();
    m1 += g;
    m2 += g * g;
    m3 += g * g * g;
  }
  CHECK(std::abs(m1 / n) < 3 / std::sqrt(double(n)));
  CHECK(std::abs(m2 / n - 1) < 3 * std::sqrt(2.0 / n));
  CHECK(std::abs(m3 / n) < 3 * std::sqrt(15.0 / n));
}

TEST_CASE("disjoint streams are uncorrelated") {
  // 100 pairs of streams, 10^4 paired uniforms each
  const int n = 10000;
  double worst = 0;
  for (std::uint64_t pair = 0; pair < 100; ++pair) {
    RandomStream a(11, 2 * pair), b(11, 2 * pair + 1);
    double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
    for (int i = 0; i < n; ++i) {
      const double u = a.uniform(), v = b.uniform();
      sa += u;
      sb += v;
      saa += u * u;
      sbb += v * v;
      sab += u * v;
    }
    const double cov = sab / n - sa / n * sb / n;
    const double corr = cov / std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
    worst = std::max(worst, std::abs(corr));
  }
  CHECK(worst < 0.05);
}
