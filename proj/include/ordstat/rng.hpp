#pragma once

#include <array>
#include <cstdint>

namespace ordstat {

/// Philox4x32-10 block function (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random stream keyed by (seed, stream id).
///
/// Draw number c of stream s under seed k is a pure function of (k, s, c), so
/// chunks of a simulation can be generated in any order or on any thread and
/// still reproduce bit-identical output.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1) with 53 bits of resolution.
  double uniform();

  /// Standard normal via Box–Muller; the sine branch of each pair is cached.
  double normal();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace ordstat
