#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace edgelaw {

// Philox4x32-10 counter-based generator. The key is the 64-bit seed, the
// upper half of the counter is the stream id, the lower half counts blocks.
// Uniforms use 53 bits; normals are Box-Muller pairs.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint32_t next_u32();
  // Uniform on [0,1).
  double uniform();
  // Uniform on (0,1].
  double uniform_pos() { return 1.0 - uniform(); }
  double gaussian();
  // Exponential with the given rate.
  double exponential(double rate);
  // P(k) = (1-a) a^k, k >= 0.
  long geometric(double a);

  static std::array<std::uint32_t, 4> philox(std::array<std::uint32_t, 4> ctr,
                                             std::array<std::uint32_t, 2> key);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::vector<double> rng_gaussian(RngStream& stream, std::size_t n);

// Default seed, overridable through EDGELAW_SEED.
std::uint64_t default_seed();

}  // namespace edgelaw
