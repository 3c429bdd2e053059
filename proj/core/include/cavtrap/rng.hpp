#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "cavtrap/units.hpp"

namespace cavtrap {

// Counter-based generator: ten rounds of the Philox 4x32 bijection. A
// (seed, stream) pair names an independent sequence, and any number of
// streams can be drawn from in any order across threads with identical
// results, because outputs depend only on (key, counter), not on shared
// state. Outputs come in blocks of four 32-bit words, exposed here as two
// 64-bit values per block.
class Philox4x32 {
 public:
  Philox4x32(std::uint64_t seed, std::uint64_t stream)
      : ctr_{0, 0, static_cast<std::uint32_t>(stream),
             static_cast<std::uint32_t>(stream >> 32)},
        key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)} {}

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t(0xD2511F53u) * ctr[0];
      const std::uint64_t p1 = std::uint64_t(0xCD9E8D57u) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
      key[0] += 0x9E3779B9u;
      key[1] += 0xBB67AE85u;
    }
    return ctr;
  }

  std::uint64_t next() {
    if (have_ == 0) {
      const auto out = block(ctr_, key_);
      buf_[0] = out[0] | (std::uint64_t(out[1]) << 32);
      buf_[1] = out[2] | (std::uint64_t(out[3]) << 32);
      have_ = 2;
      if (++ctr_[0] == 0) ++ctr_[1];
    }
    return buf_[2 - have_--];
  }

  // 53-bit uniform on [0, 1).
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint32_t, 2> key_;
  std::uint64_t buf_[2] = {0, 0};
  int have_ = 0;
};

// Unit normals from uniform pairs (trigonometric Box-Muller), plus raw
// uniforms, all drawn from one counter-based sequence so a (seed, stream)
// pair fixes every draw of a trajectory.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream)
      : eng_(seed, stream) {}

  double uniform() { return eng_.uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 on (0, 1] keeps the log finite.
    const double u1 = static_cast<double>((eng_.next() >> 11) + 1) * 0x1.0p-53;
    const double u2 = eng_.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = units::two_pi * u2;
    spare_ = r * std::sin(angle);
    have_spare_ = true;
    return r * std::cos(angle);
  }

 private:
  Philox4x32 eng_;
  double spare_ = 0;
  bool have_spare_ = false;
};

} // namespace cavtrap
