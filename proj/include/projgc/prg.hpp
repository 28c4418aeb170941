#pragma once

#include <array>
#include <cstdint>
#include <limits>

#include "projgc/aes.hpp"
#include "projgc/block.hpp"

namespace projgc {

// AES-128 in counter mode. Satisfies UniformRandomBitGenerator.
class Prg {
 public:
  using result_type = uint64_t;

  explicit Prg(uint64_t seed);
  explicit Prg(const std::array<uint8_t, 16>& key);
  static Prg from_os_entropy();

  Block next_block();
  uint64_t operator()();
  // Uniform in [0, bound), bound > 0.
  uint64_t uniform(uint64_t bound);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

 private:
  Aes128 aes_;
  uint64_t counter_ = 0;
  Block buffered_;
  bool has_half_ = false;
};

}  // namespace projgc
