#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "projgc/block.hpp"

namespace projgc {

// AES-128 encryption only. Uses AES-NI when the CPU has it, T-tables otherwise.
class Aes128 {
 public:
  explicit Aes128(const std::array<uint8_t, 16>& key);

  void encrypt(const uint8_t in[16], uint8_t out[16]) const;
  // Encrypts the little-endian byte image of the block.
  Block encrypt(const Block& in) const;

  bool hardware() const { return hw_; }

 private:
  alignas(16) std::array<uint8_t, 176> round_keys_{};
  std::array<uint32_t, 44> words_{};
  bool hw_ = false;
};

}  // namespace projgc
