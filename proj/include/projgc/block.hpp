#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <string>

namespace projgc {

// 128-bit value, bit 0 is the least significant bit of lo.
struct Block {
  uint64_t lo = 0;
  uint64_t hi = 0;

  constexpr Block() = default;
  constexpr Block(uint64_t l, uint64_t h) : lo(l), hi(h) {}

  constexpr Block operator^(const Block& o) const { return {lo ^ o.lo, hi ^ o.hi}; }
  constexpr Block& operator^=(const Block& o) {
    lo ^= o.lo;
    hi ^= o.hi;
    return *this;
  }
  constexpr Block operator&(const Block& o) const { return {lo & o.lo, hi & o.hi}; }
  constexpr Block operator~() const { return {~lo, ~hi}; }
  constexpr bool operator==(const Block&) const = default;

  constexpr bool bit(unsigned i) const { return i < 64 ? (lo >> i) & 1 : (hi >> (i - 64)) & 1; }
  constexpr void set_bit(unsigned i, bool v) {
    uint64_t& w = i < 64 ? lo : hi;
    uint64_t m = uint64_t(1) << (i & 63);
    w = v ? (w | m) : (w & ~m);
  }
  constexpr bool is_zero() const { return (lo | hi) == 0; }

  // Mask with the low `bits` bits set, bits <= 128.
  static constexpr Block low_mask(unsigned bits) {
    if (bits >= 128) return {~uint64_t(0), ~uint64_t(0)};
    if (bits >= 64) return {~uint64_t(0), bits == 64 ? 0 : (~uint64_t(0) >> (128 - bits))};
    return {bits == 0 ? 0 : (~uint64_t(0) >> (64 - bits)), 0};
  }

  // Little-endian byte image.
  std::array<uint8_t, 16> to_bytes() const {
    std::array<uint8_t, 16> out{};
    for (int i = 0; i < 8; ++i) {
      out[i] = uint8_t(lo >> (8 * i));
      out[8 + i] = uint8_t(hi >> (8 * i));
    }
    return out;
  }
  static Block from_bytes(const uint8_t* p) {
    Block b;
    for (int i = 7; i >= 0; --i) {
      b.lo = (b.lo << 8) | p[i];
      b.hi = (b.hi << 8) | p[8 + i];
    }
    return b;
  }

  std::string hex() const;  // big-endian hex, most significant nibble first
};

inline unsigned popcount(const Block& b) {
  return unsigned(__builtin_popcountll(b.lo) + __builtin_popcountll(b.hi));
}

}  // namespace projgc
