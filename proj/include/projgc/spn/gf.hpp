#pragma once

#include <cstdint>
#include <vector>

namespace projgc::spn {

// GF(2^8) modulo x^8+x^4+x^3+x+1 (AES).
uint8_t gf256_mul(uint8_t a, uint8_t b);
inline uint8_t gf256_double(uint8_t x) { return uint8_t((x << 1) ^ ((x & 0x80) ? 0x1b : 0)); }

// GF(2^4) modulo x^4+x+1 (Piccolo).
uint8_t gf16_mul(uint8_t a, uint8_t b);

// GF(2^7) modulo x^7+x^3+x^2+x+1 (WAGE).
uint8_t gf128_mul(uint8_t a, uint8_t b);
uint8_t gf128_pow(uint8_t a, unsigned e);
inline uint8_t gf128_double(uint8_t x) {
  x = uint8_t(x << 1);
  return (x & 0x80) ? uint8_t(x ^ 0x8f) : x;
}

// Lookup table of x -> f(x) over all 2^bits inputs.
template <class F>
std::vector<uint32_t> tabulate(unsigned bits, F f) {
  std::vector<uint32_t> t(size_t(1) << bits);
  for (uint32_t x = 0; x < t.size(); ++x) t[x] = uint32_t(f(x));
  return t;
}

}  // namespace projgc::spn
