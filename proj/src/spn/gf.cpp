#include "projgc/spn/gf.hpp"

namespace projgc::spn {

namespace {

// Carry-less multiply then reduce by `poly` (degree `deg`, leading bit included).
uint32_t clmul_reduce(uint32_t a, uint32_t b, uint32_t poly, unsigned deg) {
  uint32_t r = 0;
  for (unsigned i = 0; i < deg; ++i)
    if ((b >> i) & 1) r ^= a << i;
  for (int i = int(2 * deg) - 2; i >= int(deg); --i)
    if ((r >> i) & 1) r ^= poly << (i - deg);
  return r;
}

}  // namespace

uint8_t gf256_mul(uint8_t a, uint8_t b) { return uint8_t(clmul_reduce(a, b, 0x11b, 8)); }
uint8_t gf16_mul(uint8_t a, uint8_t b) { return uint8_t(clmul_reduce(a, b, 0x13, 4)); }
uint8_t gf128_mul(uint8_t a, uint8_t b) { return uint8_t(clmul_reduce(a, b, 0x8f, 7)); }

uint8_t gf128_pow(uint8_t a, unsigned e) {
  uint8_t r = 1;
  while (e) {
    if (e & 1) r = gf128_mul(r, a);
    a = gf128_mul(a, a);
    e >>= 1;
  }
  return r;
}

}  // namespace projgc::spn
