#include "projgc/aes.hpp"

#include <cstring>

#if defined(__x86_64__) || defined(__i386__)
#include <wmmintrin.h>
#include <emmintrin.h>
#define PROJGC_X86 1
#endif

namespace projgc {
namespace {

constexpr uint8_t xtime(uint8_t x) { return uint8_t((x << 1) ^ ((x & 0x80) ? 0x1b : 0)); }

constexpr uint8_t gmul(uint8_t a, uint8_t b) {
  uint8_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a = xtime(a);
    b >>= 1;
  }
  return r;
}

struct Tables {
  uint8_t sbox[256]{};
  uint32_t te[4][256]{};

  constexpr Tables() {
    for (int x = 0; x < 256; ++x) {
      uint8_t inv = 0;
      if (x) {
        for (int y = 1; y < 256; ++y)
          if (gmul(uint8_t(x), uint8_t(y)) == 1) inv = uint8_t(y);
      }
      uint8_t s = inv;
      uint8_t r = inv;
      for (int i = 0; i < 4; ++i) {
        r = uint8_t((r << 1) | (r >> 7));
        s ^= r;
      }
      sbox[x] = uint8_t(s ^ 0x63);
    }
    for (int x = 0; x < 256; ++x) {
      uint8_t s = sbox[x];
      uint32_t w = uint32_t(gmul(s, 2)) | uint32_t(s) << 8 | uint32_t(s) << 16 |
                   uint32_t(gmul(s, 3)) << 24;
      for (int t = 0; t < 4; ++t) te[t][x] = (w << (8 * t)) | (t ? w >> (32 - 8 * t) : 0);
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

inline uint32_t load32(const uint8_t* p) {
  return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 | uint32_t(p[3]) << 24;
}
inline void store32(uint8_t* p, uint32_t v) {
  p[0] = uint8_t(v);
  p[1] = uint8_t(v >> 8);
  p[2] = uint8_t(v >> 16);
  p[3] = uint8_t(v >> 24);
}

#ifdef PROJGC_X86
__attribute__((target("aes,sse2"))) void encrypt_ni(const uint8_t* rk, const uint8_t* in,
                                                     uint8_t* out) {
  const __m128i* k = reinterpret_cast<const __m128i*>(rk);
  __m128i s = _mm_xor_si128(_mm_loadu_si128(reinterpret_cast<const __m128i*>(in)),
                            _mm_load_si128(k));
  for (int r = 1; r < 10; ++r) s = _mm_aesenc_si128(s, _mm_load_si128(k + r));
  s = _mm_aesenclast_si128(s, _mm_load_si128(k + 10));
  _mm_storeu_si128(reinterpret_cast<__m128i*>(out), s);
}

bool cpu_has_aesni() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("aes");
}
#endif

}  // namespace

Aes128::Aes128(const std::array<uint8_t, 16>& key) {
  const auto& t = tables();
  // Words are kept little-endian: byte 0 of the column in the low byte.
  for (int i = 0; i < 4; ++i) words_[i] = load32(key.data() + 4 * i);
  uint8_t rcon = 1;
  for (int i = 4; i < 44; ++i) {
    uint32_t w = words_[i - 1];
    if (i % 4 == 0) {
      w = (w >> 8) | (w << 24);
      w = uint32_t(t.sbox[w & 0xff]) | uint32_t(t.sbox[(w >> 8) & 0xff]) << 8 |
          uint32_t(t.sbox[(w >> 16) & 0xff]) << 16 | uint32_t(t.sbox[w >> 24]) << 24;
      w ^= rcon;
      rcon = xtime(rcon);
    }
    words_[i] = words_[i - 4] ^ w;
  }
  for (int i = 0; i < 44; ++i) store32(round_keys_.data() + 4 * i, words_[i]);
#ifdef PROJGC_X86
  hw_ = cpu_has_aesni();
#endif
}

void Aes128::encrypt(const uint8_t in[16], uint8_t out[16]) const {
#ifdef PROJGC_X86
  if (hw_) {
    encrypt_ni(round_keys_.data(), in, out);
    return;
  }
#endif
  const auto& t = tables();
  uint32_t s[4];
  for (int c = 0; c < 4; ++c) s[c] = load32(in + 4 * c) ^ words_[c];
  for (int r = 1; r < 10; ++r) {
    uint32_t n[4];
    for (int c = 0; c < 4; ++c) {
      n[c] = t.te[0][s[c] & 0xff] ^ t.te[1][(s[(c + 1) & 3] >> 8) & 0xff] ^
             t.te[2][(s[(c + 2) & 3] >> 16) & 0xff] ^ t.te[3][s[(c + 3) & 3] >> 24] ^
             words_[4 * r + c];
    }
    std::memcpy(s, n, sizeof s);
  }
  for (int c = 0; c < 4; ++c) {
    uint32_t w = uint32_t(t.sbox[s[c] & 0xff]) | uint32_t(t.sbox[(s[(c + 1) & 3] >> 8) & 0xff]) << 8 |
                 uint32_t(t.sbox[(s[(c + 2) & 3] >> 16) & 0xff]) << 16 |
                 uint32_t(t.sbox[s[(c + 3) & 3] >> 24]) << 24;
    store32(out + 4 * c, w ^ words_[40 + c]);
  }
}

Block Aes128::encrypt(const Block& in) const {
  auto bytes = in.to_bytes();
  uint8_t out[16];
  encrypt(bytes.data(), out);
  return Block::from_bytes(out);
}

}  // namespace projgc
