#include "projgc/prg.hpp"

#include <random>

namespace projgc {
namespace {

std::array<uint8_t, 16> seed_key(uint64_t seed) {
  std::array<uint8_t, 16> k{};
  for (int i = 0; i < 8; ++i) k[i] = uint8_t(seed >> (8 * i));
  k[15] = 0x5a;  // keeps seeded keys apart from the all-zero hash key
  return k;
}

}  // namespace

Prg::Prg(uint64_t seed) : aes_(seed_key(seed)) {}

Prg::Prg(const std::array<uint8_t, 16>& key) : aes_(key) {}

Prg Prg::from_os_entropy() {
  std::random_device rd;
  std::array<uint8_t, 16> k{};
  for (size_t i = 0; i < k.size(); i += 4) {
    uint32_t v = rd();
    for (int j = 0; j < 4; ++j) k[i + j] = uint8_t(v >> (8 * j));
  }
  return Prg(k);
}

Block Prg::next_block() {
  has_half_ = false;
  return aes_.encrypt(Block(counter_++, 0));
}

uint64_t Prg::operator()() {
  if (has_half_) {
    has_half_ = false;
    return buffered_.hi;
  }
  buffered_ = aes_.encrypt(Block(counter_++, 0));
  has_half_ = true;
  return buffered_.lo;
}

uint64_t Prg::uniform(uint64_t bound) {
  uint64_t limit = max() - max() % bound;
  for (;;) {
    uint64_t v = (*this)();
    if (v < limit) return v % bound;
  }
}

}  // namespace projgc
