#include "projgc/hash.hpp"

#include <cstring>

namespace projgc {

FixedKeyAes::FixedKeyAes() : aes_(std::array<uint8_t, 16>{}) {}

namespace {
std::shared_ptr<const Permutation> default_permutation() {
  static const auto p = std::make_shared<const FixedKeyAes>();
  return p;
}
}  // namespace

TweakableHash::TweakableHash() : pi_(default_permutation()) {}

TweakableHash::TweakableHash(std::shared_ptr<const Permutation> pi) : pi_(std::move(pi)) {}

Block TweakableHash::digest(std::span<const uint8_t> bytes) const {
  // Length goes in first so that zero padding of the tail is unambiguous.
  Block h = hash(Block(bytes.size(), 0), tweak_of(kDigestTweakBase));
  uint64_t counter = 1;
  for (size_t off = 0; off < bytes.size(); off += 16) {
    uint8_t chunk[16] = {};
    std::memcpy(chunk, bytes.data() + off, std::min<size_t>(16, bytes.size() - off));
    h = hash(h ^ Block::from_bytes(chunk), tweak_of(kDigestTweakBase + counter++));
  }
  return h;
}

}  // namespace projgc
