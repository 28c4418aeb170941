#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>

#include "projgc/aes.hpp"
#include "projgc/block.hpp"
#include "projgc/label.hpp"

namespace projgc {

// A public, fixed 128-bit permutation.
class Permutation {
 public:
  virtual ~Permutation() = default;
  virtual Block permute(const Block& x) const = 0;
};

// AES-128 under the all-zero key.
class FixedKeyAes final : public Permutation {
 public:
  FixedKeyAes();
  Block permute(const Block& x) const override { return aes_.encrypt(x); }

 private:
  Aes128 aes_;
};

class IdentityPermutation final : public Permutation {
 public:
  Block permute(const Block& x) const override { return x; }
};

// Tweak namespaces. Garbling tweaks are wire indices below 2^62.
inline constexpr uint64_t kDigestTweakBase = uint64_t(1) << 62;
inline constexpr uint64_t kAuthTweakBase = uint64_t(1) << 63;

// Index written little-endian into the low 64 bits.
constexpr Block tweak_of(uint64_t index) { return Block(index, 0); }

// H(x, t) = pi(pi(x) ^ t) ^ pi(x). Counts its calls.
class TweakableHash {
 public:
  TweakableHash();
  explicit TweakableHash(std::shared_ptr<const Permutation> pi);
  TweakableHash(const TweakableHash& o) : pi_(o.pi_) {}

  Block hash(const Block& x, const Block& tweak) const {
    calls_.fetch_add(1, std::memory_order_relaxed);
    Block p = pi_->permute(x);
    return pi_->permute(p ^ tweak) ^ p;
  }

  // H_{n,m}: input padded to k bits (labels are stored padded), output cut to kappa + m bits.
  Block hash_narrow(const Block& x, const Block& tweak, unsigned kappa, unsigned m) const {
    return hash(x, tweak) & Block::low_mask(kappa + m);
  }

  uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }
  void reset_calls() { calls_.store(0, std::memory_order_relaxed); }

  // Chained digest of a byte string, tweaks taken from the digest namespace.
  Block digest(std::span<const uint8_t> bytes) const;

 private:
  std::shared_ptr<const Permutation> pi_;
  mutable std::atomic<uint64_t> calls_{0};
};

}  // namespace projgc
