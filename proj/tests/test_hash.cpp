#include <openssl/evp.h>

#include <set>

#include "doctest.h"
#include "projgc/aes.hpp"
#include "projgc/hash.hpp"

using namespace projgc;

namespace {

std::array<uint8_t, 16> openssl_aes(const std::array<uint8_t, 16>& key,
                                    const std::array<uint8_t, 16>& in) {
  std::array<uint8_t, 16> out{};
  EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
  int len = 0;
  EVP_EncryptInit_ex(ctx, EVP_aes_128_ecb(), nullptr, key.data(), nullptr);
  EVP_CIPHER_CTX_set_padding(ctx, 0);
  EVP_EncryptUpdate(ctx, out.data(), &len, in.data(), 16);
  EVP_CIPHER_CTX_free(ctx);
  return out;
}

std::array<uint8_t, 16> from_hex(const char* h) {
  std::array<uint8_t, 16> b{};
  for (int i = 0; i < 16; ++i) b[i] = uint8_t(std::stoi(std::string(h + 2 * i, 2), nullptr, 16));
  return b;
}

}  // namespace

TEST_CASE("AES-128 FIPS-197 vector") {
  Aes128 aes(from_hex("000102030405060708090a0b0c0d0e0f"));
  auto pt = from_hex("00112233445566778899aabbccddeeff");
  uint8_t ct[16];
  aes.encrypt(pt.data(), ct);
  auto want = from_hex("69c4e0d86a7b0430d8cdb78070b4c55a");
  CHECK(std::equal(ct, ct + 16, want.begin()));
}

TEST_CASE("AES-128 agrees with OpenSSL on random blocks") {
  Prg rng(9);
  for (int t = 0; t < 200; ++t) {
    auto key = rng.next_block().to_bytes();
    auto in = rng.next_block().to_bytes();
    Aes128 aes(key);
    uint8_t ct[16];
    aes.encrypt(in.data(), ct);
    auto want = openssl_aes(key, in);
    CHECK(std::equal(ct, ct + 16, want.begin()));
  }
}

TEST_CASE("TMMO known answers under the zero-key AES") {
  TweakableHash h;
  auto d0 = h.hash(Block{}, tweak_of(0)).to_bytes();
  CHECK(d0 == from_hex("917cf69ebd68b2ec9b9fe9a3eadda692"));
  uint8_t seq[16];
  for (int i = 0; i < 16; ++i) seq[i] = uint8_t(i);
  auto d5 = h.hash(Block::from_bytes(seq), tweak_of(5)).to_bytes();
  CHECK(d5 == from_hex("6e85c8a56595da9bec65b65c64763614"));
}

TEST_CASE("TMMO with the identity permutation returns the tweak") {
  TweakableHash h(std::make_shared<IdentityPermutation>());
  Prg rng(1);
  for (int i = 0; i < 50; ++i) {
    Block x = rng.next_block(), t = rng.next_block();
    CHECK(h.hash(x, t) == t);
  }
}

TEST_CASE("hash is deterministic and counts calls") {
  TweakableHash h;
  Block x(1, 2);
  CHECK(h.hash(x, tweak_of(3)) == h.hash(x, tweak_of(3)));
  CHECK(h.calls() == 2);
  h.reset_calls();
  CHECK(h.calls() == 0);
}

TEST_CASE("tweak encoding") {
  auto b = tweak_of(5).to_bytes();
  CHECK(b[0] == 5);
  for (int i = 1; i < 16; ++i) CHECK(b[i] == 0);
  CHECK(tweak_of(0).is_zero());
  CHECK_FALSE(tweak_of(7) == tweak_of(8));
}

TEST_CASE("narrow variant is a truncation of the full hash") {
  TweakableHash h;
  Prg rng(2);
  for (unsigned m = 1; m <= 8; ++m) {
    Block x = rng.next_block() & Block::low_mask(128);
    Block full = h.hash(x, tweak_of(m));
    CHECK(h.hash_narrow(x, tweak_of(m), 120, m) == (full & Block::low_mask(120 + m)));
  }
}

TEST_CASE("avalanche smoke test") {
  TweakableHash h;
  Prg rng(11);
  double total = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    Block x = rng.next_block();
    Block y = x;
    unsigned bit = unsigned(rng.uniform(128));
    y.set_bit(bit, !y.bit(bit));
    total += popcount(h.hash(x, tweak_of(1)) ^ h.hash(y, tweak_of(1)));
  }
  CHECK(total / trials >= 32.0);
}

TEST_CASE("distinct tweaks give distinct digests") {
  TweakableHash h;
  Block x(0x1234, 0x5678);
  std::set<std::pair<uint64_t, uint64_t>> seen;
  for (uint64_t t = 0; t < 100000; ++t) {
    Block d = h.hash(x, tweak_of(t));
    seen.insert({d.lo, d.hi});
  }
  CHECK(seen.size() == 100000);
}
