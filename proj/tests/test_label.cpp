#include "doctest.h"
#include "projgc/error.hpp"
#include "projgc/label.hpp"

using namespace projgc;

TEST_CASE("offset matrix has identity bottom block") {
  Prg rng(1);
  SchemeParams p;
  auto r1 = gen_offsets(1, rng, p);
  CHECK(r1.columns()[0].bit(0));

  auto r4 = gen_offsets(4, rng, p);
  for (unsigned i = 0; i < 4; ++i) {
    CHECK(lsb_bits(r4.columns()[i], 4) == (1u << i));
    // nothing above kappa + n
    CHECK((r4.columns()[i] & ~Block::low_mask(p.kappa + 4)).is_zero());
  }
}

TEST_CASE("offset generation is deterministic per seed") {
  Prg a(77), b(77), c(78);
  CHECK(gen_offsets(8, a) == gen_offsets(8, b));
  Prg a2(77);
  CHECK_FALSE(gen_offsets(8, a2) == gen_offsets(8, c));
}

TEST_CASE("offset width is range checked") {
  Prg rng(1);
  CHECK_THROWS_AS(gen_offsets(0, rng), WidthError);
  CHECK_THROWS_AS(gen_offsets(9, rng), WidthError);
}

TEST_CASE("encode_value is linear with identity pointer bits") {
  Prg rng(3);
  SchemeParams p;
  auto r2 = gen_offsets(2, rng, p);
  Label zero{Block{}, 2};
  CHECK(encode_value(zero, 3, r2).bits == (r2.columns()[0] ^ r2.columns()[1]));

  auto r4 = gen_offsets(4, rng, p);
  Label w = random_label(4, rng, p.kappa);
  CHECK(encode_value(w, 0, r4) == w);
  // pointer bits shift by x
  w.bits.lo = (w.bits.lo & ~uint64_t(0xf)) | 0x3;
  CHECK(lsb(encode_value(w, 0x5, r4), 4) == 0x6);
  CHECK(lsb(Label{r4.combination(9), 4}, 4) == 9);
}

TEST_CASE("encodings are unique and XOR homomorphic") {
  Prg rng(4);
  SchemeParams p;
  for (unsigned n = 1; n <= 4; ++n) {
    auto r = gen_offsets(n, rng, p);
    Label wa = random_label(n, rng, p.kappa);
    Label wb = random_label(n, rng, p.kappa);
    std::vector<bool> seen(1u << n);
    for (uint64_t x = 0; x < (1u << n); ++x) {
      uint64_t ptr = lsb(encode_value(wa, x, r), n);
      CHECK_FALSE(seen[ptr]);
      seen[ptr] = true;
      for (uint64_t y = 0; y < (1u << n); ++y)
        CHECK((encode_value(wa, x, r) ^ encode_value(wb, y, r)) == encode_value(wa ^ wb, x ^ y, r));
    }
  }
}

TEST_CASE("labels keep zero padding above kappa + width") {
  Prg rng(5);
  SchemeParams p;
  for (unsigned n = 1; n <= 8; ++n) {
    auto r = gen_offsets(n, rng, p);
    Label w = random_label(n, rng, p.kappa);
    for (uint64_t x = 0; x < (1u << n); x += 7)
      CHECK((encode_value(w, x, r).bits & ~Block::low_mask(p.kappa + n)).is_zero());
  }
}

TEST_CASE("lsb and encode reject width errors") {
  Prg rng(6);
  auto r4 = gen_offsets(4, rng);
  Label w{Block{0xff, 0}, 8};
  CHECK(lsb(w, 8) == 0xff);
  CHECK_THROWS_AS(lsb(w, 9), WidthError);
  CHECK_THROWS_AS(encode_value(w, 1, r4), WidthError);
  CHECK_THROWS_AS(encode_value(Label{Block{}, 4}, 16, r4), WidthError);
}

TEST_CASE("scheme params must fit one block") {
  SchemeParams p;
  CHECK(p.k() == 128);
  CHECK_NOTHROW(p.validate());
  p.kappa = 128;
  CHECK_THROWS_AS(p.validate(), WidthError);
}
