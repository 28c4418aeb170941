#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "projgc/block.hpp"
#include "projgc/prg.hpp"

namespace projgc {

struct SchemeParams {
  unsigned kappa = 120;
  unsigned nbar = 8;
  std::optional<uint64_t> seed;

  unsigned k() const { return kappa + nbar; }
  // Garbling needs labels to fit one 128-bit permutation block.
  void validate() const;
};

// A k-bit label of an l-bit wire. Bits at positions >= kappa + width are zero.
struct Label {
  Block bits;
  unsigned width = 0;

  bool operator==(const Label&) const = default;
  Label operator^(const Label& o) const;
};

// R_n: n columns of kappa + n bits. Column i has bit i set in the bottom block.
class OffsetMatrix {
 public:
  OffsetMatrix() = default;
  OffsetMatrix(unsigned n, unsigned kappa, std::vector<Block> columns);

  unsigned n() const { return n_; }
  unsigned kappa() const { return kappa_; }
  const std::vector<Block>& columns() const { return columns_; }
  // x . R_n, x < 2^n.
  const Block& combination(uint64_t x) const { return combos_[x]; }

  bool operator==(const OffsetMatrix& o) const { return n_ == o.n_ && columns_ == o.columns_; }

 private:
  unsigned n_ = 0;
  unsigned kappa_ = 0;
  std::vector<Block> columns_;
  std::vector<Block> combos_;
};

OffsetMatrix gen_offsets(unsigned n, Prg& rng, const SchemeParams& params = {});

// Uniform label of the given width: kappa + width random bits.
Label random_label(unsigned width, Prg& rng, unsigned kappa);

Label encode_value(const Label& zero_label, uint64_t x, const OffsetMatrix& r);

uint64_t lsb(const Label& label, unsigned n);

inline uint64_t lsb_bits(const Block& b, unsigned n) {
  return b.lo & (n >= 64 ? ~uint64_t(0) : ((uint64_t(1) << n) - 1));
}

}  // namespace projgc
