#include "projgc/label.hpp"

#include <cstdio>

#include "projgc/error.hpp"

namespace projgc {

std::string Block::hex() const {
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return buf;
}

void SchemeParams::validate() const {
  if (nbar == 0 || nbar > 16) throw WidthError("nbar must be in 1..16");
  if (kappa == 0 || kappa + nbar > 128)
    throw WidthError("kappa + nbar must fit a 128-bit block");
}

Label Label::operator^(const Label& o) const {
  if (width != o.width) throw WidthError("xor of labels with different widths");
  return {bits ^ o.bits, width};
}

OffsetMatrix::OffsetMatrix(unsigned n, unsigned kappa, std::vector<Block> columns)
    : n_(n), kappa_(kappa), columns_(std::move(columns)) {
  if (n_ == 0 || columns_.size() != n_) throw WidthError("offset matrix shape");
  combos_.assign(size_t(1) << n_, Block{});
  for (size_t x = 1; x < combos_.size(); ++x) {
    unsigned low = unsigned(__builtin_ctzll(x));
    combos_[x] = combos_[x & (x - 1)] ^ columns_[low];
  }
}

OffsetMatrix gen_offsets(unsigned n, Prg& rng, const SchemeParams& params) {
  if (n == 0 || n > params.nbar) throw WidthError("offset width out of range");
  const Block top = Block::low_mask(params.kappa + n) ^ Block::low_mask(n);
  std::vector<Block> cols;
  cols.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    Block r = rng.next_block();
    // Shift the random bits above the identity block.
    Block shifted{r.lo << n, (r.hi << n) | (r.lo >> (64 - n))};
    Block c = shifted & top;
    c.set_bit(i, true);
    cols.push_back(c);
  }
  return OffsetMatrix(n, params.kappa, std::move(cols));
}

Label random_label(unsigned width, Prg& rng, unsigned kappa) {
  return {rng.next_block() & Block::low_mask(kappa + width), width};
}

Label encode_value(const Label& zero_label, uint64_t x, const OffsetMatrix& r) {
  if (zero_label.width != r.n()) throw WidthError("label width does not match offset matrix");
  if (r.n() < 64 && (x >> r.n()) != 0) throw WidthError("value exceeds wire width");
  return {zero_label.bits ^ r.combination(x), zero_label.width};
}

uint64_t lsb(const Label& label, unsigned n) {
  if (n == 0 || n > label.width) throw WidthError("lsb width exceeds label width");
  return lsb_bits(label.bits, n);
}

}  // namespace projgc
