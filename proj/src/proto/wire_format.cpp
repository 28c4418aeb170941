#include "projgc/proto/wire_format.hpp"

#include <algorithm>

#include "projgc/error.hpp"

namespace projgc::proto {

std::string_view to_string(FrameType t) {
  switch (t) {
    case FrameType::Header: return "Header";
    case FrameType::Tables: return "Tables";
    case FrameType::GarblerInputs: return "GarblerInputs";
    case FrameType::OtBitExchange: return "OtBitExchange";
    case FrameType::OutputLabels: return "OutputLabels";
    case FrameType::DecodingInfo: return "DecodingInfo";
  }
  return "?";
}

void Writer::u32(uint32_t v) {
  for (int i = 0; i < 4; ++i) buf_.push_back(uint8_t(v >> (8 * i)));
}

void Writer::u64(uint64_t v) {
  for (int i = 0; i < 8; ++i) buf_.push_back(uint8_t(v >> (8 * i)));
}

void Writer::block(const Block& b, size_t nbytes) {
  auto bytes = b.to_bytes();
  buf_.insert(buf_.end(), bytes.begin(), bytes.begin() + std::ptrdiff_t(nbytes));
}

std::span<const uint8_t> Reader::bytes(size_t n) {
  if (n > remaining()) throw FormatError("truncated frame");
  auto s = d_.subspan(pos_, n);
  pos_ += n;
  return s;
}

uint8_t Reader::u8() { return bytes(1)[0]; }

uint32_t Reader::u32() {
  auto b = bytes(4);
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

uint64_t Reader::u64() {
  auto b = bytes(8);
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

Block Reader::block(size_t nbytes) {
  uint8_t tmp[16] = {};
  auto b = bytes(nbytes);
  std::copy(b.begin(), b.end(), tmp);
  return Block::from_bytes(tmp);
}

std::vector<uint8_t> encode_message(std::span<const Frame> frames) {
  Writer w;
  w.u8(kWireVersion);
  for (const auto& f : frames) {
    w.u8(uint8_t(f.type));
    w.u32(uint32_t(f.payload.size()));
    w.bytes(f.payload);
  }
  return w.take();
}

std::vector<Frame> decode_message(std::span<const uint8_t> bytes) {
  Reader r(bytes);
  if (bytes.empty()) throw FormatError("empty message");
  uint8_t v = r.u8();
  if (v != kWireVersion)
    throw FormatError("wire version " + std::to_string(v) + ", expected " + std::to_string(kWireVersion));
  std::vector<Frame> out;
  while (!r.done()) {
    Frame f;
    uint8_t t = r.u8();
    if (t < 1 || t > 6) throw FormatError("unknown frame type " + std::to_string(t));
    f.type = FrameType(t);
    uint32_t len = r.u32();
    auto p = r.bytes(len);
    f.payload.assign(p.begin(), p.end());
    out.push_back(std::move(f));
  }
  return out;
}

const Frame& find_frame(std::span<const Frame> frames, FrameType type) {
  for (const auto& f : frames)
    if (f.type == type) return f;
  throw FormatError("missing " + std::string(to_string(type)) + " frame");
}

namespace {

class BitPacker {
 public:
  void put(const Block& b, unsigned bits) {
    for (unsigned i = 0; i < bits; ++i) {
      if (used_ % 8 == 0) out_.push_back(0);
      if (b.bit(i)) out_.back() |= uint8_t(1u << (used_ % 8));
      ++used_;
    }
  }
  std::vector<uint8_t> take() { return std::move(out_); }

 private:
  std::vector<uint8_t> out_;
  uint64_t used_ = 0;
};

class BitUnpacker {
 public:
  explicit BitUnpacker(std::span<const uint8_t> in) : in_(in) {}
  Block get(unsigned bits) {
    Block b;
    for (unsigned i = 0; i < bits; ++i, ++pos_) {
      if (pos_ / 8 >= in_.size()) throw FormatError("truncated table payload");
      if ((in_[pos_ / 8] >> (pos_ % 8)) & 1) b.set_bit(i, true);
    }
    return b;
  }
  uint64_t consumed_bytes() const { return (pos_ + 7) / 8; }

 private:
  std::span<const uint8_t> in_;
  uint64_t pos_ = 0;
};

void write_topology(Writer& w, const GarbledCircuit& gc) {
  const Topology& t = gc.topology;
  w.u32(gc.kappa);
  w.u32(gc.nbar);
  w.u32(uint32_t(t.widths.size()));
  w.bytes(t.widths);
  w.u32(uint32_t(t.gates.size()));
  for (const auto& g : t.gates) {
    w.u8(uint8_t(g.kind));
    w.u32(g.out);
    w.u32(g.a);
    w.u32(g.b);
    w.u8(g.width);
  }
  w.u32(uint32_t(t.inputs.size()));
  for (const auto& in : t.inputs) {
    w.u32(in.wire);
    w.u8(uint8_t(in.owner));
  }
  w.u32(uint32_t(t.outputs.size()));
  for (WireId o : t.outputs) w.u32(o);
}

GarbledCircuit read_topology(Reader& r) {
  GarbledCircuit gc;
  gc.kappa = r.u32();
  gc.nbar = r.u32();
  if (gc.kappa == 0 || gc.kappa + gc.nbar > 128 || gc.nbar == 0 || gc.nbar > kMaxWidth)
    throw FormatError("bad scheme parameters in header");
  Topology& t = gc.topology;
  uint32_t nw = r.u32();
  auto wb = r.bytes(nw);
  t.widths.assign(wb.begin(), wb.end());
  for (auto w : t.widths)
    if (w == 0 || w > gc.nbar) throw FormatError("wire width out of range");
  uint32_t ng = r.u32();
  if (ng > r.remaining() / 14) throw FormatError("truncated frame");
  t.gates.resize(ng);
  for (auto& g : t.gates) {
    uint8_t k = r.u8();
    if (k > uint8_t(GateKind::Const)) throw FormatError("bad gate kind");
    g.kind = GateKind(k);
    g.out = r.u32();
    g.a = r.u32();
    g.b = r.u32();
    g.width = r.u8();
    if (g.out >= nw || g.a >= nw || g.b >= nw) throw FormatError("gate wire out of range");
  }
  uint32_t ni = r.u32();
  if (ni > r.remaining() / 5) throw FormatError("truncated frame");
  t.inputs.resize(ni);
  for (auto& in : t.inputs) {
    in.wire = r.u32();
    uint8_t o = r.u8();
    if (in.wire >= nw || o > 1) throw FormatError("bad input record");
    in.owner = Party(o);
  }
  uint32_t no = r.u32();
  if (no > r.remaining() / 4) throw FormatError("truncated frame");
  t.outputs.resize(no);
  for (auto& o : t.outputs) {
    o = r.u32();
    if (o >= nw) throw FormatError("output wire out of range");
  }
  return gc;
}

void write_decoding(Writer& w, const DecodingInfo& d) {
  w.u8(uint8_t(d.mode));
  w.u32(uint32_t(d.wires.size()));
  for (size_t i = 0; i < d.wires.size(); ++i) {
    w.u32(d.wires[i]);
    w.u8(d.widths[i]);
    if (d.mode == DecodingInfo::Mode::Plain) {
      w.u64(d.d[i]);
    } else {
      for (const auto& [dig, v] : d.auth[i]) {
        w.block(dig, 16);
        w.u64(v);
      }
    }
  }
}

DecodingInfo read_decoding(Reader& r) {
  DecodingInfo d;
  uint8_t m = r.u8();
  if (m > 1) throw FormatError("bad decoding mode");
  d.mode = DecodingInfo::Mode(m);
  uint32_t n = r.u32();
  if (n > r.remaining() / 5) throw FormatError("truncated frame");
  for (uint32_t i = 0; i < n; ++i) {
    d.wires.push_back(r.u32());
    uint8_t width = r.u8();
    if (width == 0 || width > kMaxWidth) throw FormatError("bad output width");
    d.widths.push_back(width);
    if (d.mode == DecodingInfo::Mode::Plain) {
      d.d.push_back(r.u64());
    } else {
      std::vector<std::pair<Block, uint64_t>> list(size_t(1) << width);
      for (auto& e : list) {
        e.first = r.block(16);
        e.second = r.u64();
      }
      d.auth.push_back(std::move(list));
    }
  }
  return d;
}

size_t label_bytes(unsigned kappa, unsigned width) { return (kappa + width + 7) / 8; }

}  // namespace

std::vector<uint8_t> pack_tables(const GarbledCircuit& gc) {
  BitPacker p;
  const auto& t = gc.topology;
  for (size_t i = 0; i < t.gates.size(); ++i) {
    const auto& g = t.gates[i];
    if (g.kind != GateKind::Proj) continue;
    const size_t rows = (size_t(1) << t.widths[g.a]) - 1;
    for (size_t j = 0; j < rows; ++j) p.put(gc.rows[gc.row_offset[i] + j], gc.kappa + g.width);
  }
  return p.take();
}

std::vector<Frame> gc_frames(const GarbledCircuit& gc, const DecodingInfo& d) {
  Writer hw;
  write_topology(hw, gc);
  std::vector<uint8_t> tables = pack_tables(gc);
  std::vector<uint8_t> covered = hw.data();
  covered.insert(covered.end(), tables.begin(), tables.end());
  hw.block(default_hash().digest(covered), 16);

  Writer dw;
  write_decoding(dw, d);
  return {Frame{FrameType::Header, hw.take()}, Frame{FrameType::Tables, std::move(tables)},
          Frame{FrameType::DecodingInfo, dw.take()}};
}

std::pair<GarbledCircuit, DecodingInfo> gc_from_frames(std::span<const Frame> frames) {
  const Frame& hf = find_frame(frames, FrameType::Header);
  const Frame& tf = find_frame(frames, FrameType::Tables);
  if (hf.payload.size() < 16) throw FormatError("truncated frame");
  Reader hr(std::span(hf.payload).first(hf.payload.size() - 16));
  GarbledCircuit gc = read_topology(hr);
  if (!hr.done()) throw FormatError("trailing bytes in header");

  std::vector<uint8_t> covered(hf.payload.begin(), hf.payload.end() - 16);
  covered.insert(covered.end(), tf.payload.begin(), tf.payload.end());
  Block want = Block::from_bytes(hf.payload.data() + hf.payload.size() - 16);
  if (default_hash().digest(covered) != want) throw FormatError("circuit digest mismatch");

  const auto& t = gc.topology;
  gc.row_offset.assign(t.gates.size(), 0);
  BitUnpacker u(tf.payload);
  for (size_t i = 0; i < t.gates.size(); ++i) {
    const auto& g = t.gates[i];
    gc.row_offset[i] = uint32_t(gc.rows.size());
    if (g.kind != GateKind::Proj) continue;
    const size_t rows = (size_t(1) << t.widths[g.a]) - 1;
    for (size_t j = 0; j < rows; ++j) gc.rows.push_back(u.get(gc.kappa + g.width));
  }
  if (u.consumed_bytes() != tf.payload.size()) throw FormatError("table payload size mismatch");

  Reader dr(find_frame(frames, FrameType::DecodingInfo).payload);
  DecodingInfo d = read_decoding(dr);
  if (!dr.done()) throw FormatError("trailing bytes in decoding info");
  return {std::move(gc), std::move(d)};
}

std::vector<uint8_t> serialize_gc(const GarbledCircuit& gc, const DecodingInfo& d) {
  return encode_message(gc_frames(gc, d));
}

std::pair<GarbledCircuit, DecodingInfo> deserialize_gc(std::span<const uint8_t> bytes) {
  return gc_from_frames(decode_message(bytes));
}

std::vector<uint8_t> serialize_encoding(const EncodingInfo& e) {
  Writer w;
  w.u8(kWireVersion);
  w.u32(e.kappa);
  w.u32(uint32_t(e.zero_labels.size()));
  for (size_t i = 0; i < e.zero_labels.size(); ++i) {
    w.u8(uint8_t(e.owners.at(i)));
    w.u8(uint8_t(e.zero_labels[i].width));
    w.block(e.zero_labels[i].bits, 16);
  }
  w.u32(uint32_t(e.offsets.size()));
  for (const auto& r : e.offsets) {
    w.u8(uint8_t(r.n()));
    for (const auto& col : r.columns()) w.block(col, 16);
  }
  return w.take();
}

EncodingInfo deserialize_encoding(std::span<const uint8_t> bytes) {
  Reader r(bytes);
  if (r.u8() != kWireVersion) throw FormatError("unsupported wire version");
  EncodingInfo e;
  e.kappa = r.u32();
  uint32_t n = r.u32();
  if (n > r.remaining()) throw FormatError("truncated frame");
  for (uint32_t i = 0; i < n; ++i) {
    uint8_t owner = r.u8();
    if (owner > 1) throw FormatError("bad input owner");
    e.owners.push_back(Party(owner));
    unsigned width = r.u8();
    e.zero_labels.push_back({r.block(16), width});
  }
  uint32_t m = r.u32();
  for (uint32_t i = 0; i < m; ++i) {
    unsigned cols = r.u8();
    if (cols != i + 1) throw FormatError("offset matrices out of order");
    std::vector<Block> c;
    for (unsigned j = 0; j < cols; ++j) c.push_back(r.block(16));
    e.offsets.emplace_back(cols, e.kappa, std::move(c));
  }
  if (!r.done()) throw FormatError("trailing bytes in encoding");
  return e;
}

Frame labels_frame(FrameType type, std::span<const Label> labels, unsigned kappa) {
  Writer w;
  w.u32(uint32_t(labels.size()));
  for (const auto& l : labels) {
    w.u8(uint8_t(l.width));
    w.block(l.bits, label_bytes(kappa, l.width));
  }
  return {type, w.take()};
}

std::vector<Label> labels_from_frame(const Frame& f, unsigned kappa) {
  Reader r(f.payload);
  uint32_t n = r.u32();
  if (n > r.remaining()) throw FormatError("truncated frame");
  std::vector<Label> out(n);
  for (auto& l : out) {
    l.width = r.u8();
    if (l.width == 0 || kappa + l.width > 128) throw FormatError("bad label width");
    l.bits = r.block(label_bytes(kappa, l.width)) & Block::low_mask(kappa + l.width);
  }
  if (!r.done()) throw FormatError("trailing bytes in label frame");
  return out;
}

Frame bits_frame(std::span<const uint8_t> bits) {
  Writer w;
  w.u32(uint32_t(bits.size()));
  std::vector<uint8_t> packed((bits.size() + 7) / 8, 0);
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) packed[i / 8] |= uint8_t(1u << (i % 8));
  w.bytes(packed);
  return {FrameType::OtBitExchange, w.take()};
}

std::vector<uint8_t> bits_from_frame(const Frame& f) {
  Reader r(f.payload);
  uint32_t n = r.u32();
  auto packed = r.bytes((size_t(n) + 7) / 8);
  std::vector<uint8_t> bits(n);
  for (size_t i = 0; i < n; ++i) bits[i] = (packed[i / 8] >> (i % 8)) & 1;
  if (!r.done()) throw FormatError("trailing bytes in bit frame");
  return bits;
}

}  // namespace projgc::proto
