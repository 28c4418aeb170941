#pragma once

// Framed messages. A message is the version byte followed by frames
// [type u8][length u32][payload]. All integers little-endian.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "projgc/garble.hpp"

namespace projgc::proto {

inline constexpr uint8_t kWireVersion = 1;

enum class FrameType : uint8_t {
  Header = 1,
  Tables = 2,
  GarblerInputs = 3,
  OtBitExchange = 4,
  OutputLabels = 5,
  DecodingInfo = 6,
};

std::string_view to_string(FrameType t);

struct Frame {
  FrameType type = FrameType::Header;
  std::vector<uint8_t> payload;
};

class Writer {
 public:
  void u8(uint8_t v) { buf_.push_back(v); }
  void u32(uint32_t v);
  void u64(uint64_t v);
  void bytes(std::span<const uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
  void block(const Block& b, size_t nbytes);  // low nbytes of the block
  std::vector<uint8_t>& data() { return buf_; }
  std::vector<uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<uint8_t> buf_;
};

// Throws FormatError on truncated input.
class Reader {
 public:
  explicit Reader(std::span<const uint8_t> data) : d_(data) {}
  uint8_t u8();
  uint32_t u32();
  uint64_t u64();
  std::span<const uint8_t> bytes(size_t n);
  Block block(size_t nbytes);
  bool done() const { return pos_ == d_.size(); }
  size_t remaining() const { return d_.size() - pos_; }

 private:
  std::span<const uint8_t> d_;
  size_t pos_ = 0;
};

std::vector<uint8_t> encode_message(std::span<const Frame> frames);
// Throws FormatError on a version mismatch or a truncated frame.
std::vector<Frame> decode_message(std::span<const uint8_t> bytes);
// First frame of the given type; throws FormatError when absent.
const Frame& find_frame(std::span<const Frame> frames, FrameType type);

// Rows of all projection gates, each (kappa + m) bits, packed back to back;
// one pad at the end. Size is ceil(table_bits / 8).
std::vector<uint8_t> pack_tables(const GarbledCircuit& gc);

// Header (params, topology, digest over topology and tables), Tables, DecodingInfo.
std::vector<Frame> gc_frames(const GarbledCircuit& gc, const DecodingInfo& d);
std::pair<GarbledCircuit, DecodingInfo> gc_from_frames(std::span<const Frame> frames);

std::vector<uint8_t> serialize_gc(const GarbledCircuit& gc, const DecodingInfo& d);
std::pair<GarbledCircuit, DecodingInfo> deserialize_gc(std::span<const uint8_t> bytes);

// Garbler-private encoding state, for storing next to a serialized circuit:
// [version][kappa u32][inputs u32]{owner u8, width u8, label 16}[offsets u32]{n u8, n x 16}.
std::vector<uint8_t> serialize_encoding(const EncodingInfo& e);
EncodingInfo deserialize_encoding(std::span<const uint8_t> bytes);

// Labels as [count u32] then per label [width u8][ceil((kappa + width) / 8) bytes].
Frame labels_frame(FrameType type, std::span<const Label> labels, unsigned kappa);
std::vector<Label> labels_from_frame(const Frame& f, unsigned kappa);

// Choice bits as [count u32][bits packed, bit 0 first].
Frame bits_frame(std::span<const uint8_t> bits);
std::vector<uint8_t> bits_from_frame(const Frame& f);

}  // namespace projgc::proto
