#pragma once

#include <stdexcept>
#include <string>

namespace projgc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Wire width out of range or inconsistent between operands.
struct WidthError : Error {
  using Error::Error;
};

// Malformed circuit: forward references, bad tables, duplicate wires.
struct CircuitError : Error {
  using Error::Error;
};

// Malformed serialized data: bad version, digest, or truncated frame.
struct FormatError : Error {
  using Error::Error;
};

// Session-level failure in the two-party runner.
struct ProtocolError : Error {
  using Error::Error;
};

}  // namespace projgc
