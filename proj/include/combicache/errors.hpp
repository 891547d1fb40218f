#pragma once

#include <stdexcept>
#include <string>

namespace combicache {

/// Invalid (H, r, N, g, t, q, ...) combination or out-of-range id.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive enumeration would exceed the configured cap.
class EnumerationCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Misuse of the erasure codec (length mismatch, too few symbols, ...).
class CodecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace combicache
