#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xlog {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Invalid parameter values: bad round counts, tag widths, capacities, grids.
class ConfigError : public Error {
  public:
    using Error::Error;
};

// Structurally inconsistent values: mismatched tag widths, unequal sequence
// lengths, records routed to nonexistent lines.
class StructError : public Error {
  public:
    using Error::Error;
};

// Malformed serialized input. Carries the byte offset of the failure.
class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const { return offset_; }

  private:
    std::size_t offset_;
};

// Semantically inadmissible input: unsorted traces, degenerate samples.
class InputError : public Error {
  public:
    using Error::Error;
};

// Event does not fit the schema table (unknown syscall, oversized field).
class SchemaError : public Error {
  public:
    using Error::Error;
};

// Fieller radicand went negative; the symmetric interval does not exist.
class InvalidIntervalError : public Error {
  public:
    using Error::Error;
};

}  // namespace xlog
