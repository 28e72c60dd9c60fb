#pragma once

#include <stdexcept>
#include <string>

namespace dnsmos {

enum class Err {
  InvalidArgument,
  UnsupportedFormat,
  CorruptHeader,
  UnsupportedRate,
  EmptyClip,
  WrongLength,
  ShapeMismatch,
  NonFiniteActivation,
  LengthMismatch,
  StaleTrace,
  EmptyDataset,
  ChecksumMismatch,
  VersionMismatch,
  ShapeTableMismatch,
  AlphaSumViolation,
  SpecShapeError,
  DegenerateInput,
  MissingPrediction,
  GroupTooSmall,
  MissingColumn,
  Io,
  Numeric,
};

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

// Machine-readable snake_case name, used by the HTTP service and CLI messages.
const char* err_name(Err code);

// Process exit code: 1 usage, 2 data, 3 numeric.
int err_exit_code(Err code);

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

}  // namespace dnsmos
