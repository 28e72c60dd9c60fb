#include "dnsmos/error.hpp"

namespace dnsmos {

const char* err_name(Err code) {
  switch (code) {
    case Err::InvalidArgument: return "invalid_argument";
    case Err::UnsupportedFormat: return "unsupported_format";
    case Err::CorruptHeader: return "corrupt_header";
    case Err::UnsupportedRate: return "unsupported_rate";
    case Err::EmptyClip: return "empty_clip";
    case Err::WrongLength: return "wrong_length";
    case Err::ShapeMismatch: return "shape_mismatch";
    case Err::NonFiniteActivation: return "non_finite_activation";
    case Err::LengthMismatch: return "length_mismatch";
    case Err::StaleTrace: return "stale_trace";
    case Err::EmptyDataset: return "empty_dataset";
    case Err::ChecksumMismatch: return "checksum_mismatch";
    case Err::VersionMismatch: return "version_mismatch";
    case Err::ShapeTableMismatch: return "shape_table_mismatch";
    case Err::AlphaSumViolation: return "alpha_sum_violation";
    case Err::SpecShapeError: return "stage_spec_error";
    case Err::DegenerateInput: return "degenerate_input";
    case Err::MissingPrediction: return "missing_prediction";
    case Err::GroupTooSmall: return "group_too_small";
    case Err::MissingColumn: return "missing_column";
    case Err::Io: return "io_error";
    case Err::Numeric: return "numeric_failure";
  }
  return "unknown";
}

int err_exit_code(Err code) {
  switch (code) {
    case Err::InvalidArgument:
    case Err::AlphaSumViolation:
    case Err::SpecShapeError:
    case Err::LengthMismatch:
    case Err::StaleTrace:
      return 1;
    case Err::NonFiniteActivation:
    case Err::DegenerateInput:
    case Err::Numeric:
      return 3;
    default:
      return 2;
  }
}

}  // namespace dnsmos
