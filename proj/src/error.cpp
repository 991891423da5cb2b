#include "genevis/error.hpp"

namespace genevis {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoDelimiter: return "NoDelimiter";
    case ErrorCode::MissingHeader: return "MissingHeader";
    case ErrorCode::BadNumber: return "BadNumber";
    case ErrorCode::MissingValue: return "MissingValue";
    case ErrorCode::MalformedField: return "MalformedField";
    case ErrorCode::FieldCount: return "FieldCount";
    case ErrorCode::DuplicateGene: return "DuplicateGene";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::UnknownCluster: return "UnknownCluster";
    case ErrorCode::UnknownDisease: return "UnknownDisease";
    case ErrorCode::UnknownGene: return "UnknownGene";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::NotLoaded: return "NotLoaded";
    case ErrorCode::PayloadTooLarge: return "PayloadTooLarge";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::CorruptSnapshot: return "CorruptSnapshot";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::BadRequest: return "BadRequest";
  }
  return "Unknown";
}

namespace {

std::string with_location(const std::string& message, const std::optional<Location>& loc) {
  if (!loc) return message;
  std::string out = message + " (row " + std::to_string(loc->row);
  if (loc->column != 0) out += ", column " + std::to_string(loc->column);
  return out + ")";
}

}  // namespace

Error::Error(ErrorCode code, std::string message, std::optional<Location> location)
    : std::runtime_error(with_location(message, location)),
      code_(code),
      detail_(std::move(message)),
      location_(location) {}

}  // namespace genevis
