#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace genevis {

enum class ErrorCode {
  NoDelimiter,
  MissingHeader,
  BadNumber,
  MissingValue,
  MalformedField,
  FieldCount,
  DuplicateGene,
  EmptyDataset,
  BadParameter,
  UnknownCluster,
  UnknownDisease,
  UnknownGene,
  UnknownSession,
  NotLoaded,
  PayloadTooLarge,
  IoError,
  CorruptSnapshot,
  VersionMismatch,
  BadRequest,
};

/// Stable wire name of an error code, e.g. "MissingHeader".
std::string_view error_code_name(ErrorCode code);

/// 1-based row (file line) and column (field) of a parse error.
struct Location {
  std::size_t row = 0;
  std::size_t column = 0;

  friend bool operator==(const Location&, const Location&) = default;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::optional<Location> location = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<Location>& location() const noexcept { return location_; }
  /// The message without the location suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<Location> location_;
};

}  // namespace genevis
