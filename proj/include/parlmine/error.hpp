#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace parlmine {

enum class Errc {
  MalformedXml,
  WrongRootElement,
  NoDateFormats,
  SinkFailure,
  MalformedXes,
  BadWindow,
  InvalidPattern,
  NoTimestampedEvents,
  EmptyLog,
  LengthMismatch,
  DegenerateInput,
  EmptySample,
  InsufficientOverlap,
  DuplicateSidecarKey,
  NonPositiveMean,
  UnknownCase,
  EmptyTable,
  SingleClassTrain,
  AllFeaturesHidden,
  UnlabeledTable,
  SyntaxError,
  LastCondition,
  BadIndex,
  EmptySeries,
  MalformedCsv,
  BadConfig,
  Io,
};

std::string_view errc_name(Errc code) noexcept;

// Source position attached to parse errors. Line/column are 1-based;
// offset is a 0-based byte offset into the parsed text.
struct SourcePosition {
  std::size_t line = 0;
  std::size_t column = 0;
  std::size_t offset = 0;
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::optional<SourcePosition> where = std::nullopt);

  Errc code() const noexcept { return code_; }
  // Message without the error-kind prefix and position suffix.
  const std::string& message() const noexcept { return message_; }
  const std::optional<SourcePosition>& where() const noexcept { return where_; }

 private:
  Errc code_;
  std::string message_;
  std::optional<SourcePosition> where_;
};

}  // namespace parlmine
