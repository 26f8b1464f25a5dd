#include "parlmine/error.hpp"

namespace parlmine {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedXml: return "MalformedXml";
    case Errc::WrongRootElement: return "WrongRootElement";
    case Errc::NoDateFormats: return "NoDateFormats";
    case Errc::SinkFailure: return "SinkFailure";
    case Errc::MalformedXes: return "MalformedXes";
    case Errc::BadWindow: return "BadWindow";
    case Errc::InvalidPattern: return "InvalidPattern";
    case Errc::NoTimestampedEvents: return "NoTimestampedEvents";
    case Errc::EmptyLog: return "EmptyLog";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::EmptySample: return "EmptySample";
    case Errc::InsufficientOverlap: return "InsufficientOverlap";
    case Errc::DuplicateSidecarKey: return "DuplicateSidecarKey";
    case Errc::NonPositiveMean: return "NonPositiveMean";
    case Errc::UnknownCase: return "UnknownCase";
    case Errc::EmptyTable: return "EmptyTable";
    case Errc::SingleClassTrain: return "SingleClassTrain";
    case Errc::AllFeaturesHidden: return "AllFeaturesHidden";
    case Errc::UnlabeledTable: return "UnlabeledTable";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::LastCondition: return "LastCondition";
    case Errc::BadIndex: return "BadIndex";
    case Errc::EmptySeries: return "EmptySeries";
    case Errc::MalformedCsv: return "MalformedCsv";
    case Errc::BadConfig: return "BadConfig";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string decorate(Errc code, const std::string& message, const std::optional<SourcePosition>& where) {
  std::string out(errc_name(code));
  out += ": ";
  out += message;
  if (where && where->line > 0) {
    out += " (line " + std::to_string(where->line) + ", column " + std::to_string(where->column) + ")";
  } else if (where) {
    out += " (at offset " + std::to_string(where->offset) + ")";
  }
  return out;
}

}  // namespace

Error::Error(Errc code, const std::string& message, std::optional<SourcePosition> where)
    : std::runtime_error(decorate(code, message, where)), code_(code), message_(message), where_(where) {}

}  // namespace parlmine
