#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace morphsyn {

// Stable error identities. The CLI prints errc_name() on stderr, so these
// names are part of the external contract.
enum class Errc {
  wrong_length,
  cardinality_mismatch,
  scale_mismatch,
  empty_input,
  overflow,
  parse_error,
  schema_error,
  unknown_reference,
  estimate_error,
  duplicate_id,
  incomplete_selection,
  empty_alternatives,
  infeasible,
  empty_group,
  unknown_target,
  component_mismatch,
  missing_candidate,
};

inline std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::wrong_length: return "WrongLength";
    case Errc::cardinality_mismatch: return "CardinalityMismatch";
    case Errc::scale_mismatch: return "ScaleMismatch";
    case Errc::empty_input: return "EmptyInput";
    case Errc::overflow: return "Overflow";
    case Errc::parse_error: return "ParseError";
    case Errc::schema_error: return "SchemaError";
    case Errc::unknown_reference: return "UnknownReference";
    case Errc::estimate_error: return "EstimateError";
    case Errc::duplicate_id: return "DuplicateId";
    case Errc::incomplete_selection: return "IncompleteSelection";
    case Errc::empty_alternatives: return "EmptyAlternatives";
    case Errc::infeasible: return "Infeasible";
    case Errc::empty_group: return "EmptyGroup";
    case Errc::unknown_target: return "UnknownTarget";
    case Errc::component_mismatch: return "ComponentMismatch";
    case Errc::missing_candidate: return "MissingCandidate";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace morphsyn
