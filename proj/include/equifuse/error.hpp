#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace equifuse
{

enum class ErrorCode
{
  DegreeMismatch,
  OrderCapExceeded,
  ElementNotInGroup,
  NotASubgroup,
  NotInSameOrbit,
  GroupMismatch,
  NotInSpan,
  EigenbasisFailure,
  SubgroupMismatch,
  NotAClassFunction,
  NoRingStructure,
  InvariantViolation,
  UnknownPreset,
  InvalidInput,
  InternalError,
};

inline std::string_view to_string(ErrorCode code)
{
  switch (code) {
  case ErrorCode::DegreeMismatch: return "DegreeMismatch";
  case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
  case ErrorCode::ElementNotInGroup: return "ElementNotInGroup";
  case ErrorCode::NotASubgroup: return "NotASubgroup";
  case ErrorCode::NotInSameOrbit: return "NotInSameOrbit";
  case ErrorCode::GroupMismatch: return "GroupMismatch";
  case ErrorCode::NotInSpan: return "NotInSpan";
  case ErrorCode::EigenbasisFailure: return "EigenbasisFailure";
  case ErrorCode::SubgroupMismatch: return "SubgroupMismatch";
  case ErrorCode::NotAClassFunction: return "NotAClassFunction";
  case ErrorCode::NoRingStructure: return "NoRingStructure";
  case ErrorCode::InvariantViolation: return "InvariantViolation";
  case ErrorCode::UnknownPreset: return "UnknownPreset";
  case ErrorCode::InvalidInput: return "InvalidInput";
  case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string &message)
  : std::runtime_error(std::string(to_string(code)) + ": " + message),
    code_(code)
  {}

  ErrorCode code() const noexcept
  { return code_; }

private:
  ErrorCode code_;
};

} // namespace equifuse
