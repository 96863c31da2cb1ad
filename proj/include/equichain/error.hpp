#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace equichain {

enum class ErrorCode {
  CompositeModulus,
  NotASubgroup,
  IllDefined,
  NotAdmissible,
  SignedOrbit,
  NotPrimeOrder,
  NotAnAutomorphism,
  NotCoprime,
  NotFree,
  InapplicableHypothesis,
  UnknownName,
  BadParameter,
  InvalidGroup,
  InvalidComplex,
  MalformedDocument,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CompositeModulus: return "CompositeModulus";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::IllDefined: return "IllDefined";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::SignedOrbit: return "SignedOrbit";
    case ErrorCode::NotPrimeOrder: return "NotPrimeOrder";
    case ErrorCode::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NotFree: return "NotFree";
    case ErrorCode::InapplicableHypothesis: return "InapplicableHypothesis";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::InvalidComplex: return "InvalidComplex";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace equichain
