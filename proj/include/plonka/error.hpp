#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plonka {

enum class ErrorKind {
  InvalidArgument,
  SignatureMismatch,
  ConstantInSignature,
  NotACongruence,
  NotRefinement,
  NotAHomomorphism,
  NotClosed,
  ParseError,
  ArityError,
  NotALnb,
  IterateMismatch,
  TargetNotASemilatticeBand,
  NotAPlonkaAlgebra,
  NotAPlonkaMorphism,
  CarrierTooLarge,
  InvalidSystem,
  InvalidMorphism,
  CompositionMismatch,
  NotResiduated,
  TargetMismatch,
  EmptyFiber,
  SearchSpaceTooLarge,
  ValidationError,
  Internal,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SignatureMismatch: return "SignatureMismatch";
    case ErrorKind::ConstantInSignature: return "ConstantInSignature";
    case ErrorKind::NotACongruence: return "NotACongruence";
    case ErrorKind::NotRefinement: return "NotRefinement";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ArityError: return "ArityError";
    case ErrorKind::NotALnb: return "NotALnb";
    case ErrorKind::IterateMismatch: return "IterateMismatch";
    case ErrorKind::TargetNotASemilatticeBand: return "TargetNotASemilatticeBand";
    case ErrorKind::NotAPlonkaAlgebra: return "NotAPlonkaAlgebra";
    case ErrorKind::NotAPlonkaMorphism: return "NotAPlonkaMorphism";
    case ErrorKind::CarrierTooLarge: return "CarrierTooLarge";
    case ErrorKind::InvalidSystem: return "InvalidSystem";
    case ErrorKind::InvalidMorphism: return "InvalidMorphism";
    case ErrorKind::CompositionMismatch: return "CompositionMismatch";
    case ErrorKind::NotResiduated: return "NotResiduated";
    case ErrorKind::TargetMismatch: return "TargetMismatch";
    case ErrorKind::EmptyFiber: return "EmptyFiber";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace plonka
