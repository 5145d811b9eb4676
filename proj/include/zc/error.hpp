#pragma once

#include <stdexcept>
#include <string>

namespace zc {

enum class Err {
  FieldMismatch,
  DivisionByZero,
  SingularMatrix,
  NoEmbedding,
  AmbientMismatch,
  DimensionMismatch,
  NotGlued,
  OrientationError,
  EdgeLengthMismatch,
  NonSimplePolygon,
  Disconnected,
  UnpuncturedSingularity,
  OddHolonomyRank,
  GeometryMismatch,
  GluingNotPreserved,
  SubspaceNotPreserved,
  NotInKernels,
  IdentityViolated,
  ZeroClass,
  UnknownName,
  InvalidIET,
  HitSingularity,
  NotExtractable,
  ParseError,
  Internal,
};

const char* err_name(Err e);

// Domain error carrying a stable machine-readable code. The CLI maps these to
// exit status 2 with a structured JSON payload on stderr.
class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

inline const char* err_name(Err e) {
  switch (e) {
    case Err::FieldMismatch: return "FieldMismatch";
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::SingularMatrix: return "SingularMatrix";
    case Err::NoEmbedding: return "NoEmbedding";
    case Err::AmbientMismatch: return "AmbientMismatch";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::NotGlued: return "NotGlued";
    case Err::OrientationError: return "OrientationError";
    case Err::EdgeLengthMismatch: return "EdgeLengthMismatch";
    case Err::NonSimplePolygon: return "NonSimplePolygon";
    case Err::Disconnected: return "Disconnected";
    case Err::UnpuncturedSingularity: return "UnpuncturedSingularity";
    case Err::OddHolonomyRank: return "OddHolonomyRank";
    case Err::GeometryMismatch: return "GeometryMismatch";
    case Err::GluingNotPreserved: return "GluingNotPreserved";
    case Err::SubspaceNotPreserved: return "SubspaceNotPreserved";
    case Err::NotInKernels: return "NotInKernels";
    case Err::IdentityViolated: return "IdentityViolated";
    case Err::ZeroClass: return "ZeroClass";
    case Err::UnknownName: return "UnknownName";
    case Err::InvalidIET: return "InvalidIET";
    case Err::HitSingularity: return "HitSingularity";
    case Err::NotExtractable: return "NotExtractable";
    case Err::ParseError: return "ParseError";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace zc
