#pragma once

#include <stdexcept>
#include <string>

namespace strongl {

enum class ErrorCode {
  MalformedRecord,
  EdgeLabelNotUsedTwice,
  NonSphericalEmbedding,
  PreconditionFaceTooSmall,
  NoSuchCrossing,
  NotConnected,
  Crossingless,
  StaleSite,
  ReplayError,
  SizeLimit,
  CycleFound,
  SignClash,
  SiteShapeMismatch,
  AlternationUnsatisfiable,
  CertificateInvalid,
  CaseAnalysisFailure,
  Inconclusive,
  UsageError,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised while replaying a certificate; carries the index of the failing move.
class ReplayError : public Error {
 public:
  ReplayError(std::size_t step, const std::string& what)
      : Error(ErrorCode::ReplayError, "step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace strongl
