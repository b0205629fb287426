#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace amctl {

enum class ErrorCode {
  kNoSolution,
  kUnreachable,
  kInconsistentInput,
  kSingularM,
  kSingularV,
  kInvalidCutoff,
  kNotInitialized,
  kDegenerateThrust,
  kGimbalDegenerate,
  kNonFinite,
  kInvalidParams,
  kEmptySeries,
  kConfig,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace amctl
