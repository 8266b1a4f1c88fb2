#pragma once

#include <stdexcept>
#include <string>

namespace cellmatch {

/// Coarse failure classes. The CLI maps these onto its exit codes.
enum class ErrorKind {
  invalid_input,  ///< malformed data, dangling ids, bad parameters
  precondition,   ///< well-formed input that violates an operation's hypothesis
  internal,       ///< a guaranteed property failed; indicates inconsistent input or a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error invalid_input(const std::string& what) {
  return Error(ErrorKind::invalid_input, what);
}
inline Error precondition_failed(const std::string& what) {
  return Error(ErrorKind::precondition, what);
}
inline Error internal_failure(const std::string& what) {
  return Error(ErrorKind::internal, what);
}

}  // namespace cellmatch
