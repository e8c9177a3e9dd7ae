#ifndef MOTIONALPHA_ERROR_HPP
#define MOTIONALPHA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace motionalpha {

enum class ErrorKind {
  Validation,
  BoundaryAngle,
  NotFinite,
  OutOfDomain,
  CoverGap,
  Disagreement,
  Io,
};

/// Exception carrying a machine-readable kind; the CLI maps kinds to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Exit codes: 0 success, 2 validation, 3 cover gap / decoder disagreement, 4 I/O.
[[nodiscard]] inline int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::CoverGap:
    case ErrorKind::Disagreement:
      return 3;
    case ErrorKind::Io:
      return 4;
    default:
      return 2;
  }
}

namespace detail {

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace detail
}  // namespace motionalpha

#endif  // MOTIONALPHA_ERROR_HPP
