#ifndef MLBC_ERRORS_HPP
#define MLBC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mlbc {

enum class ErrorCode {
    invalid_argument = 1,
    parse_error = 2,
    io_error = 3,
    size_guard = 4,
    numeric_failure = 5,
    unsupported = 6,
};

/// Library-wide exception type; carries a coarse error class so the C API
/// and the CLI can map failures to stable status/exit codes.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace mlbc

#endif
