#pragma once

#include <stdexcept>
#include <string>

namespace krawlp {

enum class ErrorCode {
  InvalidInput,
  NotAConfig,
  NotLinear,
  Capacity,
  Resource,
  Domain,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

/// Exception type for every recoverable failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace krawlp
