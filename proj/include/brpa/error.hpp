#ifndef BRPA_ERROR_HPP_
#define BRPA_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace brpa {

// Numeric values match brpa_status in brpa.h.
enum class ErrorCode {
  kInvalidArgument = 1,
  kUnsupportedMethod = 2,
  kResourceLimit = 3,
  kConfigError = 4,
  kIoError = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, std::string_view message) {
  throw Error(code, std::string(message));
}

inline void require(bool condition, std::string_view message) {
  if (!condition) fail(ErrorCode::kInvalidArgument, message);
}

}  // namespace brpa

#endif  // BRPA_ERROR_HPP_
