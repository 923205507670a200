#pragma once

#include <stdexcept>
#include <string>

namespace torweight {

// Input errors map to CLI exit code 1, internal ones to exit code 2.
enum class ErrorClass { input, internal };

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message,
        ErrorClass cls = ErrorClass::input)
      : std::runtime_error(message), code_(std::move(code)), class_(cls) {}

  const std::string& code() const noexcept { return code_; }
  ErrorClass error_class() const noexcept { return class_; }

 private:
  std::string code_;
  ErrorClass class_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
  throw Error(code, message, ErrorClass::input);
}

[[noreturn]] inline void internal_fail(const std::string& code,
                                       const std::string& message) {
  throw Error(code, message, ErrorClass::internal);
}

}  // namespace torweight
