#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace curvedet {

// Failure with a stable machine-readable code ("pole-at-divisor", ...) plus context.
class error : public std::runtime_error {
 public:
  error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& detail) {
  throw error(code, detail);
}

inline void require(bool ok, const std::string& code, const std::string& detail) {
  if (!ok) fail(code, detail);
}

}  // namespace curvedet
