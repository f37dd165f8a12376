#pragma once

#include <stdexcept>
#include <string>

namespace autorank {

/// Library error carrying a short machine-readable code ("empty-word",
/// "ambiguous-pair", "parse", ...) next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace autorank
