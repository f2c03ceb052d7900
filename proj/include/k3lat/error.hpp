#pragma once

#include <stdexcept>
#include <string>

namespace k3lat {

/// Domain error raised when an input violates a mathematical precondition.
/// The code is a stable machine-readable identifier; the CLI reports it verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace k3lat
