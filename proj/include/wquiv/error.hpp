#pragma once

#include <stdexcept>
#include <string>

namespace wquiv {

// Every recoverable failure in the library is reported through this type.
// `code` is a short machine-readable tag (e.g. "frozen_vertex", "two_cycle",
// "parse"); `witness` optionally names the offending objects.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message, std::string witness = {})
      : std::runtime_error(message), code_(std::move(code)), witness_(std::move(witness)) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string code_;
  std::string witness_;
};

}  // namespace wquiv
