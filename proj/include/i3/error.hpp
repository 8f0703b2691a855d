#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace i3 {

enum class ErrorCode {
  io,
  schema,
  validation,
  duplicate_key,
  configuration,
  domain,
  undefined_indicator,
  usage,
  not_found,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported as i3::Error; the code survives the C API boundary.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Collects non-fatal warnings (discarded records, small reference sets, ...).
class Diagnostics {
 public:
  void warn(std::string message) { messages_.push_back(std::move(message)); }
  const std::vector<std::string>& messages() const { return messages_; }
  bool empty() const { return messages_.empty(); }

 private:
  std::vector<std::string> messages_;
};

}  // namespace i3
