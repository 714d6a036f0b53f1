#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ese {

enum class ErrorKind {
  invalid_argument,
  non_positive_field,
  non_positive_time,
  beta_zero,
  window_too_small,
  invalid_c,
  past_blowup,
  insufficient_samples,
  threshold_never_met,
  unknown_preset,
  out_of_window,
  non_monotone_time,
  not_blowup,
  io,
};

std::string_view to_string(ErrorKind kind);

/// Error raised by every operation in the library. `kind()` identifies the
/// failed precondition so callers can map it to an exit code or a report.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ese
