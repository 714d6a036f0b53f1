#include "ese/error.hpp"

namespace ese {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::non_positive_field: return "NonPositiveField";
    case ErrorKind::non_positive_time: return "NonPositiveTime";
    case ErrorKind::beta_zero: return "BetaZero";
    case ErrorKind::window_too_small: return "WindowTooSmall";
    case ErrorKind::invalid_c: return "InvalidC";
    case ErrorKind::past_blowup: return "PastBlowup";
    case ErrorKind::insufficient_samples: return "InsufficientSamples";
    case ErrorKind::threshold_never_met: return "ThresholdNeverMet";
    case ErrorKind::unknown_preset: return "UnknownPreset";
    case ErrorKind::out_of_window: return "OutOfWindow";
    case ErrorKind::non_monotone_time: return "NonMonotoneTime";
    case ErrorKind::not_blowup: return "NotBlowup";
    case ErrorKind::io: return "IoError";
  }
  return "Unknown";
}

}  // namespace ese
