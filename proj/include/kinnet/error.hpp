#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kinnet {

enum class ErrorCode {
  invalid_argument,
  degenerate_diffusion,
  degenerate_connectivity,
  time_step,
  out_of_domain,
  non_normalizable,
  zero_mass,
  negative_density,
  unsupported,
  config,
  io
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        double admissible_dt = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(what), code_(code), admissible_dt_(admissible_dt) {}

  ErrorCode code() const noexcept { return code_; }
  // Largest admissible step, set only for time_step errors.
  double admissible_dt() const noexcept { return admissible_dt_; }

 private:
  ErrorCode code_;
  double admissible_dt_;
};

}  // namespace kinnet
