#pragma once

#include <stdexcept>
#include <string>

namespace dirac_packets {

// Bad input: invalid parameters, out-of-range evaluation points.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A quadrature that did not reach its tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double worst_panel_error)
      : std::runtime_error(what + " (worst panel error estimate " +
                           std::to_string(worst_panel_error) + ")"),
        worst_panel_error_(worst_panel_error) {}

  double worst_panel_error() const noexcept { return worst_panel_error_; }

 private:
  double worst_panel_error_;
};

}  // namespace dirac_packets
