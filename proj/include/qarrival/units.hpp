#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qarrival {

using Complex = std::complex<double>;

/// Diagnostic raised when a numerical audit fails (quadrature window too
/// small, solver norm growth, degenerate input, ...). The CLI maps these to
/// a machine-readable error record and exit code 3.
class DiagnosticError : public std::runtime_error {
public:
  DiagnosticError(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

namespace constants {
inline constexpr double hbar_si = 1.054571817e-34; // J s (CODATA)
inline constexpr double helium_star_mass_kg = 6.64e-27;
// 1 m^2/s = 1e9 um^2/ms
inline constexpr double m2_per_s_to_um2_per_ms = 1e9;
} // namespace constants

/// Internal unit system: lengths in micrometers, times in milliseconds.
/// The only physical constant entering any formula is alpha = hbar/m.
struct UnitSystem {
  double alpha; // hbar/m in um^2/ms

  static UnitSystem from_mass_kg(double mass_kg) {
    if (!(mass_kg > 0))
      throw std::invalid_argument("UnitSystem: mass must be positive");
    return {constants::hbar_si / mass_kg * constants::m2_per_s_to_um2_per_ms};
  }

  /// Metastable helium, the paper's interfering particle.
  static UnitSystem helium_star() {
    return from_mass_kg(constants::helium_star_mass_kg);
  }

  void validate() const {
    if (!(alpha > 0))
      throw std::invalid_argument("UnitSystem: alpha must be positive");
  }
};

} // namespace qarrival
