#pragma once

#include <string_view>

namespace lts {

/// Homogeneous, temperature-independent tissue properties. CGS-derived unit
/// system: lengths in cm, energy in J, power in W, temperatures in deg C.
struct MaterialProperties {
  double absorption = 0.0;     // optical absorption coefficient, 1/cm
  double heat_capacity = 0.0;  // volumetric heat capacity c_v, J/(cm^3 degC)
  double conductivity = 0.0;   // thermal conductivity, W/(cm degC)
  double heat_transfer = 0.0;  // convective coefficient h, W/(cm^2 degC)
  double ambient = 0.0;        // ambient temperature, degC

  /// Throws lts::ConfigError unless absorption, heat_capacity, conductivity
  /// and heat_transfer are strictly positive and ambient is finite.
  void validate() const;
};

/// Water-content fit for soft tissue: c_v = (1.55 + 2.8 w) * rho in
/// J/(cm^3 degC) and conductivity = 0.0006 + 0.0057 w in W/(cm degC), with
/// w the water mass fraction in [0, 1] and rho the density in g/cm^3.
/// Only those two fields are filled in; the rest are zero.
MaterialProperties material_from_water_content(double water_fraction, double density);

/// Measured property sets. Supported tissues: "agar", "chicken".
/// Throws lts::ConfigError for unknown names.
MaterialProperties preset(std::string_view tissue);

}  // namespace lts
