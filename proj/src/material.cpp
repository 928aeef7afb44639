#include "lasertherm/material.hpp"

#include <cmath>
#include <string>

#include "lasertherm/errors.hpp"

namespace lts {

void MaterialProperties::validate() const {
  auto require_positive = [](double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw ConfigError("material property " + std::string(name) +
                        " must be strictly positive, got " + std::to_string(value));
    }
  };
  require_positive(absorption, "mu_a");
  require_positive(heat_capacity, "c_v");
  require_positive(conductivity, "kappa");
  require_positive(heat_transfer, "h");
  if (!std::isfinite(ambient)) {
    throw ConfigError("material property t_ambient must be finite");
  }
}

MaterialProperties material_from_water_content(double water_fraction, double density) {
  if (!(water_fraction >= 0.0 && water_fraction <= 1.0)) {
    throw ConfigError("water content must lie in [0, 1], got " +
                      std::to_string(water_fraction));
  }
  if (!(density > 0.0)) {
    throw ConfigError("density must be strictly positive, got " + std::to_string(density));
  }
  MaterialProperties m;
  m.heat_capacity = (1.55 + 2.8 * water_fraction) * density;
  m.conductivity = 0.0006 + 0.0057 * water_fraction;
  return m;
}

MaterialProperties preset(std::string_view tissue) {
  if (tissue == "agar") {
    return {31.0, 4.3, 0.0062, 0.022, 24.0};
  }
  if (tissue == "chicken") {
    return {26.0, 3.73, 0.0049, 0.029, 24.0};
  }
  throw ConfigError("unknown tissue preset '" + std::string(tissue) +
                    "' (supported: agar, chicken)");
}

}  // namespace lts
