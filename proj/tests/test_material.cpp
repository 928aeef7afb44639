#include "doctest.h"
#include "lasertherm/errors.hpp"
#include "lasertherm/material.hpp"

using namespace lts;

TEST_CASE("agar preset carries the measured property set") {
  const MaterialProperties m = preset("agar");
  CHECK(m.absorption == 31.0);
  CHECK(m.heat_capacity == 4.3);
  CHECK(m.conductivity == 0.0062);
  CHECK(m.heat_transfer == 0.022);
  CHECK(m.ambient == 24.0);
}

TEST_CASE("chicken preset carries the measured property set") {
  const MaterialProperties m = preset("chicken");
  CHECK(m.absorption == 26.0);
  CHECK(m.heat_capacity == 3.73);
  CHECK(m.conductivity == 0.0049);
  CHECK(m.heat_transfer == 0.029);
  CHECK(m.ambient == 24.0);
}

TEST_CASE("unknown presets are rejected") {
  CHECK_THROWS_AS(preset("beef"), ConfigError);
  CHECK_THROWS_WITH_AS(preset(""), doctest::Contains("unknown tissue preset"),
                       ConfigError);
}

TEST_CASE("water-content fit reproduces the published agar values") {
  const MaterialProperties m = material_from_water_content(0.98, 1.00);
  CHECK(m.heat_capacity == doctest::Approx(4.294).epsilon(1e-12));
  CHECK(m.conductivity == doctest::Approx(0.006186).epsilon(1e-12));
}

TEST_CASE("water-content fit scales heat capacity with density") {
  const MaterialProperties a = material_from_water_content(0.75, 1.0);
  const MaterialProperties b = material_from_water_content(0.75, 1.05);
  CHECK(b.heat_capacity == doctest::Approx(1.05 * a.heat_capacity).epsilon(1e-14));
  CHECK(b.conductivity == a.conductivity);
}

TEST_CASE("water-content fit rejects fractions outside [0, 1]") {
  CHECK_THROWS_AS(material_from_water_content(-0.1, 1.0), ConfigError);
  CHECK_THROWS_AS(material_from_water_content(1.1, 1.0), ConfigError);
  CHECK_THROWS_AS(material_from_water_content(0.8, 0.0), ConfigError);
}

TEST_CASE("validate rejects non-positive transport properties") {
  MaterialProperties m = preset("agar");
  CHECK_NOTHROW(m.validate());

  m.heat_capacity = 0.0;
  CHECK_THROWS_WITH_AS(m.validate(), doctest::Contains("c_v"), ConfigError);

  m = preset("agar");
  m.conductivity = -0.1;
  CHECK_THROWS_WITH_AS(m.validate(), doctest::Contains("kappa"), ConfigError);

  m = preset("agar");
  m.absorption = -1.0;
  CHECK_THROWS_WITH_AS(m.validate(), doctest::Contains("mu_a"), ConfigError);

  m = preset("agar");
  m.heat_transfer = -0.01;
  CHECK_THROWS_WITH_AS(m.validate(), doctest::Contains("h"), ConfigError);
}
