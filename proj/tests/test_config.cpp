#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "fixtures.hpp"
#include "gradflow/config.hpp"
#include "gradflow/errors.hpp"

using namespace gradflow;

namespace {

const std::string kMinimal = R"(
grid.nx = 16
grid.ny = 16
energy.kind = linear
energy.c = 1
mobility.m_x = 1
mobility.m_psi = 1
model.variant = full_coupled
stepper.dt = 1e-3
run.t_end = 0.1
initial.h = zero
initial.psi = 0.3
)";

std::string with(const std::string& base, const std::string& key, const std::string& value) {
  std::string out;
  bool replaced = false;
  std::size_t pos = 0;
  while (pos < base.size()) {
    auto nl = base.find('\n', pos);
    if (nl == std::string::npos) nl = base.size();
    const auto line = base.substr(pos, nl - pos);
    if (line.rfind(key + " ", 0) == 0) {
      out += key + " = " + value + "\n";
      replaced = true;
    } else {
      out += line + "\n";
    }
    pos = nl + 1;
  }
  if (!replaced) out += key + " = " + value + "\n";
  return out;
}

std::string failing_key(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("shipped configuration") {
  const auto c = load_config(GRADFLOW_SOURCE_DIR "/configs/relaxation.cfg");
  auto expected = fixtures::relaxation();
  expected.snapshot_times = {0.0, 0.1, 0.4, 0.8};
  expected.output_dir = "out/relaxation";
  CHECK(c == expected);
  CHECK(c.energy == EnergyModel::flory_huggins(1.0, 0.75, 0.0));
  CHECK(c.lx == 2 * std::numbers::pi);
  CHECK_FALSE(c.stepper.stab_h.has_value());
}

TEST_CASE("minimal configuration and defaults") {
  const auto c = parse_config(kMinimal);
  CHECK(c.energy == EnergyModel::linear(1.0));
  CHECK(c.record_every == 100);
  CHECK(c.dealias);
  CHECK(c.stepper.scheme == Scheme::IMEX1);
  CHECK(c.output_dir == "out");
  CHECK(c.initial_h.kind == InitialHeight::Kind::Zero);
  CHECK(c.initial_psi.value == 0.3);
}

TEST_CASE("errors name the key") {
  CHECK(failing_key(with(kMinimal, "stepper.dt", "-1")) == "stepper.dt");
  CHECK(failing_key(with(kMinimal, "stepper.dt", "1")) == "stepper.dt");
  CHECK(failing_key(with(kMinimal, "grid.nx", "15")) == "grid.nx");
  CHECK(failing_key(with(kMinimal, "grid.nx", "abc")) == "grid.nx");
  CHECK(failing_key(with(kMinimal, "mobility.m_x", "0")) == "mobility.m_x");
  CHECK(failing_key(with(kMinimal, "run.t_end", "0")) == "run.t_end");
  CHECK(failing_key(with(kMinimal, "run.snapshot_times", "0.05, 0.2")) == "run.snapshot_times");
  CHECK(failing_key(with(kMinimal, "run.record_every", "0")) == "run.record_every");
  CHECK(failing_key(with(kMinimal, "energy.kind", "cubic")) == "energy.kind");
  CHECK(failing_key(with(kMinimal, "energy.beta", "1")) == "energy.beta");
  CHECK(failing_key(with(kMinimal, "model.variant", "material_gauge_quadratic")) == "model.variant");
  CHECK(failing_key(with(kMinimal, "stepper.stab_h", "-2")) == "stepper.stab_h");
  CHECK(failing_key(with(kMinimal, "initial.h", "gaussian")) == "initial.h");
  CHECK(failing_key(with(kMinimal, "grid.dealias", "yes")) == "grid.dealias");
  CHECK(failing_key(kMinimal + "grid.nz = 4\n") == "grid.nz");
  CHECK(failing_key(kMinimal + "grid.nx = 32\n") == "grid.nx");
  CHECK(failing_key("grid.nx = 16\n") == "grid.ny");

  const auto fh = with(with(with(kMinimal, "energy.kind", "flory_huggins"), "energy.c", "1"), "energy.sigma0", "1");
  CHECK(failing_key(fh) == "energy.beta");
  const auto fh_ok = with(with(with(kMinimal, "energy.kind", "flory_huggins"), "energy.sigma0", "1"), "energy.beta", "1");
  CHECK(failing_key(fh_ok) == "energy.c");
}

TEST_CASE("flory-huggins density must start inside (0, 1)") {
  auto text = with(kMinimal, "energy.kind", "flory_huggins");
  text = with(text, "energy.c", "");
  std::string cleaned;
  for (std::size_t p = 0; p < text.size();) {
    auto nl = text.find('\n', p);
    const auto line = text.substr(p, nl - p);
    if (line.rfind("energy.c ", 0) != 0) cleaned += line + "\n";
    p = nl + 1;
  }
  cleaned = with(with(cleaned, "energy.sigma0", "1"), "energy.beta", "0.5");
  CHECK_NOTHROW(parse_config(cleaned));
  CHECK(failing_key(with(cleaned, "initial.psi", "1.5")) == "initial.psi");
}

TEST_CASE("value syntax") {
  auto c = parse_config(with(with(kMinimal, "grid.lx", "0.5pi"), "grid.ly", "3  # trailing comment"));
  CHECK(c.lx == doctest::Approx(0.5 * std::numbers::pi).epsilon(1e-16));
  CHECK(c.ly == 3.0);
  c = parse_config(with(with(kMinimal, "stepper.stab_psi", "0"), "stepper.stab_h", "2.5"));
  CHECK_FALSE(c.stepper.stab_psi.has_value());
  CHECK(*c.stepper.stab_h == 2.5);
  c = parse_config(with(kMinimal, "initial.psi", "file:some/where.sgf"));
  CHECK(c.initial_psi.kind == InitialDensity::Kind::File);
  CHECK(c.initial_psi.path == "some/where.sgf");
}

TEST_CASE("print and parse round trip") {
  auto c = fixtures::relaxation(64, 4e-5, 0.2);
  c.snapshot_times = {0.0, 1.0 / 30.0, 0.2};
  c.stepper.stab_h = 0.123456789012345678;
  c.stepper.scheme = Scheme::ExplicitEuler;
  c.dealias = false;
  c.initial_h.amplitude = 0.1;
  c.seed = 42;
  CHECK(parse_config(print_config(c)) == c);

  auto q = parse_config(kMinimal);
  q.energy = EnergyModel::quadratic(0.3);
  q.variant = ModelVariant::MaterialGaugeQuadratic;
  q.initial_h.kind = InitialHeight::Kind::File;
  q.initial_h.path = "h.sgf";
  CHECK(parse_config(print_config(q)) == q);
}

TEST_CASE("initial data presets") {
  auto c = parse_config(with(with(kMinimal, "initial.h", "sin2x"), "initial.h_amplitude", "0.01"));
  const auto g = make_grid(c);
  auto s = initial_state(c, g);
  CHECK(s.t == 0.0);
  CHECK(s.h[g->index(2, 5)] == doctest::Approx(0.01 * std::sin(2 * g->x(2))));
  c.initial_h.kind = InitialHeight::Kind::Sin2xSin2y;
  s = initial_state(c, g);
  CHECK(s.h[g->index(2, 1)] == doctest::Approx(0.01 * std::sin(2 * g->x(2)) * std::sin(2 * g->y(1))));
  CHECK(s.psi.max_abs() == 0.3);
}
