#include <cmath>
#include <cstring>
#include <numbers>

#include "doctest.h"
#include "ionfield/errors.hpp"
#include "ionfield/simulation.hpp"
#include "ionfield/solver.hpp"
#include "random_cases.hpp"

using namespace ionfield;

namespace {

State uniform_state(const Grid& g, std::vector<int> z, double value) {
  State s;
  s.grid = g;
  for (int v : z) s.species.push_back({v, Field(g.cell_count(), value)});
  return s;
}

ModelConfig zero_model(std::size_t species) {
  ModelConfig cfg;
  cfg.valences.assign(species, 1);
  return cfg;
}

}  // namespace

TEST_CASE("face velocities") {
  const Grid g = build_grid(1, 4.0, 8);  // dx = 1
  const std::vector<Field> constant{Field(8, 3.25)};
  CHECK(face_velocities(constant, g).x[0] == Field(7, 0.0));

  Field ramp(8);
  for (int j = 0; j < 8; ++j) ramp[j] = g.center(j);
  CHECK(face_velocities(std::vector<Field>{ramp}, g).x[0] == Field(7, -1.0));

  cases::Rng rng(2);
  const Grid g2 = build_grid(1, 1.3, 8);
  Field psi(8);
  for (double& v : psi) v = cases::uniform(rng, -5, 5);
  const Field u = face_velocities(std::vector<Field>{psi}, g2).x[0];
  for (int f = 0; f < 7; ++f) CHECK(u[f] == -(psi[f + 1] - psi[f]) / g2.spacing());

  // 2D layout
  const Grid sq = build_grid(2, 2.0, 4);
  Field p2(16);
  for (double& v : p2) v = cases::uniform(rng, -1, 1);
  const FaceVelocities v2 = face_velocities(std::vector<Field>{p2}, sq);
  REQUIRE(v2.x[0].size() == 12);
  REQUIRE(v2.y[0].size() == 12);
  CHECK(v2.x[0][1 * 4 + 2] == -(p2[2 * 4 + 2] - p2[1 * 4 + 2]) / sq.spacing());
  CHECK(v2.y[0][3 * 3 + 1] == -(p2[3 * 4 + 2] - p2[3 * 4 + 1]) / sq.spacing());
}

TEST_CASE("upwind split") {
  CHECK(upwind_split(3.0).plus == 3.0);
  CHECK(upwind_split(3.0).minus == 0.0);
  CHECK(upwind_split(-2.0).plus == 0.0);
  CHECK(upwind_split(-2.0).minus == 2.0);
  CHECK(upwind_split(0.0).plus == 0.0);
  CHECK(upwind_split(0.0).minus == 0.0);
}

TEST_CASE("fluxes") {
  const Grid g = build_grid(1, 2.0, 4);
  const State s = uniform_state(g, {1}, 1.0);
  FaceVelocities v;
  v.x = {Field(3, 0.0)};
  CHECK(fluxes(s, v, NoFlux{}, 0.0).x[0] == Field(5, 0.0));
  v.x = {Field(3, 1.0)};
  CHECK(fluxes(s, v, NoFlux{}, 0.0).x[0] == Field{0.0, 1.0, 1.0, 1.0, 0.0});

  const FaceFluxes in = fluxes(s, v, LeftInflux{}, 5.0);
  CHECK(in.x[0][0] == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-15));
  CHECK(in.x[0][4] == 0.0);
  CHECK(GaussianPulse{}(5.0) == doctest::Approx(0.39894).epsilon(1e-5));

  // mixed signs pick the upwind cell
  State t = s;
  t.species[0].values = {1.0, 2.0, 3.0, 4.0};
  v.x = {Field{2.0, -1.0, 0.5}};
  CHECK(fluxes(t, v, NoFlux{}, 0.0).x[0] == Field{0.0, 2.0, -3.0, 1.5, 0.0});
}

TEST_CASE("CFL step") {
  const Grid g = build_grid(1, 0.2, 4);  // dx = 0.1
  CHECK(cfl_dt(VelocityBounds{2.0, 0.0}, g, {1.0, 1e-2}) == doctest::Approx(0.025));
  CHECK(cfl_dt(VelocityBounds{0.0, 0.0}, g, {1.0, 1e-2}) == 1e-2);
  CHECK(cfl_dt(VelocityBounds{2.0, 0.0}, g, {0.5, 1e-2}) == doctest::Approx(0.0125));
  const Grid g2 = build_grid(2, 0.8, 4);  // dx = dy = 0.4
  CHECK(cfl_dt(VelocityBounds{1.0, 2.0}, g2, {1.0, 1e-2}) == doctest::Approx(0.05));
  CHECK(cfl_dt(VelocityBounds{1.0, 0.0}, g2, {1.0, 1e-2}) == doctest::Approx(0.1));
}

TEST_CASE("uniform state is a fixed point") {
  for (int dim : {1, 2}) {
    const Grid g = build_grid(dim, 3.0, 8);
    State s = uniform_state(g, {1, -1}, 0.3);
    const ModelOperators model(zero_model(2), g);
    const State before = s;
    const StepReport r = step_forward_euler(s, model, NoFlux{}, StepOptions{});
    CHECK(r.dt == 1e-2);
    CHECK(s.species[0].values == before.species[0].values);
    CHECK(s.species[1].values == before.species[1].values);
    CHECK(s.time == 1e-2);
  }
}

TEST_CASE("hand-computed three-cell update") {
  // psi = {0, 1, 3, 3} on dx = 1: u = {-1, -2, 0}; c = {1, 2, 4, 0}
  // F = {0, -1*2 = -2, -2*4 = -8, 0, 0}; dt = 0.1
  // c0 = 1 - 0.1*(-2 - 0) = 1.2, c1 = 2 - 0.1*(-8 + 2) = 2.6, c2 = 4 - 0.1*(0 + 8) = 3.2
  const Grid g = build_grid(1, 2.0, 4);
  State s;
  s.grid = g;
  s.species = {{1, {1.0, 2.0, 4.0, 0.0}}};
  FaceVelocities v = face_velocities(std::vector<Field>{{0.0, 1.0, 3.0, 3.0}}, g);
  CHECK(v.x[0] == Field{-1.0, -2.0, 0.0});
  const FaceFluxes f = fluxes(s, v, NoFlux{}, 0.0);
  CHECK(f.x[0] == Field{0.0, -2.0, -8.0, 0.0, 0.0});
  CHECK(apply_fluxes(s, f, 0.1) == 0);
  CHECK(s.species[0].values[0] == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(s.species[0].values[1] == doctest::Approx(2.6).epsilon(1e-15));
  CHECK(s.species[0].values[2] == doctest::Approx(3.2).epsilon(1e-15));
  CHECK(s.species[0].values[3] == 0.0);
}

TEST_CASE("rounding-level negatives are clamped, real ones throw") {
  const Grid g = build_grid(1, 1.0, 2);
  State s;
  s.grid = g;
  s.species = {{1, {1.0, 1.0}}};
  FaceFluxes f;
  f.x = {Field{0.0, std::nextafter(1.0, 2.0), 0.0}};
  CHECK(apply_fluxes(s, f, 1.0) == 1);  // c0 = -2.2e-16
  CHECK(s.species[0].values[0] == 0.0);

  s.species = {{1, {1.0, 1.0}}};
  f.x = {Field{0.0, 1.5, 0.0}};
  CHECK_THROWS_AS(apply_fluxes(s, f, 1.0), SchemeError);
}

TEST_CASE("energy rate is -sum psi * flux divergence") {
  const Grid g = build_grid(1, 2.0, 4);
  const std::vector<Field> psi{{0.0, 1.0, 3.0, 3.0}};
  FaceFluxes f;
  f.x = {Field{0.0, -2.0, -8.0, 0.0, 0.0}};
  // -(0*(-2) + 1*(-6) + 3*(8)) = -18
  CHECK(energy_rate(psi, f, g) == doctest::Approx(-18.0));
}

TEST_CASE("run bookkeeping") {
  const Grid g = build_grid(1, 3.0, 8);
  const ModelOperators model(zero_model(1), g);
  State s = uniform_state(g, {1}, 0.5);

  RunOptions o;
  o.t_end = 0.0;
  RunResult r0 = run(s, model, NoFlux{}, o);
  CHECK(r0.steps == 0);
  CHECK(r0.snapshots.size() == 1);
  CHECK(r0.final_state.species[0].values == s.species[0].values);

  o.t_end = 1.0;
  o.output_times = {0.25, 0.5, 2.0, 0.25};
  const RunResult r = run(s, model, NoFlux{}, o);
  REQUIRE(r.series.size() == 4);
  CHECK(r.series[1].time == 0.25);
  CHECK(r.series[2].time == 0.5);
  CHECK(r.final_state.time == 1.0);
  CHECK(std::memcmp(r.final_state.species[0].values.data(), s.species[0].values.data(),
                    8 * sizeof(double)) == 0);
  CHECK(r.steady_time.has_value());

  o.step.safety = 0.0;
  CHECK_THROWS_AS(run(s, model, NoFlux{}, o), ValidationError);
  o.step.safety = 0.9;
  CHECK_THROWS_AS(run(s, model, LeftInflux{3, {}}, o), ValidationError);
  State wrong = uniform_state(build_grid(1, 3.0, 16), {1}, 0.5);
  CHECK_THROWS_AS(run(wrong, model, NoFlux{}, o), ValidationError);
}

TEST_CASE("left influx injects the integrated pulse") {
  const Grid g = build_grid(1, 4.0, 32);
  ModelConfig cfg = zero_model(1);
  cfg.external.quadratic = 1.0;
  const ModelOperators model(cfg, g);
  State s = uniform_state(g, {1}, 1e-6);
  const double m0 = total_mass(s.species[0].values, g);
  RunOptions o;
  o.t_end = 2.0;
  const RunResult r = run(s, model, LeftInflux{0, {0.5, 1.0, 0.5}}, o);
  const double gained = total_mass(r.final_state.species[0].values, g) - m0;
  CHECK(gained == doctest::Approx(r.injected_mass).epsilon(1e-12));
  // 0.5 * int_0^2 exp(-(t-1)^2/0.5) dt = 0.5 * sqrt(pi/2) * erf(sqrt 2)
  const double exact = 0.5 * std::sqrt(std::numbers::pi / 2) * std::erf(std::sqrt(2.0));
  CHECK(r.injected_mass == doctest::Approx(exact).epsilon(1e-2));
}

TEST_CASE("positivity and mass after many random steps") {
  cases::Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    const int dim = 1 + i % 2;
    const ModelConfig cfg = cases::model(rng, dim, 2);
    State s = cases::state(rng, cfg, dim, dim == 1 ? 64 : 16, 4.0, true);
    const ModelOperators model(cfg, s.grid);
    const double m0 = total_mass(s.species[0].values, s.grid);
    for (int k = 0; k < 20; ++k) step_forward_euler(s, model, NoFlux{}, StepOptions{});
    for (const auto& sp : s.species) {
      for (double v : sp.values) CHECK(v >= 0.0);
    }
    CHECK(total_mass(s.species[0].values, s.grid) == doctest::Approx(m0).epsilon(1e-12));
  }
}
