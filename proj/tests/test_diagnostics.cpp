#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ionfield/diagnostics.hpp"
#include "ionfield/errors.hpp"
#include "oracles.hpp"
#include "random_cases.hpp"

using namespace ionfield;

namespace {

State make(const Grid& g, std::vector<std::pair<int, Field>> species) {
  State s;
  s.grid = g;
  for (auto& [z, f] : species) s.species.push_back({z, std::move(f)});
  return s;
}

}  // namespace

TEST_CASE("discrete energy special cases") {
  const Grid g = build_grid(1, 0.5, 2);  // dx = 0.5
  ModelConfig cfg;
  cfg.valences = {1};
  const State one = make(g, {{1, Field(2, 1.0)}});
  CHECK(discrete_energy(one, ModelOperators(cfg, g)).total == 0.0);

  // opposite species with equal fields: no electrostatic energy whatever K is
  ModelConfig pair;
  pair.valences = {1, -1};
  pair.electrostatic = RegularizedNewtonian{3, 0.2};
  const State neutral = make(g, {{1, {0.3, 0.9}}, {-1, {0.3, 0.9}}});
  CHECK(discrete_energy(neutral, ModelOperators(pair, g)).electrostatic == 0.0);

  // 0 log 0 = 0
  const State empty = make(g, {{1, Field(2, 0.0)}});
  CHECK(discrete_energy(empty, ModelOperators(cfg, g)).entropy == 0.0);
}

TEST_CASE("discrete energy parts") {
  const Grid g = build_grid(1, 2.0, 4);  // dx = 1, centers -1.5 .. 1.5
  ModelConfig cfg;
  cfg.valences = {1};
  cfg.external.quadratic = 2.0;
  const State s = make(g, {{1, {0.0, 1.0, 2.0, 0.0}}});
  const EnergyBreakdown e = discrete_energy(s, ModelOperators(cfg, g));
  CHECK(e.entropy == doctest::Approx(2.0 * std::log(2.0)));
  CHECK(e.external == doctest::Approx(0.25 * 1.0 + 0.25 * 2.0));
  CHECK(e.total == doctest::Approx(e.entropy + e.external));
}

TEST_CASE("dissipation special cases") {
  const Grid g = build_grid(1, 2.0, 4);
  const State s = make(g, {{1, {1.0, 0.0, 2.0, 3.0}}});
  FaceVelocities v;
  v.x = {Field(3, 0.0)};
  CHECK(discrete_dissipation(s, v) == 0.0);
  v.x = {Field{5.0, 7.0, 2.0}};
  // faces touching the empty cell drop out; last face: 1 * 4 * min(2, 3)
  CHECK(discrete_dissipation(s, v) == 8.0);
}

TEST_CASE("energy and dissipation match the oracles on random states") {
  cases::Rng rng(77);
  for (int i = 0; i < 40; ++i) {
    const int dim = 1 + i % 2;
    const ModelConfig cfg = cases::model(rng, dim, 1 + cases::pick(rng, 3));
    const State s = cases::state(rng, cfg, dim, dim == 1 ? 16 : 8, cases::uniform(rng, 1, 6),
                                 i % 3 == 0);
    const ModelOperators model(cfg, s.grid);
    CHECK(oracle::rel_err(discrete_energy(s, model).total, oracle::energy(s, cfg)) < 1e-12);
    const auto psi = chemical_potential(s, model);
    const FaceVelocities v = face_velocities(psi, s.grid);
    CHECK(oracle::rel_err(discrete_dissipation(s, v), oracle::dissipation(s, v.x, v.y)) < 1e-12);
    // the velocity path itself, against difference quotients of the oracle potential
    const std::vector<Field> opsi = oracle::psi(s, cfg);
    std::vector<Field> ox, oy;
    oracle::velocities(s.grid, opsi, ox, oy);
    for (std::size_t m = 0; m < ox.size(); ++m) {
      double scale = 0;
      for (double p : opsi[m]) scale = std::max(scale, std::abs(p));
      const double tol = 1e-13 * scale / s.grid.spacing();
      for (std::size_t f = 0; f < ox[m].size(); ++f) CHECK(std::abs(v.x[m][f] - ox[m][f]) <= tol);
    }
  }
}

TEST_CASE("second moment") {
  const Grid g = build_grid(1, 4.0, 8);  // dx = 1, centers +-0.5 .. +-3.5
  Field point(8, 0.0);
  point[5] = 1.0;  // center 1.5
  CHECK(second_moment(make(g, {{1, point}})) == 2.25);

  const Grid g2 = build_grid(1, 4.0, 2);  // dx = 4, centers -2, 2
  CHECK(second_moment(make(g2, {{1, {0.0, 0.25}}})) == 4.0);
  CHECK(second_moment(make(g2, {{1, {0.125, 0.125}}})) == 4.0);

  // two unit Gaussians centered at +-2: (1 + 4) + (1 + 4)
  const Grid fine = build_grid(1, 20.0, 4096);
  Field a(4096), b(4096);
  for (int j = 0; j < 4096; ++j) {
    const double x = fine.center(j);
    a[j] = std::exp(-0.5 * (x - 2) * (x - 2)) / std::sqrt(2 * std::numbers::pi);
    b[j] = std::exp(-0.5 * (x + 2) * (x + 2)) / std::sqrt(2 * std::numbers::pi);
  }
  CHECK(std::abs(second_moment(make(fine, {{1, a}, {-1, b}})) - 10.0) < 1e-6);
}

TEST_CASE("second-moment growth constant") {
  ModelConfig cfg;
  cfg.valences = {1, -1};
  cfg.steric = RegularizedPower{1.0, 2.0, 0.1};
  const double two[] = {1.0, 1.0};
  CHECK(second_moment_bound_constant(cfg, two, 2) == 20.0);
  CHECK(second_moment_bound_constant(cfg, two, 1) == 20.0);

  cfg.steric = RegularizedPower{0.0, 2.0, 0.1};
  const double one[] = {0.5, 0.5};
  CHECK(second_moment_bound_constant(cfg, one, 2) == 5.0);

  cfg.steric = RegularizedPower{1.0, 2.0, 0.5};
  CHECK(second_moment_bound_constant(cfg, one, 3) == 16.0);

  cfg.steric = ZeroKernel{};
  CHECK_THROWS_AS(second_moment_bound_constant(cfg, one, 2), ValidationError);
}

TEST_CASE("maximal density") {
  const Grid g = build_grid(1, 4.0, 8);
  Field point(8, 0.0);
  point[3] = 1.0;
  const State s = make(g, {{1, point}});
  CHECK(maximal_density(s, 0.5)[0] == 1.0);
  CHECK(maximal_density(s, 3.0)[0] == 1.0);

  cases::Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const int dim = 1 + i % 2;
    const int n = dim == 1 ? 32 : 12;
    ModelConfig cfg;
    cfg.valences = {1, 1};
    const State r = cases::state(rng, cfg, dim, n, 3.0);
    const double radius = cases::uniform(rng, 0.1, 4.0);
    const auto got = maximal_density(r, radius);
    for (std::size_t m = 0; m < 2; ++m) {
      // brute-force window over every center
      double best = 0.0;
      for (std::size_t c = 0; c < r.grid.cell_count(); ++c) {
        double sum = 0.0;
        for (std::size_t q = 0; q < r.grid.cell_count(); ++q) {
          double d2;
          if (dim == 1) {
            d2 = std::pow(r.grid.center((int)c) - r.grid.center((int)q), 2);
          } else {
            d2 = std::pow(r.grid.center((int)c / n) - r.grid.center((int)q / n), 2) +
                 std::pow(r.grid.center((int)c % n) - r.grid.center((int)q % n), 2);
          }
          if (std::sqrt(d2) <= radius) sum += r.species[m].values[q];
        }
        best = std::max(best, sum * r.grid.cell_measure());
      }
      CHECK(got[m] == doctest::Approx(best).epsilon(1e-12));
    }
    CHECK(maximal_density(r, 100.0)[0] ==
          doctest::Approx(total_mass(r.species[0].values, r.grid)).epsilon(1e-12));
  }
  CHECK(maximal_density_scale(1.0, 0.0, 2.0) == doctest::Approx(2.0));
}

TEST_CASE("potential flatness") {
  const Grid g = build_grid(1, 2.0, 4);  // centers -1.5 -0.5 0.5 1.5
  Field c{0.0, 1.0, 1.0, 0.0};
  const State s = make(g, {{1, c}});
  CHECK(potential_flatness(s, std::vector<Field>{Field(4, 2.0)}, 0.5)[0] == 0.0);
  Field ramp{-1.5, -0.5, 0.5, 1.5};
  CHECK(potential_flatness(s, std::vector<Field>{ramp}, 0.5)[0] == 1.0);
  CHECK_THROWS_AS(potential_flatness(s, std::vector<Field>{ramp}, 2.0), ValidationError);
}
