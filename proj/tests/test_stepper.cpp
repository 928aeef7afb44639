#include <cmath>

#include <Eigen/Dense>

#include "doctest.h"
#include "lasertherm/boundary.hpp"
#include "lasertherm/errors.hpp"
#include "lasertherm/stepper.hpp"
#include "oracles.hpp"

using namespace lts;

namespace {

SparseMatrix sparse_from_dense(const Eigen::MatrixXd& dense) {
  SparseMatrix sparse = dense.sparseView();
  sparse.makeCompressed();
  return sparse;
}

SystemMatrices cube_system(int n, double dirichlet_value = 0.0, bool pin_top = false) {
  const Mesh mesh = build_grid({n, n, n}, Vec3(1, 1, 1), Vec3(0, 0, 0));
  MaterialProperties mat;
  mat.absorption = 1.0;
  mat.heat_capacity = 1.0;
  mat.conductivity = 0.1;
  mat.heat_transfer = 0.01;
  mat.ambient = 0.0;
  DirichletSpec dirichlet;
  if (pin_top) dirichlet.faces["z_max"] = dirichlet_value;
  return assemble(mesh, mat, dirichlet);
}

}  // namespace

TEST_CASE("solve_linear reproduces a dense factorization") {
  const Eigen::MatrixXd a = oracle::random_spd(25, 4);
  const Eigen::VectorXd b = oracle::random_vector(25, 5);
  const Eigen::VectorXd expected = a.ldlt().solve(b);

  SolverSettings direct;
  direct.method = LinearSolverKind::Direct;
  const Eigen::VectorXd x1 = solve_linear(sparse_from_dense(a), b, direct);
  CHECK((x1 - expected).norm() < 1e-10 * expected.norm());

  SolverSettings cg;
  cg.method = LinearSolverKind::ConjugateGradient;
  cg.tolerance = 1e-12;
  const Eigen::VectorXd x2 = solve_linear(sparse_from_dense(a), b, cg);
  CHECK((x2 - expected).norm() < 1e-8 * expected.norm());
}

TEST_CASE("solving with a zero right-hand side gives zero") {
  const Eigen::MatrixXd a = oracle::random_spd(10, 6);
  SolverSettings settings;
  const Eigen::VectorXd x =
      solve_linear(sparse_from_dense(a), Eigen::VectorXd::Zero(10), settings);
  CHECK(x.norm() == 0.0);
}

TEST_CASE("CG reports residual and iterations when it cannot converge") {
  const Eigen::MatrixXd a = oracle::random_spd(40, 7);
  SolverSettings cg;
  cg.method = LinearSolverKind::ConjugateGradient;
  cg.tolerance = 1e-15;
  cg.max_iterations = 1;
  CHECK_THROWS_WITH_AS(solve_linear(sparse_from_dense(a), oracle::random_vector(40, 8), cg),
                       doctest::Contains("iterations"), SolverError);
}

TEST_CASE("a scalar problem reproduces the closed-form update") {
  SystemMatrices system;
  Eigen::MatrixXd m(1, 1), k(1, 1);
  m << 1.0;
  k << 1.0;
  system.mass = sparse_from_dense(m);
  system.conductance = sparse_from_dense(k);
  system.free_nodes = {0};
  system.prescribed_values.resize(0);

  SolverSettings settings;
  settings.dt = 0.1;
  const CrankNicolson stepper(system, settings);

  Eigen::VectorXd d0(1), f(1);
  d0 << 1.0;
  f << 0.0;
  SimulationState state = stepper.init_state(d0, f);
  CHECK(state.rates(0) == doctest::Approx(-1.0).epsilon(1e-14));

  stepper.step(state, f);
  CHECK(state.temperatures(0) == doctest::Approx((1.0 - 0.05) / 1.05).epsilon(1e-14));
  CHECK(state.time == doctest::Approx(0.1));
  CHECK(state.step == 1);
}

TEST_CASE("the semidiscrete identity M v = F - K d holds after every step") {
  SystemMatrices system = cube_system(3, 10.0, true);
  SolverSettings settings;
  settings.dt = 0.05;
  const CrankNicolson stepper(system, settings);

  const int n = system.node_count();
  Eigen::VectorXd initial = Eigen::VectorXd::Constant(n, 10.0);
  for (int i = 0; i < n; ++i) initial(i) += 0.01 * i;
  Eigen::VectorXd load = oracle::random_vector(n, 11) * 0.1;

  SimulationState state = stepper.init_state(initial, load);
  const Eigen::VectorXi map = system.free_index_map();
  for (int step = 0; step < 5; ++step) {
    stepper.step(state, load);
    const Eigen::VectorXd residual =
        system.mass * state.rates + system.conductance * state.temperatures - load;
    double free_residual = 0.0;
    for (int node = 0; node < n; ++node) {
      if (map(node) >= 0) free_residual = std::max(free_residual, std::abs(residual(node)));
    }
    CHECK(free_residual < 1e-10 * std::max(1.0, load.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("prescribed nodes hold their temperatures with zero rate") {
  SystemMatrices system = cube_system(2, 24.0, true);
  SolverSettings settings;
  const CrankNicolson stepper(system, settings);
  const int n = system.node_count();

  SimulationState state =
      stepper.init_state(Eigen::VectorXd::Constant(n, 30.0), Eigen::VectorXd::Zero(n));
  for (int step = 0; step < 3; ++step) stepper.step(state, Eigen::VectorXd::Zero(n));
  for (int node : system.prescribed_nodes) {
    CHECK(state.temperatures(node) == 24.0);
    CHECK(state.rates(node) == 0.0);
  }
}

TEST_CASE("a uniform field with no forcing stays exactly stationary") {
  SystemMatrices system = cube_system(3);
  SolverSettings settings;
  const CrankNicolson stepper(system, settings);
  const int n = system.node_count();

  SimulationState state =
      stepper.init_state(Eigen::VectorXd::Constant(n, 24.0), Eigen::VectorXd::Zero(n));
  CHECK(state.rates.cwiseAbs().maxCoeff() < 1e-12);
  for (int step = 0; step < 10; ++step) stepper.step(state, Eigen::VectorXd::Zero(n));
  CHECK((state.temperatures.array() - 24.0).abs().maxCoeff() < 1e-10);
}

TEST_CASE("energy balance holds over a forced, cooled, pinned run") {
  SystemMatrices system = cube_system(3, 5.0, true);
  SolverSettings settings;
  settings.dt = 0.02;
  const CrankNicolson stepper(system, settings);
  const int n = system.node_count();

  Eigen::VectorXd initial = Eigen::VectorXd::Constant(n, 5.0);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);

  const auto load_at = [&](double t) {
    Eigen::VectorXd f = oracle::random_vector(n, 13) * 0.05;
    return (f * std::cos(t)).eval();
  };

  SimulationState state = stepper.init_state(initial, load_at(0.0));
  double enthalpy = ones.dot(system.mass * state.temperatures);

  const auto sink_exchange = [&](const SimulationState& s, const Eigen::VectorXd& f) {
    const Eigen::VectorXd residual =
        system.mass * s.rates + system.conductance * s.temperatures - f;
    double total = 0.0;
    for (int node : system.prescribed_nodes) total += residual(node);
    return total;
  };

  Eigen::VectorXd previous_load = load_at(0.0);
  double previous_exchange = sink_exchange(state, previous_load);
  for (int step = 1; step <= 25; ++step) {
    const double t = step * settings.dt;
    const Eigen::VectorXd load = load_at(t);
    stepper.step(state, load);
    const double exchange = sink_exchange(state, load);

    const double supplied = 0.5 * (ones.dot(previous_load) + ones.dot(load)) +
                            0.5 * (previous_exchange + exchange);
    enthalpy += settings.dt * supplied;
    const double actual = ones.dot(system.mass * state.temperatures);
    CHECK(std::abs(actual - enthalpy) < 1e-8 * std::max(1.0, std::abs(actual)));

    previous_load = load;
    previous_exchange = exchange;
  }
}

TEST_CASE("direct and CG stepping agree to solver tolerance") {
  SystemMatrices system = cube_system(3, 0.0, true);
  const int n = system.node_count();
  const Eigen::VectorXd initial = oracle::random_vector(n, 17).cwiseAbs() * 10.0;
  const Eigen::VectorXd load = oracle::random_vector(n, 18) * 0.1;

  SolverSettings direct;
  direct.dt = 0.05;
  SolverSettings cg = direct;
  cg.method = LinearSolverKind::ConjugateGradient;
  cg.tolerance = 1e-13;

  const CrankNicolson a(system, direct);
  const CrankNicolson b(system, cg);
  SimulationState sa = a.init_state(initial, load);
  SimulationState sb = b.init_state(initial, load);
  for (int step = 0; step < 10; ++step) {
    a.step(sa, load);
    b.step(sb, load);
  }
  CHECK((sa.temperatures - sb.temperatures).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("repeated runs are bitwise deterministic") {
  SystemMatrices system = cube_system(3, 1.0, true);
  SolverSettings settings;
  const int n = system.node_count();
  const Eigen::VectorXd initial = oracle::random_vector(n, 21).cwiseAbs();
  const Eigen::VectorXd load = oracle::random_vector(n, 22) * 0.01;

  const auto run = [&]() {
    const CrankNicolson stepper(system, settings);
    SimulationState state = stepper.init_state(initial, load);
    for (int step = 0; step < 20; ++step) stepper.step(state, load);
    return state.temperatures;
  };
  const Eigen::VectorXd first = run();
  const Eigen::VectorXd second = run();
  for (int i = 0; i < n; ++i) CHECK(first(i) == second(i));
}

TEST_CASE("large steps remain stable where explicit stepping would explode") {
  SystemMatrices system = cube_system(4, 0.0, true);
  SolverSettings settings;
  settings.dt = 50.0;
  const CrankNicolson stepper(system, settings);
  const int n = system.node_count();

  Eigen::VectorXd initial = oracle::random_vector(n, 23).cwiseAbs() * 100.0;
  SimulationState state = stepper.init_state(initial, Eigen::VectorXd::Zero(n));
  for (int step = 0; step < 50; ++step) stepper.step(state, Eigen::VectorXd::Zero(n));
  CHECK(state.temperatures.cwiseAbs().maxCoeff() < 100.0);
  CHECK(std::isfinite(state.temperatures.sum()));
}

TEST_CASE("invalid settings and mismatched sizes are rejected") {
  SystemMatrices system = cube_system(2);
  SolverSettings bad;
  bad.dt = 0.0;
  CHECK_THROWS_AS(CrankNicolson(system, bad), ConfigError);

  SolverSettings ok;
  const CrankNicolson stepper(system, ok);
  const Eigen::VectorXd short_vec = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(stepper.init_state(short_vec, short_vec), std::invalid_argument);

  SimulationState state = stepper.init_state(
      Eigen::VectorXd::Zero(system.node_count()), Eigen::VectorXd::Zero(system.node_count()));
  CHECK_THROWS_AS(stepper.step(state, short_vec), std::invalid_argument);
}
