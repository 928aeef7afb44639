#include "lasertherm/stepper.hpp"

#include <sstream>
#include <string>
#include <vector>

#include "lasertherm/errors.hpp"

namespace lts {

namespace {

// Restriction of a full matrix to the rows and columns flagged free.
SparseMatrix restrict_to_free(const SparseMatrix& full, const Eigen::VectorXi& free_map,
                              int free_count) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(full.nonZeros()));
  for (int col = 0; col < full.outerSize(); ++col) {
    const int mapped_col = free_map(col);
    if (mapped_col < 0) continue;
    for (SparseMatrix::InnerIterator it(full, col); it; ++it) {
      const int mapped_row = free_map(it.row());
      if (mapped_row < 0) continue;
      triplets.emplace_back(mapped_row, mapped_col, it.value());
    }
  }
  SparseMatrix reduced(free_count, free_count);
  reduced.setFromTriplets(triplets.begin(), triplets.end());
  reduced.makeCompressed();
  return reduced;
}

}  // namespace

void LinearSolver::compute(const SparseMatrix& matrix, const SolverSettings& settings) {
  settings_ = settings;
  direct_.reset();
  cg_.reset();
  matrix_ = std::make_unique<SparseMatrix>(matrix);

  if (settings.method == LinearSolverKind::Direct) {
    direct_ = std::make_unique<DirectSolver>();
    direct_->compute(*matrix_);
    if (direct_->info() != Eigen::Success) {
      throw SolverError("sparse LDLT factorization failed");
    }
  } else {
    cg_ = std::make_unique<CgSolver>();
    cg_->setTolerance(settings.tolerance);
    cg_->setMaxIterations(settings.max_iterations);
    cg_->compute(*matrix_);
    if (cg_->info() != Eigen::Success) {
      throw SolverError("conjugate gradient setup failed");
    }
  }
}

Eigen::VectorXd LinearSolver::solve(const Eigen::VectorXd& rhs) const {
  if (direct_) {
    Eigen::VectorXd x = direct_->solve(rhs);
    if (direct_->info() != Eigen::Success) {
      throw SolverError("sparse LDLT solve failed");
    }
    return x;
  }
  if (cg_) {
    Eigen::VectorXd x = cg_->solve(rhs);
    if (cg_->info() != Eigen::Success) {
      std::ostringstream out;
      out << "conjugate gradient did not converge: relative residual " << cg_->error()
          << " after " << cg_->iterations() << " iterations (tolerance "
          << settings_.tolerance << ", cap " << settings_.max_iterations << ")";
      throw SolverError(out.str());
    }
    return x;
  }
  throw SolverError("linear solver used before compute()");
}

Eigen::VectorXd solve_linear(const SparseMatrix& matrix, const Eigen::VectorXd& rhs,
                             const SolverSettings& settings) {
  LinearSolver solver;
  solver.compute(matrix, settings);
  return solver.solve(rhs);
}

CrankNicolson::CrankNicolson(const SystemMatrices& system, const SolverSettings& settings)
    : system_(&system), settings_(settings) {
  if (!(settings.dt > 0.0)) {
    throw ConfigError("time step must be strictly positive, got " +
                      std::to_string(settings.dt));
  }
  free_map_ = system.free_index_map();
  const int free_count = static_cast<int>(system.free_nodes.size());
  if (free_count == 0) return;

  const SparseMatrix mass_ff = restrict_to_free(system.mass, free_map_, free_count);
  const SparseMatrix lhs = restrict_to_free(
      SparseMatrix(system.mass + (0.5 * settings.dt) * system.conductance), free_map_,
      free_count);
  mass_solver_.compute(mass_ff, settings);
  step_solver_.compute(lhs, settings);
}

Eigen::VectorXd CrankNicolson::gather_free(const Eigen::VectorXd& full) const {
  Eigen::VectorXd reduced(static_cast<Eigen::Index>(system_->free_nodes.size()));
  for (size_t i = 0; i < system_->free_nodes.size(); ++i) {
    reduced(static_cast<Eigen::Index>(i)) = full(system_->free_nodes[i]);
  }
  return reduced;
}

void CrankNicolson::scatter_free(const Eigen::VectorXd& reduced,
                                 Eigen::VectorXd& full) const {
  for (size_t i = 0; i < system_->free_nodes.size(); ++i) {
    full(system_->free_nodes[i]) = reduced(static_cast<Eigen::Index>(i));
  }
}

SimulationState CrankNicolson::init_state(const Eigen::VectorXd& initial_temperatures,
                                          const Eigen::VectorXd& initial_load) const {
  const int n = system_->node_count();
  if (initial_temperatures.size() != n || initial_load.size() != n) {
    throw std::invalid_argument("state vectors must have one entry per mesh node");
  }

  SimulationState state;
  state.time = 0.0;
  state.step = 0;
  state.temperatures = initial_temperatures;
  system_->apply_prescribed(state.temperatures);
  state.rates = Eigen::VectorXd::Zero(n);
  if (!system_->free_nodes.empty()) {
    const Eigen::VectorXd rhs =
        initial_load - system_->conductance * state.temperatures;
    scatter_free(mass_solver_.solve(gather_free(rhs)), state.rates);
  }
  return state;
}

void CrankNicolson::step(SimulationState& state, const Eigen::VectorXd& next_load) const {
  const int n = system_->node_count();
  if (state.temperatures.size() != n || next_load.size() != n) {
    throw std::invalid_argument("state vectors must have one entry per mesh node");
  }

  const double half_dt = 0.5 * settings_.dt;
  Eigen::VectorXd rates_new = Eigen::VectorXd::Zero(n);
  if (!system_->free_nodes.empty()) {
    const Eigen::VectorXd predictor = state.temperatures + half_dt * state.rates;
    const Eigen::VectorXd rhs = next_load - system_->conductance * predictor;
    scatter_free(step_solver_.solve(gather_free(rhs)), rates_new);
  }

  state.temperatures += half_dt * (state.rates + rates_new);
  state.rates = std::move(rates_new);
  state.step += 1;
  state.time = static_cast<double>(state.step) * settings_.dt;
}

}  // namespace lts
