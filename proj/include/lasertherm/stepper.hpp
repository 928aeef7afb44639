#pragma once

#include <memory>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include "lasertherm/assembly.hpp"

namespace lts {

enum class LinearSolverKind {
  Direct,             // sparse LDLT factorization, deterministic
  ConjugateGradient,  // diagonal-preconditioned CG
};

struct SolverSettings {
  double dt = 0.05;  // s
  LinearSolverKind method = LinearSolverKind::Direct;
  double tolerance = 1e-10;   // relative residual, iterative method only
  int max_iterations = 5000;  // iterative method only
};

/// Symmetric positive definite solver wrapper. compute() factorizes (direct)
/// or prepares the preconditioner (CG); solve() throws lts::SolverError on
/// breakdown or when CG fails to reach the tolerance, reporting the residual
/// and iteration count.
class LinearSolver {
 public:
  LinearSolver() = default;

  void compute(const SparseMatrix& matrix, const SolverSettings& settings);
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

 private:
  using DirectSolver = Eigen::SimplicialLDLT<SparseMatrix>;
  using CgSolver = Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper,
                                            Eigen::DiagonalPreconditioner<double>>;

  SolverSettings settings_;
  std::unique_ptr<SparseMatrix> matrix_;  // stable address for the CG reference
  std::unique_ptr<DirectSolver> direct_;
  std::unique_ptr<CgSolver> cg_;
};

/// One-shot solve of A x = b for SPD A.
Eigen::VectorXd solve_linear(const SparseMatrix& matrix, const Eigen::VectorXd& rhs,
                             const SolverSettings& settings);

struct SimulationState {
  double time = 0.0;
  long step = 0;
  Eigen::VectorXd temperatures;  // d, one entry per mesh node
  Eigen::VectorXd rates;         // v = du/dt, zero at prescribed nodes
};

/// Crank-Nicolson integrator for M v + K d = F on the free-node partition.
/// Prescribed nodes hold their temperatures exactly; both reduced operators
/// are factorized once at construction, so the time step and matrices stay
/// fixed for the stepper's lifetime. The SystemMatrices object must outlive
/// the stepper.
class CrankNicolson {
 public:
  CrankNicolson(const SystemMatrices& system, const SolverSettings& settings);

  const SolverSettings& settings() const { return settings_; }

  /// State at t = 0: temperatures from u0 with prescribed values enforced,
  /// rates from solving M v0 = F0 - K d0 on the free partition.
  SimulationState init_state(const Eigen::VectorXd& initial_temperatures,
                             const Eigen::VectorXd& initial_load) const;

  /// Advances one step given the load at the new time level. The identity
  /// M v = F - K d holds at every step by construction.
  void step(SimulationState& state, const Eigen::VectorXd& next_load) const;

 private:
  Eigen::VectorXd gather_free(const Eigen::VectorXd& full) const;
  void scatter_free(const Eigen::VectorXd& reduced, Eigen::VectorXd& full) const;

  const SystemMatrices* system_;
  SolverSettings settings_;
  Eigen::VectorXi free_map_;
  LinearSolver mass_solver_;
  LinearSolver step_solver_;
};

}  // namespace lts
