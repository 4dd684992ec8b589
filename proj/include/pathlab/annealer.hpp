// Copyright 2026 The pathlab Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

// Closed-system simulation of the transverse-field anneal
//
//     H(t) = -A(s)/2 sum_i X_i + B(s)/2 (g(t) sum_i h_i Z_i + sum_{i<j} J_ij Z_i Z_j),
//     s = s(t),
//
// with hbar = 1 and dimensionless time. Basis index bit i set means x_i = -1,
// so Z_i acting on a basis state returns x_i. The model offset only shifts the
// global phase and is left out of H.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "pathlab/planting.hpp"
#include "pathlab/quadratic_model.hpp"
#include "pathlab/schedule.hpp"

namespace pathlab {

template <class Real>
using StateVectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
using StateVector = StateVectorT<double>;

/// Number of qubits represented by a state of size 2^n.
int qubit_count(const StateVector& psi);

enum class Integrator { RK4, SplitStep };
enum class Backend { StateVector, Classical };

const char* to_string(Integrator i);
const char* to_string(Backend b);
Integrator integrator_from_string(const std::string& s);
Backend backend_from_string(const std::string& s);

struct SimConfig {
  /// Integrator step in schedule time units; unset means T / 10000.
  std::optional<double> dt;
  Integrator integrator = Integrator::RK4;
  std::int64_t shots = 1000;
  std::uint64_t seed = 0;
  Backend backend = Backend::StateVector;
  int statevector_limit = 16;
  /// Largest system diagonalized densely by the spectral diagnostics.
  int dense_limit = 12;
  /// Evolution aborts when a single step changes the norm by more than this.
  double drift_abort = 1e-4;
  int classical_sweeps = 1000;
  double beta_scale = 1.0;
  double beta_min = 1e-3;
  double beta_max = 1e3;

  /// Throws std::invalid_argument for non-positive dt or shots.
  void validate() const;
};

/// The Hamiltonian of one model with its diagonal parts precomputed, applied
/// matrix-free: X terms as bit flips, Z terms as diagonal multiplications.
class TransverseIsingOperator {
 public:
  explicit TransverseIsingOperator(const IsingModel& model);

  int num_qubits() const { return n_; }
  Eigen::Index dimension() const { return diag_linear_.size(); }
  /// sum_i h_i x_i and sum_{i<j} J_ij x_i x_j per basis state.
  const Eigen::VectorXd& diag_linear() const { return diag_linear_; }
  const Eigen::VectorXd& diag_quadratic() const { return diag_quadratic_; }

  /// out = H(a, b, g) psi.
  void apply(double a, double b, double g, const StateVector& psi, StateVector& out) const;
  /// Dense real symmetric matrix of H(a, b, g).
  Eigen::MatrixXd dense(double a, double b, double g) const;

 private:
  int n_;
  Eigen::VectorXd diag_linear_;
  Eigen::VectorXd diag_quadratic_;
};

/// H(s, g) psi with H built from `functions` at anneal fraction s.
StateVector apply_hamiltonian(const IsingModel& model, const AnnealFunctions& functions, double s, double g,
                              const StateVector& psi);

/// Computational basis state for a spin configuration.
StateVector basis_state(const SpinConfig& spins);
/// Equal superposition, the ground state of -sum_i X_i.
StateVector uniform_state(int n);

/// Forward plans start in the uniform superposition; plans starting at s > 0
/// start in the basis state of `x0`, which is then required.
StateVector init_state(const SchedulePlan& plan, int n, const std::optional<SpinConfig>& x0);
/// As above, taking x0 (extended with z = +1) from a planted model.
StateVector init_state(const SchedulePlan& plan, const PlantedModel& planted);

struct EvolutionReport {
  long steps = 0;
  double dt = 0.0;
  /// Largest single-step deviation of the norm from 1 before renormalization.
  double max_step_drift = 0.0;
  /// Sum of the per-step deviations.
  double accumulated_drift = 0.0;
};

/// Integrates i d(psi)/dt = H(s(t), g(t)) psi from 0 to T. The state is
/// renormalized after every step; a step drifting by more than
/// cfg.drift_abort throws std::runtime_error.
StateVector evolve(const StateVector& psi, const SchedulePlan& plan, const IsingModel& model, const SimConfig& cfg,
                   EvolutionReport* report = nullptr);

/// Multinomial measurement in the computational basis, energies evaluated on
/// `model`. Deterministic in `seed`.
SampleSet sample(const StateVector& psi, const IsingModel& model, std::int64_t shots, std::uint64_t seed);

/// Initialize, evolve and sample. One evolution serves all shots: with the
/// state reinitialized before every anneal the shots are i.i.d. draws from the
/// same final state.
SampleSet anneal(const IsingModel& model, const SchedulePlan& plan, const std::optional<SpinConfig>& x0,
                 const SimConfig& cfg);

/// Metropolis single-spin-flip annealing with inverse temperature
/// beta(t) = beta_scale B(s(t)) / A(s(t)), clamped to [beta_min, beta_max],
/// and linear biases scaled by g(t). Each shot is an independent chain of
/// cfg.classical_sweeps sweeps, started from x0 when given and uniformly at
/// random otherwise.
SampleSet classical_anneal(const IsingModel& model, const SchedulePlan& plan, const std::optional<SpinConfig>& x0,
                           const SimConfig& cfg);

/// Squared overlap of psi with the ground eigenspace of H(s(t), g(t)).
/// Levels within `degeneracy_tol` of the lowest eigenvalue count as ground.
double ground_state_overlap(const IsingModel& model, const SchedulePlan& plan, double t, const StateVector& psi,
                            const SimConfig& cfg = {}, double degeneracy_tol = 1e-9);

/// E_1 - E_0 of H(s, g), counting multiplicity.
double spectral_gap(const IsingModel& model, const AnnealFunctions& functions, double s, double g,
                    const SimConfig& cfg = {});

/// Probability mass psi puts on the classical minimizers of `model`.
double ground_state_probability(const StateVector& psi, const IsingModel& model);

}  // namespace pathlab
