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

#include "pathlab/annealer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "pathlab/random.hpp"

namespace pathlab {

using cplx = std::complex<double>;

int qubit_count(const StateVector& psi) {
  const auto dim = static_cast<std::uint64_t>(psi.size());
  if (dim == 0 || !std::has_single_bit(dim)) throw std::invalid_argument("state size is not a power of two");
  return std::countr_zero(dim);
}

const char* to_string(Integrator i) { return i == Integrator::RK4 ? "rk4" : "split-step"; }
const char* to_string(Backend b) { return b == Backend::StateVector ? "statevector" : "classical"; }

Integrator integrator_from_string(const std::string& s) {
  if (s == "rk4") return Integrator::RK4;
  if (s == "split-step") return Integrator::SplitStep;
  throw std::invalid_argument("unknown integrator '" + s + "'");
}

Backend backend_from_string(const std::string& s) {
  if (s == "statevector") return Backend::StateVector;
  if (s == "classical") return Backend::Classical;
  throw std::invalid_argument("unknown backend '" + s + "'");
}

void SimConfig::validate() const {
  if (dt && !(*dt > 0.0)) throw std::invalid_argument("integrator step must be positive");
  if (shots < 1) throw std::invalid_argument("shots must be at least 1");
  if (classical_sweeps < 1) throw std::invalid_argument("classical sweeps must be at least 1");
  if (!(beta_min > 0.0 && beta_min <= beta_max)) throw std::invalid_argument("invalid inverse-temperature clamp");
}

// ---------------------------------------------------------------------------
// Hamiltonian

TransverseIsingOperator::TransverseIsingOperator(const IsingModel& model) : n_(model.num_variables()) {
  if (n_ > 30) throw std::invalid_argument("state-vector operator limited to 30 qubits");
  const Eigen::Index dim = Eigen::Index{1} << n_;
  diag_linear_ = Eigen::VectorXd::Zero(dim);
  diag_quadratic_ = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    auto spin = [k](int i) { return ((k >> i) & 1) ? -1.0 : 1.0; };
    double lin = 0.0;
    for (const auto& [i, h] : model.linear()) lin += h * spin(i);
    double quad = 0.0;
    for (const auto& [ij, J] : model.quadratic()) quad += J * spin(ij.first) * spin(ij.second);
    diag_linear_(k) = lin;
    diag_quadratic_(k) = quad;
  }
}

void TransverseIsingOperator::apply(double a, double b, double g, const StateVector& psi, StateVector& out) const {
  const Eigen::Index dim = dimension();
  if (psi.size() != dim) throw std::invalid_argument("state dimension does not match the Hamiltonian");
  out.resize(dim);
  const double half_b = 0.5 * b;
  const double half_a = 0.5 * a;
  const cplx* in = psi.data();
  cplx* o = out.data();
  const double* dl = diag_linear_.data();
  const double* dq = diag_quadratic_.data();
  for (Eigen::Index k = 0; k < dim; ++k) o[k] = half_b * (g * dl[k] + dq[k]) * in[k];
  if (half_a != 0.0) {
    for (int i = 0; i < n_; ++i) {
      const Eigen::Index mask = Eigen::Index{1} << i;
      for (Eigen::Index k = 0; k < dim; ++k) o[k] -= half_a * in[k ^ mask];
    }
  }
}

Eigen::MatrixXd TransverseIsingOperator::dense(double a, double b, double g) const {
  const Eigen::Index dim = dimension();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    H(k, k) = 0.5 * b * (g * diag_linear_(k) + diag_quadratic_(k));
    for (int i = 0; i < n_; ++i) H(k ^ (Eigen::Index{1} << i), k) -= 0.5 * a;
  }
  return H;
}

StateVector apply_hamiltonian(const IsingModel& model, const AnnealFunctions& functions, double s, double g,
                              const StateVector& psi) {
  if (psi.size() != (Eigen::Index{1} << model.num_variables())) {
    throw std::invalid_argument("state dimension does not match the model");
  }
  TransverseIsingOperator op(model);
  StateVector out;
  op.apply(functions.a(s), functions.b(s), g, psi, out);
  return out;
}

// ---------------------------------------------------------------------------
// States

StateVector basis_state(const SpinConfig& spins) {
  IsingModel(static_cast<int>(spins.size())).check_config(spins);
  StateVector psi = StateVector::Zero(Eigen::Index{1} << spins.size());
  psi(static_cast<Eigen::Index>(bits_from_config<Vartype::Spin>(spins))) = 1.0;
  return psi;
}

StateVector uniform_state(int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  return StateVector::Constant(dim, cplx(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
}

StateVector init_state(const SchedulePlan& plan, int n, const std::optional<SpinConfig>& x0) {
  if (!plan.needs_initial_state()) return uniform_state(n);
  if (!x0) throw std::invalid_argument("a plan starting at s > 0 needs an initial configuration");
  if (x0->size() != n) throw std::invalid_argument("initial configuration length does not match the model");
  return basis_state(*x0);
}

StateVector init_state(const SchedulePlan& plan, const PlantedModel& planted) {
  return init_state(plan, planted.model.num_variables(), planted.initial_state());
}

// ---------------------------------------------------------------------------
// Evolution

namespace {

struct Stepper {
  const TransverseIsingOperator& op;
  const SchedulePlan& plan;
  StateVector k1, k2, k3, k4, tmp;

  void hamiltonian(double t, const StateVector& psi, StateVector& out) const {
    const double T = plan.duration();
    t = std::clamp(t, 0.0, T);
    const double s = plan.s_at(t);
    op.apply(plan.functions.a(s), plan.functions.b(s), plan.gain_at(t), psi, out);
  }

  // Classical RK4 on d(psi)/dt = -i H(t) psi.
  void rk4(double t, double dt, StateVector& psi) {
    const cplx mi(0.0, -1.0);
    hamiltonian(t, psi, k1);
    k1 *= mi;
    tmp = psi + (0.5 * dt) * k1;
    hamiltonian(t + 0.5 * dt, tmp, k2);
    k2 *= mi;
    tmp = psi + (0.5 * dt) * k2;
    hamiltonian(t + 0.5 * dt, tmp, k3);
    k3 *= mi;
    tmp = psi + dt * k3;
    hamiltonian(t + dt, tmp, k4);
    k4 *= mi;
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  // Strang splitting with the Hamiltonian frozen at the step midpoint:
  // half diagonal phase, exact transverse rotation, half diagonal phase.
  void split(double t, double dt, StateVector& psi) const {
    const double tm = std::clamp(t + 0.5 * dt, 0.0, plan.duration());
    const double s = plan.s_at(tm);
    const double a = plan.functions.a(s);
    const double b = plan.functions.b(s);
    const double g = plan.gain_at(tm);
    const auto& dl = op.diag_linear();
    const auto& dq = op.diag_quadratic();
    const Eigen::Index dim = psi.size();
    auto diag_phase = [&](double h) {
      for (Eigen::Index k = 0; k < dim; ++k) {
        const double e = 0.5 * b * (g * dl(k) + dq(k));
        psi(k) *= std::polar(1.0, -e * h);
      }
    };
    diag_phase(0.5 * dt);
    // exp(i dt a/2 X) = cos(dt a/2) + i sin(dt a/2) X
    const double c = std::cos(0.5 * a * dt);
    const cplx is(0.0, std::sin(0.5 * a * dt));
    for (int i = 0; i < op.num_qubits(); ++i) {
      const Eigen::Index mask = Eigen::Index{1} << i;
      for (Eigen::Index k = 0; k < dim; ++k) {
        if (k & mask) continue;
        const cplx u = psi(k);
        const cplx v = psi(k | mask);
        psi(k) = c * u + is * v;
        psi(k | mask) = is * u + c * v;
      }
    }
    diag_phase(0.5 * dt);
  }
};

}  // namespace

StateVector evolve(const StateVector& psi0, const SchedulePlan& plan, const IsingModel& model, const SimConfig& cfg,
                   EvolutionReport* report) {
  cfg.validate();
  if (!plan.reinitialize) {
    throw std::invalid_argument("state carried between anneals (reinitialize = false) is not supported");
  }
  const int n = model.num_variables();
  if (n > cfg.statevector_limit) {
    throw std::invalid_argument("state-vector backend limited to " + std::to_string(cfg.statevector_limit) +
                                " qubits, model has " + std::to_string(n));
  }
  if (psi0.size() != (Eigen::Index{1} << n)) throw std::invalid_argument("state dimension does not match the model");

  const double T = plan.duration();
  const double dt_request = cfg.dt.value_or(T / 10000.0);
  const long steps = std::max<long>(1, static_cast<long>(std::ceil(T / dt_request - 1e-9)));
  const double dt = T / static_cast<double>(steps);

  TransverseIsingOperator op(model);
  Stepper stepper{op, plan, {}, {}, {}, {}, {}};
  StateVector psi = psi0;
  EvolutionReport rep{steps, dt, 0.0, 0.0};
  for (long step = 0; step < steps; ++step) {
    const double t = T * static_cast<double>(step) / static_cast<double>(steps);
    if (cfg.integrator == Integrator::RK4) {
      stepper.rk4(t, dt, psi);
    } else {
      stepper.split(t, dt, psi);
    }
    const double norm = psi.norm();
    const double drift = std::abs(norm - 1.0);
    if (!(drift <= cfg.drift_abort)) {
      std::ostringstream msg;
      msg << "integration unstable: norm drifted by " << drift << " at t = " << t << " (dt = " << dt
          << "); reduce the step size";
      throw std::runtime_error(msg.str());
    }
    rep.max_step_drift = std::max(rep.max_step_drift, drift);
    rep.accumulated_drift += drift;
    psi /= norm;
  }
  if (report) *report = rep;
  return psi;
}

// ---------------------------------------------------------------------------
// Measurement

namespace {

SampleSet records_from_counts(const std::map<std::uint64_t, std::int64_t>& counts, const IsingModel& model) {
  SampleSet out;
  const int n = model.num_variables();
  for (const auto& [bits, count] : counts) {
    SpinConfig x = config_from_bits<Vartype::Spin>(n, bits);
    out.records.push_back({x, count, model.energy(x)});
  }
  canonicalize(out);
  return out;
}

}  // namespace

SampleSet sample(const StateVector& psi, const IsingModel& model, std::int64_t shots, std::uint64_t seed) {
  if (psi.size() != (Eigen::Index{1} << model.num_variables())) {
    throw std::invalid_argument("state dimension does not match the model");
  }
  if (shots < 1) throw std::invalid_argument("shots must be at least 1");
  std::vector<double> cumulative(psi.size());
  double total = 0.0;
  for (Eigen::Index k = 0; k < psi.size(); ++k) {
    total += std::norm(psi(k));
    cumulative[k] = total;
  }
  Rng rng(seed);
  std::map<std::uint64_t, std::int64_t> counts;
  for (std::int64_t shot = 0; shot < shots; ++shot) {
    const double u = canonical(rng) * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    auto k = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cumulative.begin(), psi.size() - 1));
    // Never report a zero-probability state because of rounding in the sum.
    while (std::norm(psi(static_cast<Eigen::Index>(k))) == 0.0 && k > 0) --k;
    ++counts[k];
  }
  SampleSet out = records_from_counts(counts, model);
  out.meta["seed"] = std::to_string(seed);
  return out;
}

namespace {

std::string plan_digest(const SchedulePlan& plan) {
  std::uint64_t h = label_hash("plan");
  auto mix = [&h](double v) { h = splitmix64(h ^ std::bit_cast<std::uint64_t>(v)); };
  for (const auto& p : plan.anneal.points) {
    mix(p.t);
    mix(p.value);
  }
  if (plan.hgain) {
    mix(-1.0);
    for (const auto& p : plan.hgain->points) {
      mix(p.t);
      mix(p.value);
    }
  }
  for (Eigen::Index k = 0; k < plan.functions.grid().size(); ++k) {
    mix(plan.functions.grid()(k));
    mix(plan.functions.a_values()(k));
    mix(plan.functions.b_values()(k));
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

SampleSet anneal(const IsingModel& model, const SchedulePlan& plan, const std::optional<SpinConfig>& x0,
                 const SimConfig& cfg) {
  cfg.validate();
  if (!plan.reinitialize) {
    throw std::invalid_argument("state carried between anneals (reinitialize = false) is not supported");
  }
  if (cfg.backend == Backend::Classical) return classical_anneal(model, plan, x0, cfg);
  StateVector psi = init_state(plan, model.num_variables(), x0);
  psi = evolve(psi, plan, model, cfg);
  SampleSet out = sample(psi, model, cfg.shots, cfg.seed);
  out.meta["backend"] = to_string(Backend::StateVector);
  out.meta["integrator"] = to_string(cfg.integrator);
  out.meta["plan"] = plan_digest(plan);
  return out;
}

SampleSet classical_anneal(const IsingModel& model, const SchedulePlan& plan, const std::optional<SpinConfig>& x0,
                           const SimConfig& cfg) {
  cfg.validate();
  const int n = model.num_variables();
  if (x0) {
    if (x0->size() != n) throw std::invalid_argument("initial configuration length does not match the model");
    model.check_config(*x0);
  } else if (plan.needs_initial_state()) {
    throw std::invalid_argument("a plan starting at s > 0 needs an initial configuration");
  }

  const Eigen::MatrixXd J = model.dense_couplings();
  const Eigen::VectorXd h = model.dense_fields();
  const double T = plan.duration();
  const int sweeps = cfg.classical_sweeps;

  std::vector<double> beta(sweeps), gain(sweeps);
  for (int k = 0; k < sweeps; ++k) {
    const double t = T * (k + 0.5) / sweeps;
    const double s = plan.s_at(t);
    const double a = plan.functions.a(s);
    const double b = plan.functions.b(s);
    const double raw = a > 0.0 ? cfg.beta_scale * b / a : cfg.beta_max;
    beta[k] = std::clamp(raw, cfg.beta_min, cfg.beta_max);
    gain[k] = plan.gain_at(t);
  }

  std::map<std::uint64_t, std::int64_t> counts;
  Eigen::VectorXd x(n), field(n);
  for (std::int64_t shot = 0; shot < cfg.shots; ++shot) {
    Rng rng(derive_seed(cfg.seed, {label_hash("classical-chain"), static_cast<std::uint64_t>(shot)}));
    for (int i = 0; i < n; ++i) x(i) = x0 ? (*x0)(i) : (canonical(rng) < 0.5 ? -1.0 : 1.0);
    field = J * x;
    for (int k = 0; k < sweeps; ++k) {
      for (int i = 0; i < n; ++i) {
        const double delta_e = -2.0 * x(i) * (gain[k] * h(i) + field(i));
        if (delta_e <= 0.0 || canonical(rng) < std::exp(-beta[k] * delta_e)) {
          field += (-2.0 * x(i)) * J.col(i);
          x(i) = -x(i);
        }
      }
    }
    ++counts[bits_from_config<Vartype::Spin>(x.cast<int>())];
  }
  SampleSet out = records_from_counts(counts, model);
  out.meta["seed"] = std::to_string(cfg.seed);
  out.meta["backend"] = to_string(Backend::Classical);
  out.meta["plan"] = plan_digest(plan);
  return out;
}

// ---------------------------------------------------------------------------
// Spectral diagnostics

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> diagonalize(const IsingModel& model, double a, double b, double g,
                                                           const SimConfig& cfg, bool vectors) {
  if (model.num_variables() > cfg.dense_limit) {
    throw std::invalid_argument("dense diagonalization limited to " + std::to_string(cfg.dense_limit) + " qubits");
  }
  TransverseIsingOperator op(model);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(op.dense(a, b, g),
                                                        vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
}

}  // namespace

double ground_state_overlap(const IsingModel& model, const SchedulePlan& plan, double t, const StateVector& psi,
                            const SimConfig& cfg, double degeneracy_tol) {
  if (psi.size() != (Eigen::Index{1} << model.num_variables())) {
    throw std::invalid_argument("state dimension does not match the model");
  }
  const double s = plan.s_at(t);
  auto es = diagonalize(model, plan.functions.a(s), plan.functions.b(s), plan.gain_at(t), cfg, true);
  const auto& values = es.eigenvalues();
  const double e0 = values(0);
  const double tol = degeneracy_tol * std::max(1.0, std::abs(e0));
  double overlap = 0.0;
  for (Eigen::Index k = 0; k < values.size() && values(k) <= e0 + tol; ++k) {
    overlap += std::norm(es.eigenvectors().col(k).cast<cplx>().dot(psi));
  }
  return overlap;
}

double spectral_gap(const IsingModel& model, const AnnealFunctions& functions, double s, double g,
                    const SimConfig& cfg) {
  auto es = diagonalize(model, functions.a(s), functions.b(s), g, cfg, false);
  const auto& values = es.eigenvalues();
  return values.size() < 2 ? 0.0 : values(1) - values(0);
}

double ground_state_probability(const StateVector& psi, const IsingModel& model) {
  if (psi.size() != (Eigen::Index{1} << model.num_variables())) {
    throw std::invalid_argument("state dimension does not match the model");
  }
  double p = 0.0;
  for (const auto& x : brute_force_solve(model).minimizers) {
    p += std::norm(psi(static_cast<Eigen::Index>(bits_from_config<Vartype::Spin>(x))));
  }
  return p;
}

}  // namespace pathlab
