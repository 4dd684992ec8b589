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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "pathlab/annealer.hpp"
#include "pathlab/graph.hpp"

using namespace pathlab;
using cplx = std::complex<double>;

namespace {

StateVector random_state(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> d;
  StateVector v(Eigen::Index{1} << n);
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = cplx(d(rng), d(rng));
  return v / v.norm();
}

SpinConfig random_spins(std::mt19937_64& rng, int n) {
  SpinConfig x(n);
  for (int i = 0; i < n; ++i) x(i) = rng() & 1 ? 1 : -1;
  return x;
}

SchedulePlan constant_plan(double s, double T = 1.0) { return make_plan(AnnealPath{{{0, s}, {T, s}}}); }

// exp(-i H T) psi for a time-independent dense Hermitian H.
StateVector exact_propagate(const Eigen::MatrixXcd& H, const StateVector& psi, double T) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  Eigen::VectorXcd phases(H.rows());
  for (Eigen::Index k = 0; k < H.rows(); ++k) phases(k) = std::polar(1.0, -es.eigenvalues()(k) * T);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * psi;
}

std::vector<double> probabilities(const StateVector& psi) {
  std::vector<double> p(psi.size());
  for (Eigen::Index k = 0; k < psi.size(); ++k) p[k] = std::norm(psi(k));
  return p;
}

}  // namespace

TEST(Hamiltonian, TransverseFieldOnPlusState) {
  IsingModel m(1);
  StateVector plus = uniform_state(1);
  const auto out = apply_hamiltonian(m, default_anneal_functions(), 0.0, 1.0, plus);
  EXPECT_NEAR((out - (-0.5) * plus).norm(), 0.0, 1e-15);
}

TEST(Hamiltonian, ClassicalEndIsDiagonal) {
  IsingModel m(1);
  m.add_linear(0, 1.0);
  const Eigen::MatrixXd H = TransverseIsingOperator(m).dense(0.0, 1.0, 1.0);
  EXPECT_EQ(H(0, 0), 0.5);
  EXPECT_EQ(H(1, 1), -0.5);
  EXPECT_EQ(H(0, 1), 0.0);
}

TEST(Hamiltonian, MatchesKroneckerConstruction) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const auto raw = oracle::random_raw(rng, 3);
    const auto m = oracle::build<Vartype::Spin>(raw);
    const double a = 0.3 + 0.1 * trial, b = 0.9 - 0.1 * trial, g = -1.5 + trial;
    const Eigen::MatrixXcd ref = oracle::dense_hamiltonian(raw, a, b, g);
    TransverseIsingOperator op(m);
    for (Eigen::Index k = 0; k < 8; ++k) {
      StateVector e = StateVector::Zero(8);
      e(k) = 1.0;
      StateVector out;
      op.apply(a, b, g, e, out);
      EXPECT_NEAR((out - ref.col(k)).norm(), 0.0, 1e-13);
    }
    EXPECT_NEAR((op.dense(a, b, g).cast<cplx>() - ref).norm(), 0.0, 1e-13);
  }
}

TEST(Hamiltonian, Hermitian) {
  std::mt19937_64 rng(22);
  const auto m = oracle::build<Vartype::Spin>(oracle::random_raw(rng, 5));
  TransverseIsingOperator op(m);
  for (int trial = 0; trial < 20; ++trial) {
    const auto phi = random_state(rng, 5), psi = random_state(rng, 5);
    StateVector hpsi, hphi;
    op.apply(0.4, 0.7, 1.3, psi, hpsi);
    op.apply(0.4, 0.7, 1.3, phi, hphi);
    EXPECT_NEAR(std::abs(phi.dot(hpsi) - std::conj(psi.dot(hphi))), 0.0, 1e-10);
  }
}

TEST(Hamiltonian, DimensionMismatch) {
  IsingModel m(2);
  EXPECT_THROW(apply_hamiltonian(m, default_anneal_functions(), 0.5, 1.0, uniform_state(3)), std::invalid_argument);
}

TEST(InitState, ForwardIsUniform) {
  const auto psi = init_state(make_plan(forward_path(1.0)), 2, std::nullopt);
  for (Eigen::Index k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(psi(k) - cplx(0.5, 0)), 0.0, 1e-15);
}

TEST(InitState, ReverseIsBasisState) {
  SpinConfig x0(2);
  x0 << 1, -1;
  const auto psi = init_state(make_plan(reverse_path(1, 0.25, 0.75, 0.25)), 2, x0);
  EXPECT_EQ(psi(2), cplx(1.0, 0.0));
  EXPECT_NEAR(psi.norm(), 1.0, 1e-15);
  EXPECT_THROW(init_state(make_plan(reverse_path(1, 0.25, 0.75, 0.25)), 2, std::nullopt), std::invalid_argument);
}

TEST(InitState, HybridOnHomogenizedModelSetsSlackUp) {
  IsingModel m(2);
  m.add_linear(0, 0.5);
  m.add_quadratic(0, 1, 1.0);
  SpinConfig x0(2);
  x0 << -1, 1;
  const auto planted = plant(m, x0, 0.3, 0.2);
  const auto plan = make_plan(reverse_path(1, 0.25, 0.75, 0.25), hgain_path(1, 0.5, 2.5));
  const auto psi = init_state(plan, planted);
  SpinConfig expect(3);
  expect << -1, 1, 1;
  EXPECT_EQ(psi(static_cast<Eigen::Index>(bits_from_config<Vartype::Spin>(expect))), cplx(1.0, 0.0));
}

TEST(Evolve, ClassicalPlanPreservesBasisState) {
  std::mt19937_64 rng(23);
  const auto m = oracle::build<Vartype::Spin>(oracle::random_raw(rng, 4));
  const auto x0 = random_spins(rng, 4);
  const auto psi0 = basis_state(x0);
  const auto psi = evolve(psi0, constant_plan(1.0), m, {});
  const auto k = static_cast<Eigen::Index>(bits_from_config<Vartype::Spin>(x0));
  EXPECT_NEAR(std::norm(psi(k)), 1.0, 1e-12);
  const auto s = sample(psi, m, 200, 1);
  ASSERT_EQ(s.records.size(), 1u);
  EXPECT_EQ(s.records[0].config, x0);
}

TEST(Evolve, MatchesExactPropagationForFrozenHamiltonian) {
  std::mt19937_64 rng(24);
  const auto raw = oracle::random_raw(rng, 4);
  const auto m = oracle::build<Vartype::Spin>(raw);
  const auto psi0 = random_state(rng, 4);
  const double s = 0.4, T = 3.0;
  for (auto integrator : {Integrator::RK4, Integrator::SplitStep}) {
    SimConfig cfg;
    cfg.integrator = integrator;
    if (integrator == Integrator::SplitStep) cfg.dt = 1e-4;
    const auto psi = evolve(psi0, constant_plan(s, T), m, cfg);
    const auto ref = exact_propagate(oracle::dense_hamiltonian(raw, 1 - s, s, 1.0), psi0, T);
    EXPECT_NEAR((psi - ref).norm(), 0.0, integrator == Integrator::RK4 ? 1e-9 : 1e-6) << to_string(integrator);
  }
}

TEST(Evolve, SingleSpinAdiabaticLimit) {
  IsingModel m(1);
  m.add_linear(0, 1.0);
  const double T = 100.0;
  const auto psi = evolve(uniform_state(1), make_plan(forward_path(T)), m, {});
  // At s = 1 the Hamiltonian is diag(1/2, -1/2); its ground state is x = -1.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(Eigen::Matrix2d{{0.5, 0.0}, {0.0, -0.5}});
  const Eigen::Vector2d ground = es.eigenvectors().col(0);
  const double p = std::norm(ground(0) * psi(0) + ground(1) * psi(1));
  EXPECT_GE(p, 0.99);
  EXPECT_NEAR(p, std::norm(psi(1)), 1e-14);
}

TEST(Evolve, TwoLevelAdiabaticFollowsInstantaneousGroundState) {
  // The exact 2x2 eigenvector at s; the evolved state should stay close to it
  // for slow sweeps, and closer the slower the sweep.
  IsingModel m(1);
  m.add_linear(0, 1.0);
  auto infidelity = [&](double T) {
    const auto psi = evolve(uniform_state(1), make_plan(forward_path(T)), m, {});
    return 1.0 - std::norm(psi(1));
  };
  const double slow = infidelity(50.0), slower = infidelity(200.0);
  EXPECT_LT(slower, slow);
  EXPECT_LT(slower, 1e-3);
}

TEST(Evolve, NormDriftWithinBudget) {
  std::mt19937_64 rng(25);
  const auto m = oracle::build<Vartype::Spin>(oracle::random_raw(rng, 6));
  EvolutionReport rep;
  const double T = 5.0;
  evolve(uniform_state(6), make_plan(forward_path(T), hgain_path(T, 0.5, 2.5)), m, {}, &rep);
  EXPECT_EQ(rep.steps, 10000);
  EXPECT_LE(rep.accumulated_drift / T, 1e-8);
}

TEST(Evolve, StepHalvingConverges) {
  std::mt19937_64 rng(26);
  const auto m = oracle::build<Vartype::Spin>(oracle::random_raw(rng, 5));
  const auto plan = make_plan(forward_path(2.0));
  SimConfig coarse, fine;
  coarse.dt = 2e-3;
  fine.dt = 1e-3;
  const auto a = probabilities(evolve(uniform_state(5), plan, m, coarse));
  const auto b = probabilities(evolve(uniform_state(5), plan, m, fine));
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-6);
}

TEST(Evolve, UnstableStepAborts) {
  std::mt19937_64 rng(27);
  const auto m = oracle::build<Vartype::Spin>(oracle::random_raw(rng, 4));
  SimConfig cfg;
  cfg.dt = 5.0;
  EXPECT_THROW(evolve(uniform_state(4), make_plan(forward_path(50.0)), m, cfg), std::runtime_error);
}

TEST(Evolve, RejectsUnsupportedRequests) {
  IsingModel m(3);
  auto plan = make_plan(forward_path(1.0));
  plan.reinitialize = false;
  EXPECT_THROW(evolve(uniform_state(3), plan, m, {}), std::invalid_argument);
  SimConfig cfg;
  cfg.statevector_limit = 2;
  EXPECT_THROW(evolve(uniform_state(3), make_plan(forward_path(1.0)), m, cfg), std::invalid_argument);
}

TEST(Sample, BasisStateGivesOneRecord) {
  SpinConfig x(3);
  x << 1, -1, -1;
  IsingModel m(3);
  const auto s = sample(basis_state(x), m, 500, 4);
  ASSERT_EQ(s.records.size(), 1u);
  EXPECT_EQ(s.records[0].count, 500);
  EXPECT_EQ(s.shots, 500);
}

TEST(Sample, UniformFrequenciesWithinFourSigma) {
  IsingModel m(2);
  const std::int64_t shots = 100000;
  const auto s = sample(uniform_state(2), m, shots, 9);
  ASSERT_EQ(s.records.size(), 4u);
  const double sigma = std::sqrt(shots * 0.25 * 0.75);
  for (const auto& r : s.records) EXPECT_LT(std::abs(r.count - shots / 4.0), 4 * sigma);
}

TEST(Sample, DeterministicPerSeedAndEnergiesExact) {
  std::mt19937_64 rng(28);
  const auto m = oracle::build<Vartype::Spin>(oracle::random_raw(rng, 5));
  const auto psi = random_state(rng, 5);
  const auto a = sample(psi, m, 300, 77), b = sample(psi, m, 300, 77);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    EXPECT_EQ(a.records[k].config, b.records[k].config);
    EXPECT_EQ(a.records[k].count, b.records[k].count);
    EXPECT_EQ(a.records[k].energy, m.energy(a.records[k].config));
  }
}

TEST(Anneal, NoGainPathEqualsUnitGain) {
  std::mt19937_64 rng(29);
  const auto m = oracle::build<Vartype::Spin>(oracle::random_raw(rng, 4));
  const auto plain = evolve(uniform_state(4), make_plan(forward_path(1.0)), m, {});
  const auto unit = evolve(uniform_state(4), make_plan(forward_path(1.0), HGainPath{{{0, 1}, {1, 1}}}), m, {});
  EXPECT_NEAR((plain - unit).norm(), 0.0, 1e-14);
}

TEST(Anneal, ZeroGainOnPlantedModelEqualsQuadraticOnlyForward) {
  std::mt19937_64 rng(30);
  const auto g = gen_er_graph(5, 0.6, WeightRange{-1, 1}, std::nullopt, 3);
  const auto m = maxcut_ising(g);
  const auto planted = plant(m, random_spins(rng, 5), 0.7);
  const auto zero = make_plan(forward_path(1.0), hgain_path(1.0, 0.5, 0.0, 0.0));
  const auto a = probabilities(evolve(uniform_state(5), zero, planted.model, {}));
  const auto b = probabilities(evolve(uniform_state(5), make_plan(forward_path(1.0)), m, {}));
  double tv = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) tv += 0.5 * std::abs(a[k] - b[k]);
  EXPECT_LE(tv, 1e-12);
}

TEST(Anneal, NearlyClassicalReverseReturnsPlantedState) {
  std::mt19937_64 rng(31);
  const auto m = oracle::build<Vartype::Spin>(oracle::random_raw(rng, 5));
  const auto x0 = random_spins(rng, 5);
  const auto psi = evolve(basis_state(x0), make_plan(reverse_path(1.0, 0.25, 0.75, 1.0 - 1e-6)), m, {});
  EXPECT_GE(std::norm(psi(static_cast<Eigen::Index>(bits_from_config<Vartype::Spin>(x0)))), 0.999);
}

TEST(Anneal, MetadataAndSeedDeterminism) {
  std::mt19937_64 rng(32);
  const auto m = oracle::build<Vartype::Spin>(oracle::random_raw(rng, 4));
  SimConfig cfg;
  cfg.shots = 50;
  cfg.seed = 5;
  cfg.dt = 0.01;
  const auto a = anneal(m, make_plan(forward_path(1.0)), std::nullopt, cfg);
  const auto b = anneal(m, make_plan(forward_path(1.0)), std::nullopt, cfg);
  EXPECT_EQ(a.meta.at("backend"), "statevector");
  EXPECT_EQ(a.meta, b.meta);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) EXPECT_EQ(a.records[k].config, b.records[k].config);
  EXPECT_EQ(a.shots, 50);
}

TEST(Classical, ZeroTemperatureFromPlantedStateNeverClimbs) {
  std::mt19937_64 rng(33);
  const auto m = oracle::build<Vartype::Spin>(oracle::random_raw(rng, 6));
  const auto x0 = random_spins(rng, 6);
  SimConfig cfg;
  cfg.backend = Backend::Classical;
  cfg.shots = 100;
  cfg.classical_sweeps = 20;
  const auto s = anneal(m, constant_plan(1.0), x0, cfg);
  for (const auto& r : s.records) EXPECT_LE(r.energy, m.energy(x0) + 1e-12);
}

TEST(Classical, FindsMaxCutOnSmallGraphs) {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gen_er_graph(8, 0.5, WeightRange{-1, 1}, std::nullopt, 100 + seed);
    SimConfig cfg;
    cfg.backend = Backend::Classical;
    cfg.seed = seed;
    cfg.classical_sweeps = 200;
    const auto s = anneal(maxcut_ising(g), make_plan(forward_path(1.0)), std::nullopt, cfg);
    if (std::abs(cut_value(g, s.lowest().config) - oracle::maxcut_exhaustive(g)) < 1e-12) ++hits;
  }
  EXPECT_GE(hits, 9);
}

TEST(Classical, DeterministicPerSeed) {
  std::mt19937_64 rng(34);
  const auto m = oracle::build<Vartype::Spin>(oracle::random_raw(rng, 6));
  SimConfig cfg;
  cfg.backend = Backend::Classical;
  cfg.shots = 40;
  cfg.classical_sweeps = 50;
  cfg.seed = 8;
  const auto a = anneal(m, make_plan(forward_path(1.0)), std::nullopt, cfg);
  const auto b = anneal(m, make_plan(forward_path(1.0)), std::nullopt, cfg);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    EXPECT_EQ(a.records[k].config, b.records[k].config);
    EXPECT_EQ(a.records[k].count, b.records[k].count);
  }
}

TEST(Backends, NeitherReportsBelowTheGroundEnergy) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto g = gen_er_graph(7, 0.5, WeightRange{-1, 1}, std::nullopt, 200 + seed);
    const auto m = maxcut_ising(g);
    const double e0 = brute_force_solve(m).min_energy;
    SimConfig sv, cl;
    sv.dt = 0.01;
    cl.backend = Backend::Classical;
    cl.classical_sweeps = 100;
    const auto a = anneal(m, make_plan(forward_path(1.0)), std::nullopt, sv);
    const auto b = anneal(m, make_plan(forward_path(1.0)), std::nullopt, cl);
    EXPECT_GE(a.lowest().energy, e0 - 1e-12);
    EXPECT_GE(b.lowest().energy, e0 - 1e-12);
    for (const auto* s : {&a, &b}) {
      for (const auto& r : s->records) EXPECT_EQ(r.energy, m.energy(r.config));
    }
  }
}

TEST(Overlap, UniformAtStart) {
  std::mt19937_64 rng(35);
  const auto m = oracle::build<Vartype::Spin>(oracle::random_raw(rng, 4));
  EXPECT_NEAR(ground_state_overlap(m, make_plan(forward_path(1.0)), 0.0, uniform_state(4)), 1.0, 1e-10);
}

TEST(Overlap, ClassicalGroundStateAtEnd) {
  std::mt19937_64 rng(36);
  const auto m = oracle::build<Vartype::Spin>(oracle::random_raw(rng, 4));
  const auto x = brute_force_solve(m).minimizers.front();
  EXPECT_NEAR(ground_state_overlap(m, make_plan(forward_path(1.0)), 1.0, basis_state(x)), 1.0, 1e-10);
  EXPECT_NEAR(ground_state_probability(basis_state(x), m), 1.0, 1e-15);
}

TEST(Overlap, MatchesDenseEigenbasis) {
  std::mt19937_64 rng(37);
  const auto raw = oracle::random_raw(rng, 4);
  const auto m = oracle::build<Vartype::Spin>(raw);
  const auto psi = random_state(rng, 4);
  const double s = 0.37;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(oracle::dense_hamiltonian(raw, 1 - s, s, 1.0));
  const double expect = std::norm(es.eigenvectors().col(0).dot(psi));
  EXPECT_NEAR(ground_state_overlap(m, make_plan(forward_path(1.0)), s, psi), expect, 1e-10);
  EXPECT_NEAR(spectral_gap(m, default_anneal_functions(), s, 1.0), es.eigenvalues()(1) - es.eigenvalues()(0), 1e-10);
}
