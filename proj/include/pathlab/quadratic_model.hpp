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

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace pathlab {

enum class Vartype { Spin, Binary };

inline const char* to_string(Vartype v) { return v == Vartype::Spin ? "ising" : "qubo"; }

/// A configuration of model variables, one entry per variable.
///
/// Entries are in {-1, +1} for spin models and {0, 1} for binary models; the
/// domain is carried by the model type the configuration is evaluated against.
using SpinConfig = Eigen::VectorXi;

/// Quadratic pseudo-Boolean model
///
///     E(x) = offset + sum_i h_i x_i + sum_{i<j} J_ij x_i x_j
///
/// with sparse coefficient storage. The variable domain is fixed at compile
/// time by `V`; `Bias` is the scalar type of all coefficients.
template <class Bias, Vartype V>
class QuadraticModel {
 public:
  using bias_type = Bias;
  using index_type = int;
  using pair_type = std::pair<int, int>;
  static constexpr Vartype vartype = V;

  QuadraticModel() = default;
  explicit QuadraticModel(int num_variables) : n_(num_variables) {
    if (num_variables < 0) throw std::invalid_argument("negative variable count");
  }

  int num_variables() const { return n_; }
  std::size_t num_interactions() const { return quadratic_.size(); }

  const std::map<int, Bias>& linear() const { return linear_; }
  const std::map<pair_type, Bias>& quadratic() const { return quadratic_; }
  Bias offset() const { return offset_; }

  Bias linear(int i) const {
    auto it = linear_.find(i);
    return it == linear_.end() ? Bias(0) : it->second;
  }

  Bias quadratic(int i, int j) const {
    if (i > j) std::swap(i, j);
    auto it = quadratic_.find({i, j});
    return it == quadratic_.end() ? Bias(0) : it->second;
  }

  /// True when at least one linear coefficient is nonzero.
  bool has_linear() const {
    for (const auto& [i, h] : linear_)
      if (h != Bias(0)) return true;
    return false;
  }

  void add_linear(int i, Bias h) {
    check_index(i);
    check_finite(h);
    linear_[i] += h;
  }

  void add_quadratic(int i, int j, Bias J) {
    check_index(i);
    check_index(j);
    check_finite(J);
    if (i == j) throw std::invalid_argument("self-interaction on variable " + std::to_string(i));
    if (i > j) std::swap(i, j);
    quadratic_[{i, j}] += J;
  }

  void set_offset(Bias c) {
    check_finite(c);
    offset_ = c;
  }
  void add_offset(Bias c) { set_offset(offset_ + c); }

  /// Appends `count` fresh variables with no terms and returns the index of
  /// the first one.
  int add_variables(int count) {
    int first = n_;
    n_ += count;
    return first;
  }

  static bool in_domain(int value) {
    if constexpr (V == Vartype::Spin) {
      return value == -1 || value == 1;
    } else {
      return value == 0 || value == 1;
    }
  }

  template <class Derived>
  void check_config(const Eigen::MatrixBase<Derived>& x) const {
    if (x.size() != n_) {
      throw std::invalid_argument("configuration length " + std::to_string(x.size()) +
                                  " does not match model size " + std::to_string(n_));
    }
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (!in_domain(static_cast<int>(x(i)))) {
        throw std::invalid_argument("configuration entry " + std::to_string(i) +
                                    " outside the " + to_string(V) + " domain");
      }
    }
  }

  /// Energy of `x`, validated against length and domain.
  template <class Derived>
  Bias energy(const Eigen::MatrixBase<Derived>& x) const {
    check_config(x);
    return energy_unchecked(x);
  }

  template <class Derived>
  Bias energy_unchecked(const Eigen::MatrixBase<Derived>& x) const {
    Bias e = offset_;
    for (const auto& [i, h] : linear_) e += h * Bias(x(i));
    for (const auto& [ij, J] : quadratic_) e += J * Bias(x(ij.first)) * Bias(x(ij.second));
    return e;
  }

  /// Sum of absolute coefficient values, used to scale tolerances.
  Bias magnitude() const {
    Bias m = std::abs(offset_);
    for (const auto& [i, h] : linear_) m += std::abs(h);
    for (const auto& [ij, J] : quadratic_) m += std::abs(J);
    return m;
  }

  /// Dense views: symmetric coupling matrix with zero diagonal and the field
  /// vector.
  Eigen::Matrix<Bias, Eigen::Dynamic, Eigen::Dynamic> dense_couplings() const {
    Eigen::Matrix<Bias, Eigen::Dynamic, Eigen::Dynamic> J =
        Eigen::Matrix<Bias, Eigen::Dynamic, Eigen::Dynamic>::Zero(n_, n_);
    for (const auto& [ij, c] : quadratic_) {
      J(ij.first, ij.second) = c;
      J(ij.second, ij.first) = c;
    }
    return J;
  }

  Eigen::Matrix<Bias, Eigen::Dynamic, 1> dense_fields() const {
    Eigen::Matrix<Bias, Eigen::Dynamic, 1> h = Eigen::Matrix<Bias, Eigen::Dynamic, 1>::Zero(n_);
    for (const auto& [i, c] : linear_) h(i) = c;
    return h;
  }

  friend bool operator==(const QuadraticModel& a, const QuadraticModel& b) {
    return a.n_ == b.n_ && a.offset_ == b.offset_ && a.linear_ == b.linear_ &&
           a.quadratic_ == b.quadratic_;
  }

 private:
  void check_index(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("variable index " + std::to_string(i) + " out of range");
  }
  static void check_finite(Bias b) {
    if (!std::isfinite(static_cast<double>(b))) throw std::invalid_argument("non-finite coefficient");
  }

  int n_ = 0;
  std::map<int, Bias> linear_;
  std::map<pair_type, Bias> quadratic_;
  Bias offset_ = Bias(0);
};

template <class Bias>
using IsingModelT = QuadraticModel<Bias, Vartype::Spin>;
template <class Bias>
using QuboModelT = QuadraticModel<Bias, Vartype::Binary>;

using IsingModel = IsingModelT<double>;
using QuboModel = QuboModelT<double>;

template <class Bias, Vartype V>
Bias energy(const QuadraticModel<Bias, V>& model, const SpinConfig& x) {
  return model.energy(x);
}

/// Maps basis index bits to a configuration. For spin models bit i set means
/// x_i = -1; for binary models bit i set means x_i = 1.
template <Vartype V>
SpinConfig config_from_bits(int n, std::uint64_t bits) {
  SpinConfig x(n);
  for (int i = 0; i < n; ++i) {
    bool set = (bits >> i) & 1u;
    if constexpr (V == Vartype::Spin) {
      x(i) = set ? -1 : 1;
    } else {
      x(i) = set ? 1 : 0;
    }
  }
  return x;
}

template <Vartype V>
std::uint64_t bits_from_config(const SpinConfig& x) {
  std::uint64_t bits = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    bool set = V == Vartype::Spin ? x(i) == -1 : x(i) == 1;
    if (set) bits |= std::uint64_t{1} << i;
  }
  return bits;
}

/// Substitutes x = (s + 1) / 2. Energies agree on related configurations,
/// offset included.
template <class Bias>
IsingModelT<Bias> qubo_to_ising(const QuboModelT<Bias>& q) {
  IsingModelT<Bias> ising(q.num_variables());
  Bias offset = q.offset();
  for (const auto& [i, a] : q.linear()) {
    ising.add_linear(i, a / 2);
    offset += a / 2;
  }
  for (const auto& [ij, b] : q.quadratic()) {
    ising.add_quadratic(ij.first, ij.second, b / 4);
    ising.add_linear(ij.first, b / 4);
    ising.add_linear(ij.second, b / 4);
    offset += b / 4;
  }
  ising.set_offset(offset);
  return ising;
}

/// Inverse substitution s = 2x - 1.
template <class Bias>
QuboModelT<Bias> ising_to_qubo(const IsingModelT<Bias>& m) {
  QuboModelT<Bias> q(m.num_variables());
  Bias offset = m.offset();
  for (const auto& [i, h] : m.linear()) {
    q.add_linear(i, 2 * h);
    offset -= h;
  }
  for (const auto& [ij, J] : m.quadratic()) {
    q.add_quadratic(ij.first, ij.second, 4 * J);
    q.add_linear(ij.first, -2 * J);
    q.add_linear(ij.second, -2 * J);
    offset += J;
  }
  q.set_offset(offset);
  return q;
}

/// Spin <-> binary configuration conversion under x = (s + 1) / 2.
inline SpinConfig spins_to_binary(const SpinConfig& s) { return (s.array() + 1) / 2; }
inline SpinConfig binary_to_spins(const SpinConfig& x) { return 2 * x.array() - 1; }

template <class Bias>
struct Homogenized {
  IsingModelT<Bias> model;
  std::optional<int> slack_index;
};

/// Moves every linear term onto a coupler with a new slack variable z, so that
/// the result evaluated at z = +1 reproduces the input exactly. Models without
/// linear terms are returned unchanged with no slack.
template <class Bias>
Homogenized<Bias> homogenize(const IsingModelT<Bias>& m) {
  if (!m.has_linear()) return {m, std::nullopt};
  IsingModelT<Bias> out(m.num_variables());
  const int z = out.add_variables(1);
  for (const auto& [i, h] : m.linear())
    if (h != Bias(0)) out.add_quadratic(i, z, h);
  for (const auto& [ij, J] : m.quadratic()) out.add_quadratic(ij.first, ij.second, J);
  out.set_offset(m.offset());
  return {std::move(out), z};
}

inline constexpr int kDefaultExhaustiveLimit = 24;

template <class Bias>
struct BruteForceResult {
  Bias min_energy;
  std::vector<SpinConfig> minimizers;
};

/// Exact global minimum and every minimizer by Gray-code enumeration.
///
/// The running energy is updated incrementally; candidates within a loose
/// tolerance are re-evaluated exactly before ties are decided.
template <class Bias, Vartype V>
BruteForceResult<Bias> brute_force_solve(const QuadraticModel<Bias, V>& model,
                                         int limit = kDefaultExhaustiveLimit) {
  const int n = model.num_variables();
  if (n > limit || n > 62) {
    throw std::invalid_argument("exhaustive search over " + std::to_string(n) +
                                " variables exceeds limit " + std::to_string(limit));
  }
  const auto J = model.dense_couplings();
  const auto h = model.dense_fields();

  SpinConfig x = config_from_bits<V>(n, 0);
  // field(i) = h_i + sum_j J_ij x_j
  Eigen::Matrix<Bias, Eigen::Dynamic, 1> field = h + J * x.template cast<Bias>();
  Bias e = model.energy_unchecked(x);

  const Bias scale = model.magnitude() + Bias(1);
  const Bias loose = Bias(1e-9) * scale;
  Bias best = e;
  std::vector<std::uint64_t> candidates{0};

  const std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t bits = 0;
  for (std::uint64_t k = 1; k < total; ++k) {
    const int flip = std::countr_zero(k);
    const int old_value = x(flip);
    const int new_value = V == Vartype::Spin ? -old_value : 1 - old_value;
    const Bias delta = Bias(new_value - old_value);
    e += delta * field(flip);
    x(flip) = new_value;
    field += delta * J.col(flip);
    bits ^= std::uint64_t{1} << flip;

    if (e < best - loose) {
      best = e;
      candidates.clear();
      candidates.push_back(bits);
    } else if (e <= best + loose) {
      candidates.push_back(bits);
      if (e < best) best = e;
    }
  }

  std::vector<std::pair<Bias, std::uint64_t>> exact;
  exact.reserve(candidates.size());
  Bias exact_min = std::numeric_limits<Bias>::infinity();
  for (auto c : candidates) {
    Bias ec = model.energy_unchecked(config_from_bits<V>(n, c));
    exact.emplace_back(ec, c);
    exact_min = std::min(exact_min, ec);
  }
  std::sort(exact.begin(), exact.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  BruteForceResult<Bias> result{exact_min, {}};
  const Bias tie = Bias(1e-12) * scale;
  for (const auto& [ec, c] : exact)
    if (ec <= exact_min + tie) result.minimizers.push_back(config_from_bits<V>(n, c));
  return result;
}

}  // namespace pathlab
