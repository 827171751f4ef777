// Copyright 2026 The steercert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "steercert/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "steercert/selftest.hpp"

namespace steercert::rigidity {

namespace {

constexpr std::size_t kNoWire = std::numeric_limits<std::size_t>::max();

Matrix basis_projector(std::size_t s) {
  Matrix p = Matrix::Zero(2, 2);
  p(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)) = 1.0;
  return p;
}

std::vector<Matrix> eigen_split(const Matrix& obs) {
  const Matrix id = identity(static_cast<std::size_t>(obs.rows()));
  return {0.5 * (id + obs), 0.5 * (id - obs)};
}

// Factored state over numbered wires. Every factor holds disjoint wires.
class Engine {
 public:
  explicit Engine(const std::vector<Factor>& state) {
    for (const Factor& f : state) {
      if (f.wires.size() != f.rho.dims().size()) throw std::invalid_argument("factor wires do not match its dims");
      for (std::size_t k = 0; k < f.wires.size(); ++k) {
        const std::size_t w = f.wires[k];
        if (w >= dims_.size()) dims_.resize(w + 1, 0);
        if (dims_[w] != 0) throw std::invalid_argument("wire " + std::to_string(w) + " appears in two factors");
        dims_[w] = f.rho.dims()[k];
      }
      factors_.push_back(f);
    }
  }

  std::size_t wire_dim(std::size_t w) const {
    if (w >= dims_.size() || dims_[w] == 0) throw std::invalid_argument("unknown wire " + std::to_string(w));
    return dims_[w];
  }

  // Index of a factor holding every listed wire, merging factors as needed.
  std::size_t merge(const std::vector<std::size_t>& wires) {
    std::vector<std::size_t> idx;
    for (std::size_t w : wires) {
      const std::size_t f = find(w);
      if (std::find(idx.begin(), idx.end(), f) == idx.end()) idx.push_back(f);
    }
    std::sort(idx.begin(), idx.end());
    if (idx.size() == 1) return idx.front();
    Factor joined = factors_[idx[0]];
    for (std::size_t i = 1; i < idx.size(); ++i) {
      const Factor& other = factors_[idx[i]];
      check_cap(joined.rho.dimension() * other.rho.dimension());
      joined.rho = tensor_product(joined.rho, other.rho);
      joined.wires.insert(joined.wires.end(), other.wires.begin(), other.wires.end());
    }
    for (std::size_t i = idx.size(); i-- > 1;) factors_.erase(factors_.begin() + static_cast<std::ptrdiff_t>(idx[i]));
    factors_[idx[0]] = std::move(joined);
    return idx[0];
  }

  // Non-selective measurement of the projectors on `wire`, outcome s written
  // into a fresh qubit register as |s>. Returns the register's wire id.
  std::size_t record(std::size_t wire, const std::vector<Matrix>& projectors) {
    const std::size_t f = merge({wire});
    Factor& fac = factors_[f];
    check_cap(fac.rho.dimension() * 2);
    const std::size_t p = position(fac, wire);
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(fac.rho.dimension() * 2),
                              static_cast<Eigen::Index>(fac.rho.dimension() * 2));
    for (std::size_t s = 0; s < projectors.size(); ++s) {
      out += kron(conjugate_local(projectors[s], p, fac.rho.dims(), fac.rho.entries()), basis_projector(s));
    }
    Dims d = fac.rho.dims();
    d.push_back(2);
    const std::size_t reg = new_wire(2);
    fac.rho = DensityMatrix(std::move(out), std::move(d));
    fac.wires.push_back(reg);
    return reg;
  }

  std::size_t add_register(const Matrix& rho2) {
    const std::size_t reg = new_wire(2);
    factors_.push_back({DensityMatrix(rho2, {2}), {reg}});
    return reg;
  }

  // Probability that two outcome registers hold equal values.
  double agreement(std::size_t r1, std::size_t r2) {
    const std::size_t f = merge({r1, r2});
    const Factor& fac = factors_[f];
    const DensityMatrix m = partial_trace(fac.rho, sorted_positions(fac, {r1, r2}));
    return (m.entries()(0, 0) + m.entries()(3, 3)).real();
  }

  void trace_out(const std::vector<std::size_t>& wires) {
    for (std::size_t w : wires) {
      const std::size_t f = find(w);
      Factor& fac = factors_[f];
      std::vector<std::size_t> keep;
      for (std::size_t k = 0; k < fac.wires.size(); ++k) {
        if (fac.wires[k] != w) keep.push_back(k);
      }
      if (keep.empty()) {
        factors_.erase(factors_.begin() + static_cast<std::ptrdiff_t>(f));
        continue;
      }
      std::vector<std::size_t> kept_wires;
      for (std::size_t k : keep) kept_wires.push_back(fac.wires[k]);
      fac.rho = partial_trace(fac.rho, keep);
      fac.wires = std::move(kept_wires);
    }
  }

  bool holds(std::size_t w) const {
    for (const Factor& f : factors_) {
      if (std::find(f.wires.begin(), f.wires.end(), w) != f.wires.end()) return true;
    }
    return false;
  }

  std::vector<std::size_t> all_wires() const {
    std::vector<std::size_t> out;
    for (const Factor& f : factors_) out.insert(out.end(), f.wires.begin(), f.wires.end());
    return out;
  }

  // Joint state of every remaining wire, in the requested order.
  DensityMatrix collect(const std::vector<std::size_t>& order) {
    if (order.empty()) throw std::invalid_argument("nothing kept");
    const std::size_t f = merge(order);
    if (factors_.size() != 1) throw std::logic_error("evolution left untracked wires");
    const Factor& fac = factors_[f];
    std::vector<std::size_t> perm;
    for (std::size_t w : order) perm.push_back(position(fac, w));
    return permute_subsystems(fac.rho, perm);
  }

 private:
  std::size_t find(std::size_t w) const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (std::find(factors_[i].wires.begin(), factors_[i].wires.end(), w) != factors_[i].wires.end()) return i;
    }
    throw std::invalid_argument("wire " + std::to_string(w) + " is not part of the state");
  }

  static std::size_t position(const Factor& f, std::size_t w) {
    return static_cast<std::size_t>(std::find(f.wires.begin(), f.wires.end(), w) - f.wires.begin());
  }

  static std::vector<std::size_t> sorted_positions(const Factor& f, std::vector<std::size_t> wires) {
    std::vector<std::size_t> pos;
    for (std::size_t w : wires) pos.push_back(position(f, w));
    // partial_trace keeps original relative order; agreement() is symmetric.
    std::sort(pos.begin(), pos.end());
    return pos;
  }

  std::size_t new_wire(std::size_t dim) {
    dims_.push_back(dim);
    return dims_.size() - 1;
  }

  static void check_cap(std::size_t dim) {
    if (dim > kMaxDimension) throw std::length_error("evolution exceeds the desk-scale dimension cap of 4096");
  }

  std::vector<Factor> factors_;
  std::vector<std::size_t> dims_;
};

Strategy pair_layout(std::size_t N, std::size_t K, const StateVector& pair, const Matrix& b0, const Matrix& b1) {
  if (N == 0 || K == 0 || K % 2 != 0) throw std::invalid_argument("need N >= 1 and even K >= 2");
  Strategy s;
  s.N = N;
  s.K = K;
  s.rounds.assign(N, std::vector<RoundOps>(K));
  const DensityMatrix rho = DensityMatrix::from_pure(pair);
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t k = 0; k < K; ++k) {
      const std::size_t base = 2 * (j * K + k);
      s.state.push_back({rho, {base, base + 1}});
      RoundOps& op = s.rounds[j][k];
      op.alice_wire = base;
      op.bob.kind = BobKind::measure;
      op.bob.obs0 = b0;
      op.bob.obs1 = b1;
      op.bob.wire = base + 1;
    }
  }
  return s;
}

}  // namespace

Strategy honest_pairs(std::size_t N, std::size_t K) { return pair_layout(N, K, bell_psi_plus(), pauli_x(), pauli_y()); }

Strategy witness_pairs(std::size_t N, std::size_t K, double epsilon) {
  const selftest::Witness w = selftest::tightness_witness(epsilon);
  return pair_layout(N, K, w.psi, w.b0.matrix(), w.b1.matrix());
}

Strategy with_bob_kind(Strategy s, BobKind kind) {
  for (auto& game : s.rounds) {
    for (RoundOps& op : game) {
      op.bob.kind = kind;
      if (kind == BobKind::fixed) op.bob.fixed_answer = 1;
    }
  }
  return s;
}

Strategy guessing_strategy(const Strategy& s) { return with_bob_kind(s, BobKind::guess); }

RoundSample sample_rounds(std::size_t N, std::size_t K, Rng& rng) {
  if (N == 0 || K == 0 || K % 2 != 0) throw std::invalid_argument("need N >= 1 and even K >= 2");
  RoundSample out;
  for (std::size_t j = 0; j < N; ++j) {
    std::vector<int> r(K, 1);
    std::fill(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(K / 2), 0);
    rng.shuffle(r);
    out.settings.push_back(std::move(r));
    out.R.push_back(static_cast<std::size_t>(rng.below(K)));
  }
  return out;
}

Evolution evolve(const Strategy& s, const RoundSample& sample) {
  if (s.rounds.size() != s.N || sample.settings.size() != s.N || sample.R.size() != s.N) {
    throw std::invalid_argument("strategy and sample disagree on N");
  }
  const Observable a0(s.a0);
  const Observable a1(s.a1);
  const std::vector<Matrix> alice_split[2] = {eigen_split(a0.matrix()), eigen_split(a1.matrix())};
  const std::vector<Matrix> copy_split = {basis_projector(0), basis_projector(1)};

  Engine eng(s.state);

  // Last round (flattened j*K + k) touching each wire.
  std::map<std::size_t, std::size_t> last_use;
  for (std::size_t j = 0; j < s.N; ++j) {
    if (s.rounds[j].size() != s.K || sample.settings[j].size() != s.K) {
      throw std::invalid_argument("strategy and sample disagree on K");
    }
    for (std::size_t k = 0; k < s.K; ++k) {
      last_use[s.rounds[j][k].alice_wire] = j * s.K + k;
      last_use[s.rounds[j][k].bob.wire] = j * s.K + k;
    }
  }
  std::vector<std::size_t> idle;
  for (std::size_t w : eng.all_wires()) {
    if (!last_use.count(w)) idle.push_back(w);
  }
  eng.trace_out(idle);

  std::vector<double> correlations;
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < s.N; ++j) {
    double wins = 0.0;
    for (std::size_t k = 0; k < s.K; ++k) {
      const std::size_t t = j * s.K + k;
      const RoundOps& op = s.rounds[j][k];
      const int r = sample.settings[j][k];
      if (op.alice_wire == op.bob.wire) throw std::invalid_argument("Alice and Bob share a wire");
      if (eng.wire_dim(op.alice_wire) != 2) throw std::invalid_argument("Alice's wire must be a qubit");
      if (!eng.holds(op.alice_wire) || !eng.holds(op.bob.wire)) {
        throw std::invalid_argument("round uses a wire that was already discarded");
      }

      const std::size_t a_reg = eng.record(op.alice_wire, alice_split[r]);
      std::size_t b_reg = kNoWire;
      switch (op.bob.kind) {
        case BobKind::measure: {
          const Matrix& m = r == 0 ? op.bob.obs0 : op.bob.obs1;
          if (static_cast<std::size_t>(m.rows()) != eng.wire_dim(op.bob.wire)) {
            throw std::invalid_argument("Bob's observable does not match his wire");
          }
          const Observable checked(m);
          b_reg = eng.record(op.bob.wire, eigen_split(checked.matrix()));
          break;
        }
        case BobKind::guess:
          b_reg = eng.record(a_reg, copy_split);
          break;
        case BobKind::fixed:
          b_reg = eng.add_register(basis_projector(op.bob.fixed_answer == 1 ? 0 : 1));
          break;
        case BobKind::random:
          b_reg = eng.add_register(0.5 * identity(2));
          break;
      }
      wins += eng.agreement(a_reg, b_reg);

      std::vector<std::size_t> drop;
      const bool in_R = sample.R[j] == k;
      const bool alice_done = last_use[op.alice_wire] == t;
      const bool bob_done = last_use[op.bob.wire] == t;
      if (in_R) {
        if (alice_done) kept.push_back(op.alice_wire);
        if (bob_done) kept.push_back(op.bob.wire);
        kept.push_back(a_reg);
        kept.push_back(b_reg);
      } else {
        if (alice_done) drop.push_back(op.alice_wire);
        if (bob_done) drop.push_back(op.bob.wire);
        drop.push_back(a_reg);
        drop.push_back(b_reg);
      }
      eng.trace_out(drop);
    }
    correlations.push_back(wins / static_cast<double>(s.K));
  }
  return {eng.collect(kept), std::move(correlations)};
}

double strategy_distance(const Strategy& s1, const Strategy& s2, const RoundSample& sample) {
  const Evolution e1 = evolve(s1, sample);
  const Evolution e2 = evolve(s2, sample);
  if (e1.state.dims() != e2.state.dims()) {
    throw std::invalid_argument("strategies do not act on the same Hilbert spaces");
  }
  return trace_distance(e1.state, e2.state);
}

DistanceReport strategy_distance(const Strategy& s1, const Strategy& s2, Rng& rng) {
  if (s1.N != s2.N || s1.K != s2.K) throw std::invalid_argument("strategies disagree on N or K");
  DistanceReport rep;
  rep.sample = sample_rounds(s1.N, s1.K, rng);
  rep.distance = strategy_distance(s1, s2, rep.sample);
  return rep;
}

StructureReport epsilon_structured(const std::vector<double>& per_game_correlations, double epsilon) {
  if (per_game_correlations.empty()) throw std::invalid_argument("epsilon_structured: no games");
  StructureReport rep;
  rep.per_game_correlations = per_game_correlations;
  rep.epsilon = epsilon;
  const auto good = std::count_if(per_game_correlations.begin(), per_game_correlations.end(),
                                  [&](double c) { return c > 1.0 - epsilon; });
  rep.structured =
      static_cast<double>(good) / static_cast<double>(per_game_correlations.size()) >= 1.0 - epsilon;
  return rep;
}

StructureReport epsilon_structured(const std::vector<steergame::GameTranscript>& transcripts, double epsilon) {
  std::vector<double> values;
  values.reserve(transcripts.size());
  for (const auto& t : transcripts) values.push_back(steergame::correlation_value(t));
  return epsilon_structured(values, epsilon);
}

double shift_identity_check(const Matrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("shift_identity_check: M must be 2x2");
  const Vector psi = bell_psi_plus().amplitudes();
  const Matrix x = pauli_x();
  const Vector lhs = kron(m, identity(2)) * psi;
  const Vector rhs = kron(identity(2), Matrix(x * m.transpose() * x)) * psi;
  return (lhs - rhs).norm();
}

RigidityBound rigidity_bound(std::size_t N, double epsilon, double constant) {
  if (!(constant > 0.0)) throw std::domain_error("rigidity_bound: constant must be positive");
  if (!(epsilon >= 0.0)) throw std::domain_error("rigidity_bound: eps must be nonnegative");
  const double n = static_cast<double>(N);
  return {constant * n * std::pow(epsilon, 1.0 / 6.0), N >= 2 ? std::pow(n, 12) * std::log(n) : 0.0};
}

Scenario load_scenario(const std::string& json_text) {
  const nlohmann::json j = nlohmann::json::parse(json_text);
  Scenario sc;
  sc.N = j.value("N", sc.N);
  sc.K = j.value("K", sc.K);
  sc.epsilon = j.value("epsilon", sc.epsilon);
  sc.seed = j.value("seed", sc.seed);
  sc.state = j.value("state", sc.state);
  sc.bob = j.value("bob", sc.bob);
  for (const auto& item : j.items()) {
    static const char* known[] = {"N", "K", "epsilon", "seed", "state", "bob"};
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return item.key() == k; }) ==
        std::end(known)) {
      throw std::invalid_argument("unknown scenario key: " + item.key());
    }
  }
  return sc;
}

Strategy build_strategy(const Scenario& sc) {
  Strategy s;
  if (sc.state == "bell") {
    s = honest_pairs(sc.N, sc.K);
  } else if (sc.state == "witness") {
    s = witness_pairs(sc.N, sc.K, sc.epsilon);
  } else {
    throw std::invalid_argument("unknown scenario state: " + sc.state);
  }
  if (sc.bob == "honest") return s;
  if (sc.bob == "guess") return with_bob_kind(std::move(s), BobKind::guess);
  if (sc.bob == "fixed") return with_bob_kind(std::move(s), BobKind::fixed);
  if (sc.bob == "random") return with_bob_kind(std::move(s), BobKind::random);
  throw std::invalid_argument("unknown scenario bob: " + sc.bob);
}

}  // namespace steercert::rigidity
