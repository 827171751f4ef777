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

#include "steercert/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "steercert/sampling.hpp"

namespace steercert::selftest {

namespace {

constexpr double kAnticommuteTolerance = 1e-10;
constexpr double kBoundSlack = 1e-9;

// Alice's qubit as subsystem 0 and everything else merged into Bob.
StateVector as_bipartite(const StateVector& psi) {
  if (psi.dims().size() < 2 || psi.dims()[0] != 2) {
    throw std::invalid_argument("Alice's subsystem must be a single qubit (dims[0] == 2)");
  }
  return psi.regrouped({2, psi.dimension() / 2});
}

void check_alice(const Observable& o) {
  if (o.dimension() != 2) throw std::invalid_argument("Alice's observables must be 2x2");
}

void check_bob(const Observable& o, std::size_t bob_dim) {
  if (o.dimension() != bob_dim) {
    throw std::invalid_argument("Bob's observable does not act on Bob's register (dimension mismatch)");
  }
}

struct Applied {
  Vector xa, ya, xb, yb;
};

Applied apply_all(const StateVector& bip, const Observable& xa, const Observable& ya, const Observable& xb,
                  const Observable& yb) {
  const Dims& d = bip.dims();
  check_alice(xa);
  check_alice(ya);
  check_bob(xb, d[1]);
  check_bob(yb, d[1]);
  const Vector& v = bip.amplitudes();
  return {apply_local(xa.matrix(), 0, d, v), apply_local(ya.matrix(), 0, d, v), apply_local(xb.matrix(), 1, d, v),
          apply_local(yb.matrix(), 1, d, v)};
}

double clamp_epsilon(double eps) { return std::max(eps, 0.0); }

}  // namespace

std::string_view to_string(Gamma2Convention c) {
  switch (c) {
    case Gamma2Convention::theorem:
      return "theorem";
    case Gamma2Convention::appendix:
      return "appendix";
    case Gamma2Convention::measured:
      return "measured";
  }
  return "measured";
}

Gamma2Convention parse_gamma2_convention(std::string_view name) {
  if (name == "theorem") return Gamma2Convention::theorem;
  if (name == "appendix") return Gamma2Convention::appendix;
  if (name == "measured") return Gamma2Convention::measured;
  throw std::invalid_argument("unknown gamma2 convention: " + std::string(name));
}

bool operator==(const CertificationReport& a, const CertificationReport& b) {
  return a.saturation == b.saturation && a.epsilon == b.epsilon && a.gamma1 == b.gamma1 && a.gamma2 == b.gamma2 &&
         a.closeness_bound == b.closeness_bound && a.extracted_distance == b.extracted_distance &&
         a.bound_holds == b.bound_holds && a.gamma2_convention == b.gamma2_convention && a.in_regime == b.in_regime;
}

ConditionNorms condition_norms(const StateVector& psi, const Observable& xa, const Observable& ya,
                               const Observable& xb, const Observable& yb) {
  const StateVector bip = as_bipartite(psi);
  const Applied a = apply_all(bip, xa, ya, xb, yb);
  const Dims& d = bip.dims();
  const Vector anti = apply_local(xb.matrix(), 1, d, a.yb) + apply_local(yb.matrix(), 1, d, a.xb);
  return {(a.xa - a.xb).norm(), (a.ya - a.yb).norm(), anti.norm()};
}

double correlator(const StateVector& psi, const Observable& xa, const Observable& ya, const Observable& xb,
                  const Observable& yb) {
  const StateVector bip = as_bipartite(psi);
  const Applied a = apply_all(bip, xa, ya, xb, yb);
  // <X_A X'_B> = <X_A psi | X'_B psi> since the factors commute and are Hermitian.
  return (a.xa.dot(a.xb) + a.ya.dot(a.yb)).real();
}

double saturation(const StateVector& psi, const Observable& xa, const Observable& ya, const Observable& xb,
                  const Observable& yb) {
  return std::abs(correlator(psi, xa, ya, xb, yb));
}

SelfTestConditions gammas_from_saturation(double epsilon, Gamma2Convention convention) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("gammas_from_saturation: eps must lie in (0, 1)");
  const double root = std::sqrt(epsilon);
  switch (convention) {
    case Gamma2Convention::theorem:
      return {std::sqrt(2.0 * epsilon), 4.0 * root};
    case Gamma2Convention::appendix:
      return {std::sqrt(2.0 * epsilon), 8.0 * root};
    case Gamma2Convention::measured:
      break;
  }
  throw std::invalid_argument("gammas_from_saturation: the measured convention needs the state, use certify");
}

double selftest_bound(const SelfTestConditions& c) {
  return 3.0 * c.gamma1 + c.gamma1 * c.gamma1 / 4.0 + 2.0 * c.gamma2;
}

double appendix_bound(double epsilon) {
  const double e = clamp_epsilon(epsilon);
  return 3.0 * std::sqrt(2.0 * e) + e / 2.0 + 16.0 * std::sqrt(e);
}

Matrix isometry_matrix(const Observable& xb, const Observable& yb) {
  if (xb.dimension() != yb.dimension()) throw std::invalid_argument("Bob's observables differ in dimension");
  const std::size_t n = xb.dimension();
  const Matrix id = identity(n);
  const Matrix plus_branch = 0.5 * (id + yb.matrix());
  const Matrix minus_branch = Complex(0.0, 0.5) * xb.matrix() * (id - yb.matrix());
  // Bob's register followed by the ancilla: V = plus_branch (x) |+y> + minus_branch (x) |-y>.
  Matrix v = kron(plus_branch, Matrix(y_plus())) + kron(minus_branch, Matrix(y_minus()));
  return v;
}

StateVector apply_isometry(const StateVector& psi, const Observable& xb, const Observable& yb) {
  const StateVector bip = as_bipartite(psi);
  const std::size_t db = bip.dims()[1];
  check_bob(xb, db);
  check_bob(yb, db);
  if (xb.subsystem() != 1 || yb.subsystem() != 1) {
    throw std::invalid_argument("apply_isometry: Bob's observables must act on subsystem 1");
  }
  const Matrix v = isometry_matrix(xb, yb);
  // Alice's qubit is untouched: out[a] = V psi[a], with psi[a] Bob's slice.
  Vector out(static_cast<Eigen::Index>(2 * db * 2));
  for (Eigen::Index a = 0; a < 2; ++a) {
    const Vector slice = bip.amplitudes().segment(a * static_cast<Eigen::Index>(db), static_cast<Eigen::Index>(db));
    out.segment(a * static_cast<Eigen::Index>(2 * db), static_cast<Eigen::Index>(2 * db)) = v * slice;
  }
  return StateVector(std::move(out), {2, db, 2});
}

Extraction extract_distance(const StateVector& phi_out) {
  const Dims& d = phi_out.dims();
  if (d.size() < 3 || d.front() != 2 || d.back() != 2) {
    throw std::invalid_argument("extract_distance: expected dims {2, d_B..., 2}");
  }
  const std::size_t db = phi_out.dimension() / 4;
  const Vector& phi = phi_out.amplitudes();
  auto at = [&](std::size_t a, std::size_t b, std::size_t c) {
    return phi(static_cast<Eigen::Index>(a * db * 2 + b * 2 + c));
  };
  const double r = 1.0 / std::sqrt(2.0);
  Vector g(static_cast<Eigen::Index>(db));
  for (std::size_t b = 0; b < db; ++b) g(static_cast<Eigen::Index>(b)) = r * (at(0, b, 1) + at(1, b, 0));

  const double overlap = g.norm();
  if (overlap <= 1e-14) {
    return {std::sqrt(2.0), StateVector::basis({db}, 0), true};
  }
  Vector junk = g / overlap;
  // Explicit residual rather than sqrt(2 - 2|g|), which loses half the digits near 0.
  const Vector target = kron(kron(Vector::Unit(2, 0), junk), Vector::Unit(2, 1)) * r +
                        kron(kron(Vector::Unit(2, 1), junk), Vector::Unit(2, 0)) * r;
  const double dist = (phi - target).norm();
  return {dist, StateVector(std::move(junk), {db}), false};
}

CertificationReport certify(const StateVector& psi, const Observable& xa, const Observable& ya,
                            const Observable& xb, const Observable& yb, Gamma2Convention convention) {
  const StateVector bip = as_bipartite(psi);
  const double signed_corr = correlator(bip, xa, ya, xb, yb);
  const Observable bx = signed_corr < 0.0 ? xb.negated().on(1) : xb.on(1);
  const Observable by = signed_corr < 0.0 ? yb.negated().on(1) : yb.on(1);

  CertificationReport rep;
  rep.gamma2_convention = convention;
  rep.saturation = std::abs(signed_corr);
  rep.epsilon = 2.0 - rep.saturation;
  rep.in_regime = rep.epsilon < 1.0;

  const ConditionNorms n = condition_norms(bip, xa, ya, bx, by);
  rep.gamma1 = std::max(n.n1, n.n2);
  rep.gamma2 = n.n3;

  const double eps = clamp_epsilon(rep.epsilon);
  switch (convention) {
    case Gamma2Convention::measured:
      rep.closeness_bound = selftest_bound({rep.gamma1, rep.gamma2});
      break;
    case Gamma2Convention::theorem:
      rep.closeness_bound = selftest_bound({std::sqrt(2.0 * eps), 4.0 * std::sqrt(eps)});
      break;
    case Gamma2Convention::appendix:
      rep.closeness_bound = selftest_bound({std::sqrt(2.0 * eps), 8.0 * std::sqrt(eps)});
      break;
  }

  rep.extracted_distance = extract_distance(apply_isometry(bip, bx, by)).distance;
  rep.bound_holds = rep.extracted_distance <= rep.closeness_bound + kBoundSlack;
  return rep;
}

Witness tightness_witness(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("tightness_witness: eps must lie in (0, 1)");
  const double eps_prime = epsilon / 2.0;
  const double s = std::sqrt(eps_prime);
  Vector v = Vector::Zero(4);
  v(1) = std::sqrt(1.0 + s) / std::sqrt(2.0);
  v(2) = std::sqrt(1.0 - s) / std::sqrt(2.0);
  const ObservablePair b = deviated_observables(eps_prime);
  return {StateVector(std::move(v), {2, 2}), b.first.on(1), b.second.on(1)};
}

Matrix alice_frame_rotation(const Observable& a0, const Observable& a1) {
  check_alice(a0);
  check_alice(a1);
  const Matrix& m0 = a0.matrix();
  const Matrix& m1 = a1.matrix();
  if (max_abs(m0 * m1 + m1 * m0) > kAnticommuteTolerance) {
    throw std::invalid_argument("Alice's observables do not anticommute");
  }
  // C = -i A0 A1 is the third axis; its +1 eigenvector maps to |0>, A0 of it to |1>.
  const Matrix c = Complex(0.0, -1.0) * m0 * m1;
  const Matrix proj = 0.5 * (identity(2) + c);
  Vector v = proj.col(0).norm() >= proj.col(1).norm() ? Vector(proj.col(0)) : Vector(proj.col(1));
  v /= v.norm();
  const Vector w = m0 * v;
  Matrix u(2, 2);
  u.row(0) = v.adjoint();
  u.row(1) = w.adjoint();
  return u;
}

StateVector correlated_bell_state(const Observable& a0, const Observable& a1) {
  const Matrix u = alice_frame_rotation(a0, a1);
  const Matrix ud = u.adjoint();
  return StateVector(kron(ud, ud) * bell_psi_plus().amplitudes(), {2, 2});
}

Witness tightness_witness_for(const Observable& a0, const Observable& a1, double epsilon) {
  const Witness w = tightness_witness(epsilon);
  const Matrix u = alice_frame_rotation(a0, a1);
  const Matrix ud = u.adjoint();
  auto rotate = [&](const Observable& o) {
    const Matrix m = ud * o.matrix() * u;
    return Observable(0.5 * (m + m.adjoint()), 1);
  };
  return {StateVector(kron(ud, ud) * w.psi.amplitudes(), {2, 2}), rotate(w.b0), rotate(w.b1)};
}

CertificationReport general_observable_selftest(const StateVector& psi, const Observable& a0,
                                                const Observable& a1, const Observable& b0,
                                                const Observable& b1, Gamma2Convention convention) {
  const StateVector bip = as_bipartite(psi);
  const Matrix u = alice_frame_rotation(a0, a1);
  const StateVector rotated(apply_local(u, 0, bip.dims(), bip.amplitudes()), bip.dims());
  const StandardObservables s = standard_observables();
  return certify(rotated, s.x, s.y, b0, b1, convention);
}

RandomStrategy random_near_ideal_strategy(Rng& rng, double min_saturation, std::size_t bob_dim) {
  if (bob_dim != 2 && bob_dim != 4) throw std::invalid_argument("random_near_ideal_strategy: bob_dim must be 2 or 4");
  const StandardObservables s = standard_observables();
  const std::size_t junk_dim = bob_dim / 2;
  for (;;) {
    // Ideal: |psi+>_{A,B1} (x) |junk>_{B2}, observables X (x) I, Y (x) I on Bob.
    Vector ideal = bell_psi_plus().amplitudes();
    Matrix xb = pauli_x();
    Matrix yb = pauli_y();
    if (junk_dim > 1) {
      ideal = kron(ideal, random_state({junk_dim}, rng).amplitudes());
      xb = kron(xb, identity(junk_dim));
      yb = kron(yb, identity(junk_dim));
    }
    const double scale = 0.3 * rng.uniform();
    Vector noisy = ideal + scale * ginibre(ideal.size(), 1, rng).col(0) / std::sqrt(static_cast<double>(ideal.size()));
    const StateVector psi = StateVector::normalized(noisy, {2, bob_dim});

    const Matrix wx = random_near_identity(bob_dim, 0.4 * rng.uniform(), rng);
    const Matrix wy = random_near_identity(bob_dim, 0.4 * rng.uniform(), rng);
    Matrix px = wx * xb * wx.adjoint();
    Matrix py = wy * yb * wy.adjoint();
    const Observable ox(0.5 * (px + px.adjoint()), 1);
    const Observable oy(0.5 * (py + py.adjoint()), 1);
    if (saturation(psi, s.x, s.y, ox, oy) >= min_saturation) return {psi, ox, oy};
  }
}

SweepSummary soundness_sweep(std::size_t trials, double min_saturation, std::uint64_t seed, std::size_t workers) {
  struct Trial {
    double saturation, distance, appendix, measured;
  };
  std::vector<Trial> results(trials);
  const StandardObservables s = standard_observables();
  auto run = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < trials; i += step) {
      Rng rng(seed, i);
      const std::size_t bob_dim = (i % 2 == 0) ? 2 : 4;
      const RandomStrategy st = random_near_ideal_strategy(rng, min_saturation, bob_dim);
      const CertificationReport rep = certify(st.psi, s.x, s.y, st.xb, st.yb, Gamma2Convention::measured);
      results[i] = {rep.saturation, rep.extracted_distance, appendix_bound(rep.epsilon), rep.closeness_bound};
    }
  };
  workers = std::max<std::size_t>(1, std::min(workers, trials == 0 ? 1 : trials));
  if (workers == 1) {
    run(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
    for (auto& t : pool) t.join();
  }

  SweepSummary sum;
  sum.trials = trials;
  for (const Trial& t : results) {
    if (t.distance > t.appendix + kBoundSlack) ++sum.violations;
    if (t.distance > t.measured + kBoundSlack) ++sum.measured_violations;
    if (t.appendix > 0.0) sum.worst_ratio = std::max(sum.worst_ratio, t.distance / t.appendix);
    sum.min_saturation = std::min(sum.min_saturation, t.saturation);
    sum.max_distance = std::max(sum.max_distance, t.distance);
  }
  return sum;
}

}  // namespace steercert::selftest
