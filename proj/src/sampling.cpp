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

#include "steercert/sampling.hpp"

#include <cmath>

namespace steercert {

Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

StateVector random_state(const Dims& dims, Rng& rng) {
  return StateVector::normalized(ginibre(total_dimension(dims), 1, rng).col(0), dims);
}

DensityMatrix random_density(const Dims& dims, Rng& rng, std::size_t rank) {
  const std::size_t n = total_dimension(dims);
  const Matrix g = ginibre(n, rank == 0 ? n : rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho), dims);
}

Matrix random_unitary(std::size_t n, Rng& rng) {
  const Matrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    const double a = std::abs(d);
    if (a > 0.0) q.col(k) *= d / a;
  }
  return q;
}

Matrix random_involution(std::size_t n, Rng& rng) {
  const Matrix u = random_unitary(n, rng);
  const std::size_t minus = 1 + static_cast<std::size_t>(rng.below(n - 1));
  Matrix d = identity(n);
  for (std::size_t k = 0; k < minus; ++k) d(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = -1.0;
  Matrix m = u * d * u.adjoint();
  // Symmetrise away rounding so the Observable checks see an exact Hermitian.
  return 0.5 * (m + m.adjoint());
}

Matrix random_near_identity(std::size_t n, double t, Rng& rng) {
  const Matrix g = ginibre(n, n, rng);
  const Matrix h = 0.5 * (g + g.adjoint()) / std::sqrt(static_cast<double>(n));
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) phases(k) = std::exp(Complex(0.0, t * es.eigenvalues()(k)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace steercert
