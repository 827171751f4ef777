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

#ifndef STEERCERT_SAMPLING_HPP
#define STEERCERT_SAMPLING_HPP

#include <cstddef>

#include "steercert/qmath.hpp"
#include "steercert/rng.hpp"

namespace steercert {

/// Matrix with i.i.d. standard complex Gaussian entries.
Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-random pure state.
StateVector random_state(const Dims& dims, Rng& rng);

/// Random mixed state G G^dagger / Tr(G G^dagger) with G of shape n x rank.
/// rank = 0 means full rank.
DensityMatrix random_density(const Dims& dims, Rng& rng, std::size_t rank = 0);

/// Haar-random unitary (QR of a Ginibre matrix with the phase correction).
Matrix random_unitary(std::size_t n, Rng& rng);

/// U diag(+-1) U^dagger with a random number of -1 eigenvalues in [1, n-1].
Matrix random_involution(std::size_t n, Rng& rng);

/// Unitary close to the identity: exp(i t H) for a random Hermitian H with
/// unit spectral scale.
Matrix random_near_identity(std::size_t n, double t, Rng& rng);

}  // namespace steercert

#endif  // STEERCERT_SAMPLING_HPP
