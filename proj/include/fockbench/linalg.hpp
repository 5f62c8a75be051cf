// Copyright 2026 The fockbench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FOCKBENCH_LINALG_HPP
#define FOCKBENCH_LINALG_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>

#include "fockbench/matrix.hpp"

namespace fockbench::linalg {

// -- LU ---------------------------------------------------------------------

struct LuFactors {
  CMatrix lu;                    // packed L (unit diagonal) and U
  std::vector<std::size_t> piv;  // row swap applied at step k
};

// Partial-pivoting factorization. Throws std::runtime_error on an exactly
// zero pivot.
LuFactors lu_factor(CMatrix a);

// Solve A X = B for matrix / vector right-hand sides.
CMatrix lu_solve(const LuFactors& f, CMatrix b);
CVector lu_solve(const LuFactors& f, CVector b);

// -- Hermitian eigenproblem ---------------------------------------------------

struct EighResult {
  std::vector<double> eigenvalues;   // ascending
  std::optional<CMatrix> vectors;    // columns, when requested
};

// Householder tridiagonalization + implicit-shift QL. `a` must be Hermitian;
// only the lower triangle is referenced.
EighResult eigh(const CMatrix& a, bool want_vectors = false);

// Singular values (ascending) via the Hermitian embedding [[0, A], [A^+, 0]],
// whose spectrum is +-sigma_i. Square matrices only.
std::vector<double> singular_values(const CMatrix& a);

// Largest singular value of a linear map given by its action and the action
// of its adjoint, by power iteration on A^+A. Deterministic for a fixed seed.
double power_sigma_max(const std::function<CVector(const CVector&)>& apply,
                       const std::function<CVector(const CVector&)>& apply_adj,
                       std::size_t dim, std::uint64_t seed = 12345,
                       int max_iters = 600, double tol = 1e-13);

double sigma_max(const CMatrix& a, std::uint64_t seed = 12345);

// -- Unitaries ----------------------------------------------------------------

// Haar-distributed unitary: QR of a Ginibre sample with the R-diagonal phase
// correction.
CMatrix haar_unitary(std::size_t n, std::mt19937_64& rng);

// -- Matrix exponential ---------------------------------------------------------

// Pade approximant with scaling and squaring (order chosen from the 1-norm;
// 13 with scaling in the large-norm regime). Throws on non-finite input or
// overflowed output.
CMatrix expm(const CMatrix& a);
CMatrix expm(const CMatrix& a, double scale);  // expm(scale * a)

// -- Null vector -----------------------------------------------------------------

// Inverse iteration against a tiny diagonal shift; intended for extracting
// the stationary direction of a singular generator matrix.
CVector null_vector(const CMatrix& m, const CVector& start, int iters = 8);

}  // namespace fockbench::linalg

#endif  // FOCKBENCH_LINALG_HPP
