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

#include <random>

#include "doctest.h"
#include "fockbench/linalg.hpp"

using namespace fockbench;

namespace {

CMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  return a;
}

CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  return hermitian_part(random_matrix(n, rng));
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  CMatrix d = a;
  d -= b;
  return d.max_abs();
}

// Test-only independent exponential: Taylor series after halving the norm
// below 1/4, then repeated squaring.
CMatrix taylor_expm(const CMatrix& a) {
  int s = 0;
  double nrm = a.one_norm();
  while (nrm > 0.25) {
    nrm *= 0.5;
    ++s;
  }
  CMatrix b = a;
  b *= cplx(std::ldexp(1.0, -s));
  CMatrix sum = CMatrix::identity(a.rows());
  CMatrix term = CMatrix::identity(a.rows());
  for (int k = 1; k <= 40; ++k) {
    term = term * b;
    term *= cplx(1.0 / k);
    sum += term;
    if (term.max_abs() < 1e-18) break;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

}  // namespace

TEST_CASE("LU solves random systems") {
  std::mt19937_64 rng(5);
  for (std::size_t n : {1, 2, 7, 25}) {
    CMatrix a = random_matrix(n, rng);
    CMatrix b = random_matrix(n, rng);
    const linalg::LuFactors f = linalg::lu_factor(a);
    const CMatrix x = linalg::lu_solve(f, b);
    CHECK(max_abs_diff(a * x, b) < 1e-10 * double(n));
  }
}

TEST_CASE("LU rejects a singular matrix") {
  CMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 2.0;
  a(1, 1) = 4.0;
  CHECK_THROWS_AS((void)linalg::lu_factor(a), std::runtime_error);
}

TEST_CASE("eigh reconstructs random Hermitian matrices") {
  std::mt19937_64 rng(7);
  for (std::size_t n : {1, 2, 3, 10, 40}) {
    const CMatrix a = random_hermitian(n, rng);
    const linalg::EighResult e = linalg::eigh(a, true);
    REQUIRE(e.vectors.has_value());
    const CMatrix& v = *e.vectors;

    // unitarity
    CHECK(max_abs_diff(v.adjoint() * v, CMatrix::identity(n)) < 1e-11);
    // reconstruction
    CMatrix lam(n, n);
    for (std::size_t i = 0; i < n; ++i) lam(i, i) = e.eigenvalues[i];
    CHECK(max_abs_diff(v * lam * v.adjoint(), a) < 1e-10 * std::max(1.0, a.max_abs()));
    // ascending order
    for (std::size_t i = 0; i + 1 < n; ++i)
      CHECK(e.eigenvalues[i] <= e.eigenvalues[i + 1] + 1e-14);
    // trace preserved
    double tr = 0.0;
    for (double ev : e.eigenvalues) tr += ev;
    CHECK(tr == doctest::Approx(a.trace().real()).epsilon(1e-10));
  }
}

TEST_CASE("eigh handles degenerate spectra") {
  CMatrix a = CMatrix::identity(6);
  a *= cplx(3.0);
  const linalg::EighResult e = linalg::eigh(a, true);
  for (double ev : e.eigenvalues) CHECK(ev == doctest::Approx(3.0));
  CHECK(max_abs_diff(*e.vectors * e.vectors->adjoint(), CMatrix::identity(6)) <
        1e-12);
}

TEST_CASE("eigh handles block structure with exact zero couplings") {
  // kron(I_4, H_2) has each H_2 eigenvalue with multiplicity 4 and plenty of
  // exact zeros in the reduction columns.
  std::mt19937_64 rng(31);
  const CMatrix h2 = random_hermitian(2, rng);
  CMatrix a(8, 8);
  for (std::size_t b = 0; b < 4; ++b)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) a(2 * b + i, 2 * b + j) = h2(i, j);
  const linalg::EighResult small = linalg::eigh(h2);
  const linalg::EighResult big = linalg::eigh(a, true);
  for (std::size_t i = 0; i < 8; ++i)
    CHECK(big.eigenvalues[i] ==
          doctest::Approx(small.eigenvalues[i / 4]).epsilon(1e-11));
  CHECK(max_abs_diff(big.vectors->adjoint() * *big.vectors,
                     CMatrix::identity(8)) < 1e-11);
}

TEST_CASE("singular values match the Hermitian |eigenvalue| set") {
  std::mt19937_64 rng(9);
  const CMatrix a = random_hermitian(12, rng);
  const std::vector<double> sv = linalg::singular_values(a);
  std::vector<double> ev = linalg::eigh(a).eigenvalues;
  for (double& v : ev) v = std::abs(v);
  std::sort(ev.begin(), ev.end());
  REQUIRE(sv.size() == ev.size());
  for (std::size_t i = 0; i < sv.size(); ++i)
    CHECK(sv[i] == doctest::Approx(ev[i]).epsilon(1e-9));
}

TEST_CASE("power iteration finds the top singular value") {
  std::mt19937_64 rng(13);
  const CMatrix a = random_matrix(20, rng);
  const double sigma = linalg::sigma_max(a);
  const std::vector<double> sv = linalg::singular_values(a);
  CHECK(sigma == doctest::Approx(sv.back()).epsilon(1e-9));
}

TEST_CASE("haar unitaries are unitary") {
  std::mt19937_64 rng(17);
  for (std::size_t n : {1, 2, 9, 30}) {
    const CMatrix u = linalg::haar_unitary(n, rng);
    CHECK(max_abs_diff(u.adjoint() * u, CMatrix::identity(n)) < 1e-11);
  }
}

TEST_CASE("expm basics") {
  CHECK(max_abs_diff(linalg::expm(CMatrix(4, 4)), CMatrix::identity(4)) == 0.0);

  CMatrix d(3, 3);
  d(0, 0) = cplx(0.3, 1.0);
  d(1, 1) = cplx(-2.0, 0.0);
  d(2, 2) = cplx(0.0, -3.5);
  const CMatrix e = linalg::expm(d);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(std::abs(e(i, i) - std::exp(d(i, i))) < 1e-14 * std::abs(std::exp(d(i, i))));
  CHECK(std::abs(e(0, 1)) < 1e-15);
}

TEST_CASE("expm agrees with an independent Taylor oracle") {
  std::mt19937_64 rng(19);
  for (std::size_t n : {2, 6, 16}) {
    for (double scale : {0.01, 0.3, 2.0, 9.0}) {
      CMatrix a = random_matrix(n, rng);
      a *= cplx(scale / double(n));
      const CMatrix e1 = linalg::expm(a);
      const CMatrix e2 = taylor_expm(a);
      CHECK(max_abs_diff(e1, e2) < 1e-11 * std::max(1.0, e2.max_abs()));
    }
  }
}

TEST_CASE("expm semigroup property on stable normal matrices") {
  // Random normal matrix with spectrum in the left half-plane: U D U^+.
  std::mt19937_64 rng(23);
  const std::size_t n = 16;
  const CMatrix u = linalg::haar_unitary(n, rng);
  CMatrix d(n, n);
  std::uniform_real_distribution<double> re(-2.0, 0.0), im(-3.0, 3.0);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = cplx(re(rng), im(rng));
  const CMatrix a = u * d * u.adjoint();

  const double s = 0.7, t = 1.9;
  const CMatrix lhs = linalg::expm(a, s) * linalg::expm(a, t);
  const CMatrix rhs = linalg::expm(a, s + t);
  CHECK(max_abs_diff(lhs, rhs) < 1e-11);
}

TEST_CASE("expm rejects non-finite input") {
  CMatrix a(2, 2);
  a(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS((void)linalg::expm(a), std::invalid_argument);
}

TEST_CASE("null_vector extracts a stationary direction") {
  // Generator-like singular matrix: A = B - diag(row sums of B) has the
  // all-ones right null vector only in the transpose sense; instead build a
  // matrix with a known kernel via a projector.
  std::mt19937_64 rng(29);
  const std::size_t n = 10;
  CMatrix b = random_matrix(n, rng);
  // Force column 3 relationships: A v = 0 with v = e3 by zeroing column 3.
  for (std::size_t i = 0; i < n; ++i) b(i, 3) = 0.0;
  CVector start(n, cplx(1.0));
  const CVector v = linalg::null_vector(b, start);
  const CVector bv = matvec(b, v);
  CHECK(norm(bv) < 1e-9);
  CHECK(std::abs(v[3]) > 0.99);
}
