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

#include <array>
#include <random>
#include <vector>

#include "doctest.h"
#include "fockbench/kernels.hpp"

using namespace fockbench;
using kernels::KernelTable;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> v(n);
  for (cplx& z : v) z = cplx(g(rng), g(rng));
  return v;
}

double rel_err(cplx a, cplx b, double scale) {
  return std::abs(a - b) / std::max(1.0, scale);
}

std::vector<const KernelTable*> tables_under_test() {
  std::vector<const KernelTable*> ts{&kernels::scalar_table()};
#if defined(FOCKBENCH_HAVE_AVX2)
  for (const std::string& n : kernels::available())
    if (n == "avx2") ts.push_back(&kernels::avx2_table());
#endif
#if defined(FOCKBENCH_HAVE_NEON)
  for (const std::string& n : kernels::available())
    if (n == "neon") ts.push_back(&kernels::neon_table());
#endif
  return ts;
}

}  // namespace

TEST_CASE("scalar gemm matches a naive triple loop") {
  std::mt19937_64 rng(11);
  const std::vector<std::array<int, 3>> shapes{
      {1, 1, 1}, {3, 5, 4}, {8, 8, 8}, {13, 7, 9}};
  for (auto [m, n, k] : shapes) {
    auto a = random_vec(std::size_t(m) * k, rng);
    auto b = random_vec(std::size_t(k) * n, rng);
    std::vector<cplx> c(std::size_t(m) * n, cplx(0.3, -0.1));
    std::vector<cplx> ref = c;
    const cplx alpha(0.7, 0.2), beta(-0.4, 0.9);

    kernels::scalar_table().gemm(m, n, k, alpha, a.data(), k, b.data(), n,
                                 beta, c.data(), n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        cplx acc = 0.0;
        for (int p = 0; p < k; ++p)
          acc += a[std::size_t(i) * k + p] * b[std::size_t(p) * n + j];
        ref[std::size_t(i) * n + j] =
            alpha * acc + beta * ref[std::size_t(i) * n + j];
      }
    for (std::size_t i = 0; i < c.size(); ++i)
      CHECK(rel_err(c[i], ref[i], 10.0 * k) < 1e-13);
  }
}

TEST_CASE("SIMD tables agree with the scalar reference") {
  auto tables = tables_under_test();
  CHECK(!tables.empty());
  if (tables.size() == 1)
    MESSAGE("only the scalar table is available on this machine");

  std::mt19937_64 rng(22);
  const std::vector<std::size_t> sizes{1, 2, 3, 5, 8, 16, 31, 64, 127};
  for (const KernelTable* t : tables) {
    CAPTURE(t->name);
    for (std::size_t n : sizes) {
      auto x = random_vec(n, rng);
      auto y = random_vec(n, rng);
      const cplx alpha(0.37, -1.2);

      auto y1 = y, y2 = y;
      kernels::scalar_table().axpy(n, alpha, x.data(), y1.data());
      t->axpy(n, alpha, x.data(), y2.data());
      for (std::size_t i = 0; i < n; ++i)
        CHECK(rel_err(y1[i], y2[i], 4.0) < 1e-13);

      auto x1 = x, x2 = x;
      kernels::scalar_table().scal(n, alpha, x1.data());
      t->scal(n, alpha, x2.data());
      for (std::size_t i = 0; i < n; ++i)
        CHECK(rel_err(x1[i], x2[i], 4.0) < 1e-13);

      CHECK(rel_err(kernels::scalar_table().dotc(n, x.data(), y.data()),
                    t->dotc(n, x.data(), y.data()), 4.0 * double(n)) < 1e-13);
      CHECK(rel_err(kernels::scalar_table().dotu(n, x.data(), y.data()),
                    t->dotu(n, x.data(), y.data()), 4.0 * double(n)) < 1e-13);
      CHECK(std::abs(kernels::scalar_table().nrm2sq(n, x.data()) -
                     t->nrm2sq(n, x.data())) < 1e-12 * double(n));
    }
  }
}

TEST_CASE("SIMD gemm/gemv agree with the scalar reference") {
  auto tables = tables_under_test();
  std::mt19937_64 rng(33);
  for (const KernelTable* t : tables) {
    CAPTURE(t->name);
    const std::vector<std::array<int, 3>> shapes{
        {1, 1, 1},   {2, 4, 3},    {5, 5, 5},  {7, 9, 11},
        {16, 16, 16}, {33, 18, 27}, {64, 63, 65}};
    for (auto [m, n, k] : shapes) {
      auto a = random_vec(std::size_t(m) * k, rng);
      auto b = random_vec(std::size_t(k) * n, rng);
      auto c0 = random_vec(std::size_t(m) * n, rng);
      for (cplx beta : {cplx(0.0), cplx(1.0), cplx(0.2, -0.5)}) {
        const cplx alpha(1.1, 0.3);
        auto c1 = c0, c2 = c0;
        kernels::scalar_table().gemm(m, n, k, alpha, a.data(), k, b.data(), n,
                                     beta, c1.data(), n);
        t->gemm(m, n, k, alpha, a.data(), k, b.data(), n, beta, c2.data(), n);
        for (std::size_t i = 0; i < c1.size(); ++i)
          CHECK(rel_err(c1[i], c2[i], 10.0 * k) < 1e-13);
      }
      auto av = random_vec(std::size_t(m) * n, rng);
      auto x = random_vec(n, rng);
      std::vector<cplx> yv1(m, cplx(0.1, 0.1)), yv2 = yv1;
      kernels::scalar_table().gemv(m, n, cplx(0.9, -0.2), av.data(), n,
                                   x.data(), cplx(0.5, 0.0), yv1.data());
      t->gemv(m, n, cplx(0.9, -0.2), av.data(), n, x.data(), cplx(0.5, 0.0),
              yv2.data());
      for (int i = 0; i < m; ++i)
        CHECK(rel_err(yv1[i], yv2[i], 10.0 * n) < 1e-13);
    }
  }
}

TEST_CASE("kernel selection is honored") {
  const std::string before = kernels::active().name;
  CHECK(kernels::select("scalar"));
  CHECK(std::string(kernels::active().name) == "scalar");
  CHECK_FALSE(kernels::select("no-such-table"));
  CHECK(kernels::select("auto"));
  CHECK(kernels::select(before));
}
