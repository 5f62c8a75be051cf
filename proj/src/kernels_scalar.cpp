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

#include "fockbench/kernels.hpp"

// Scalar reference kernels. These define the semantics; the SIMD tables are
// checked against them. Written with plain loops on purpose — keep this file
// boring and auditable.

namespace fockbench::kernels {
namespace {

void s_axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void s_scal(std::size_t n, cplx alpha, cplx* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

cplx s_dotc(std::size_t n, const cplx* x, const cplx* y) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

cplx s_dotu(std::size_t n, const cplx* x, const cplx* y) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double s_nrm2sq(std::size_t n, const cplx* x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
  return acc;
}

void s_gemm(std::size_t m, std::size_t n, std::size_t k, cplx alpha,
            const cplx* a, std::size_t lda, const cplx* b, std::size_t ldb,
            cplx beta, cplx* c, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * ldc;
    if (beta == cplx(0.0)) {
      for (std::size_t j = 0; j < n; ++j) crow[j] = 0.0;
    } else if (beta != cplx(1.0)) {
      for (std::size_t j = 0; j < n; ++j) crow[j] *= beta;
    }
    const cplx* arow = a + i * lda;
    // i-k-j order: streams B rows, accumulates into the C row.
    for (std::size_t p = 0; p < k; ++p) {
      const cplx aip = alpha * arow[p];
      if (aip == cplx(0.0)) continue;
      const cplx* brow = b + p * ldb;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
}

void s_gemv(std::size_t m, std::size_t n, cplx alpha, const cplx* a,
            std::size_t lda, const cplx* x, cplx beta, cplx* y) {
  for (std::size_t i = 0; i < m; ++i) {
    const cplx acc = s_dotu(n, a + i * lda, x);
    y[i] = alpha * acc + (beta == cplx(0.0) ? cplx(0.0) : beta * y[i]);
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t = {"scalar", s_axpy,   s_scal, s_dotc,
                                s_dotu,   s_nrm2sq, s_gemm, s_gemv};
  return t;
}

}  // namespace fockbench::kernels
