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

// AVX2+FMA kernels. This translation unit is compiled with -mavx2 -mfma and
// is only ever dispatched to after a runtime CPU check.
//
// Complex arithmetic uses the split-accumulator scheme: for interleaved
// [re, im] data and a scalar a = ar + i*ai,
//     a * v = addsub(ar * v, ai * swap(v))
// where swap exchanges re/im within each complex pair and addsub applies
// (-, +) per pair. Keeping two FMA accumulators per output and combining
// once at the end gives two FMAs per complex multiply-add.

#include "fockbench/kernels.hpp"

#if defined(FOCKBENCH_HAVE_AVX2)

#include <immintrin.h>

namespace fockbench::kernels {
namespace {

inline const double* as_d(const cplx* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* as_d(cplx* p) { return reinterpret_cast<double*>(p); }

inline __m256d swap_ri(__m256d v) { return _mm256_permute_pd(v, 0x5); }

// a * v for a broadcast complex scalar (are, aim lanes) and 2 packed complex.
inline __m256d cmul(__m256d are, __m256d aim, __m256d v) {
  return _mm256_addsub_pd(_mm256_mul_pd(are, v),
                          _mm256_mul_pd(aim, swap_ri(v)));
}

void v_axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const __m256d are = _mm256_set1_pd(alpha.real());
  const __m256d aim = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(as_d(x + i));
    __m256d yv = _mm256_loadu_pd(as_d(y + i));
    yv = _mm256_add_pd(yv, cmul(are, aim, xv));
    _mm256_storeu_pd(as_d(y + i), yv);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void v_scal(std::size_t n, cplx alpha, cplx* x) {
  const __m256d are = _mm256_set1_pd(alpha.real());
  const __m256d aim = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(as_d(x + i));
    _mm256_storeu_pd(as_d(x + i), cmul(are, aim, xv));
  }
  for (; i < n; ++i) x[i] *= alpha;
}

// Shared accumulation for dotc/dotu: P = sum x.*y, Q = sum x.*swap(y),
// combined per pair with signs depending on conjugation.
template <bool Conj>
cplx v_dot_impl(std::size_t n, const cplx* x, const cplx* y) {
  __m256d accp = _mm256_setzero_pd();
  __m256d accq = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(as_d(x + i));
    __m256d yv = _mm256_loadu_pd(as_d(y + i));
    accp = _mm256_fmadd_pd(xv, yv, accp);
    accq = _mm256_fmadd_pd(xv, swap_ri(yv), accq);
  }
  alignas(32) double p[4], q[4];
  _mm256_store_pd(p, accp);
  _mm256_store_pd(q, accq);
  double re, im;
  if constexpr (Conj) {
    re = (p[0] + p[1]) + (p[2] + p[3]);
    im = (q[0] - q[1]) + (q[2] - q[3]);
  } else {
    re = (p[0] - p[1]) + (p[2] - p[3]);
    im = (q[0] + q[1]) + (q[2] + q[3]);
  }
  cplx acc(re, im);
  for (; i < n; ++i) acc += (Conj ? std::conj(x[i]) : x[i]) * y[i];
  return acc;
}

cplx v_dotc(std::size_t n, const cplx* x, const cplx* y) {
  return v_dot_impl<true>(n, x, y);
}
cplx v_dotu(std::size_t n, const cplx* x, const cplx* y) {
  return v_dot_impl<false>(n, x, y);
}

double v_nrm2sq(std::size_t n, const cplx* x) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(as_d(x + i));
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  alignas(32) double a[4];
  _mm256_store_pd(a, acc);
  double s = (a[0] + a[1]) + (a[2] + a[3]);
  for (; i < n; ++i) s += std::norm(x[i]);
  return s;
}

// ---------------------------------------------------------------------------
// GEMM. Microkernel: 2 rows x 4 complex columns, split accumulators.
// B panels of 4 columns stay hot in L2 across the row sweep.
// ---------------------------------------------------------------------------

inline void scale_c_row(cplx beta, cplx* c, std::size_t n) {
  if (beta == cplx(0.0)) {
    for (std::size_t j = 0; j < n; ++j) c[j] = 0.0;
  } else if (beta != cplx(1.0)) {
    v_scal(n, beta, c);
  }
}

// Accumulate alpha * (A rows i0..i0+mr-1) * B into C for a 4-column tile.
template <int MR>
inline void gemm_tile(std::size_t k, cplx alpha, const cplx* a,
                      std::size_t lda, const cplx* b, std::size_t ldb, cplx* c,
                      std::size_t ldc) {
  __m256d p0[MR], p1[MR], q0[MR], q1[MR];
  for (int r = 0; r < MR; ++r) {
    p0[r] = _mm256_setzero_pd();
    p1[r] = _mm256_setzero_pd();
    q0[r] = _mm256_setzero_pd();
    q1[r] = _mm256_setzero_pd();
  }
  for (std::size_t p = 0; p < k; ++p) {
    const __m256d b0 = _mm256_loadu_pd(as_d(b + p * ldb));
    const __m256d b1 = _mm256_loadu_pd(as_d(b + p * ldb + 2));
    const __m256d s0 = swap_ri(b0);
    const __m256d s1 = swap_ri(b1);
    for (int r = 0; r < MR; ++r) {
      const double* ap = as_d(a + r * lda + p);
      const __m256d ar = _mm256_set1_pd(ap[0]);
      const __m256d ai = _mm256_set1_pd(ap[1]);
      p0[r] = _mm256_fmadd_pd(ar, b0, p0[r]);
      p1[r] = _mm256_fmadd_pd(ar, b1, p1[r]);
      q0[r] = _mm256_fmadd_pd(ai, s0, q0[r]);
      q1[r] = _mm256_fmadd_pd(ai, s1, q1[r]);
    }
  }
  const __m256d are = _mm256_set1_pd(alpha.real());
  const __m256d aim = _mm256_set1_pd(alpha.imag());
  for (int r = 0; r < MR; ++r) {
    const __m256d t0 = _mm256_addsub_pd(p0[r], q0[r]);
    const __m256d t1 = _mm256_addsub_pd(p1[r], q1[r]);
    cplx* crow = c + r * ldc;
    __m256d c0 = _mm256_loadu_pd(as_d(crow));
    __m256d c1 = _mm256_loadu_pd(as_d(crow + 2));
    c0 = _mm256_add_pd(c0, cmul(are, aim, t0));
    c1 = _mm256_add_pd(c1, cmul(are, aim, t1));
    _mm256_storeu_pd(as_d(crow), c0);
    _mm256_storeu_pd(as_d(crow + 2), c1);
  }
}

void v_gemm(std::size_t m, std::size_t n, std::size_t k, cplx alpha,
            const cplx* a, std::size_t lda, const cplx* b, std::size_t ldb,
            cplx beta, cplx* c, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) scale_c_row(beta, c + i * ldc, n);
  if (alpha == cplx(0.0) || k == 0) return;

  const std::size_t n4 = n - n % 4;
  // Pack each 4-column B panel contiguously (one cache line per k) and
  // reuse it across the whole row sweep; the raw column walk has a page-
  // sized stride that defeats the prefetcher at large n.
  std::vector<cplx> bpack(k * 4);
  for (std::size_t j = 0; j < n4; j += 4) {
    for (std::size_t p = 0; p < k; ++p) {
      const cplx* src = b + p * ldb + j;
      cplx* dst = bpack.data() + p * 4;
      dst[0] = src[0];
      dst[1] = src[1];
      dst[2] = src[2];
      dst[3] = src[3];
    }
    std::size_t i = 0;
    for (; i + 2 <= m; i += 2)
      gemm_tile<2>(k, alpha, a + i * lda, lda, bpack.data(), 4,
                   c + i * ldc + j, ldc);
    if (i < m)
      gemm_tile<1>(k, alpha, a + i * lda, lda, bpack.data(), 4,
                   c + i * ldc + j, ldc);
  }
  // Rightmost column tail, scalar.
  if (n4 < n) {
    for (std::size_t r = 0; r < m; ++r) {
      const cplx* arow = a + r * lda;
      cplx* crow = c + r * ldc;
      for (std::size_t p = 0; p < k; ++p) {
        const cplx aip = alpha * arow[p];
        const cplx* brow = b + p * ldb;
        for (std::size_t j = n4; j < n; ++j) crow[j] += aip * brow[j];
      }
    }
  }
}

void v_gemv(std::size_t m, std::size_t n, cplx alpha, const cplx* a,
            std::size_t lda, const cplx* x, cplx beta, cplx* y) {
  for (std::size_t i = 0; i < m; ++i) {
    const cplx acc = v_dotu(n, a + i * lda, x);
    y[i] = alpha * acc + (beta == cplx(0.0) ? cplx(0.0) : beta * y[i]);
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t = {"avx2",   v_axpy,   v_scal, v_dotc,
                                v_dotu,   v_nrm2sq, v_gemm, v_gemv};
  return t;
}

}  // namespace fockbench::kernels

#endif  // FOCKBENCH_HAVE_AVX2
