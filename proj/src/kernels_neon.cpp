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

// NEON (aarch64) kernels. One complex per 128-bit vector; same
// split-accumulator scheme as the AVX2 table, with addsub emulated by an
// FMA against the sign vector {-1, +1}.

#include "fockbench/kernels.hpp"

#if defined(FOCKBENCH_HAVE_NEON)

#include <arm_neon.h>

namespace fockbench::kernels {
namespace {

inline const double* as_d(const cplx* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* as_d(cplx* p) { return reinterpret_cast<double*>(p); }

inline float64x2_t swap_ri(float64x2_t v) { return vextq_f64(v, v, 1); }

inline float64x2_t addsub(float64x2_t p, float64x2_t q) {
  const float64x2_t sign = {-1.0, 1.0};
  return vfmaq_f64(p, q, sign);
}

inline float64x2_t cmul(float64x2_t are, float64x2_t aim, float64x2_t v) {
  return addsub(vmulq_f64(are, v), vmulq_f64(aim, swap_ri(v)));
}

void n_axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const float64x2_t are = vdupq_n_f64(alpha.real());
  const float64x2_t aim = vdupq_n_f64(alpha.imag());
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t xv = vld1q_f64(as_d(x + i));
    float64x2_t yv = vld1q_f64(as_d(y + i));
    vst1q_f64(as_d(y + i), vaddq_f64(yv, cmul(are, aim, xv)));
  }
}

void n_scal(std::size_t n, cplx alpha, cplx* x) {
  const float64x2_t are = vdupq_n_f64(alpha.real());
  const float64x2_t aim = vdupq_n_f64(alpha.imag());
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t xv = vld1q_f64(as_d(x + i));
    vst1q_f64(as_d(x + i), cmul(are, aim, xv));
  }
}

template <bool Conj>
cplx n_dot_impl(std::size_t n, const cplx* x, const cplx* y) {
  float64x2_t accp = vdupq_n_f64(0.0);
  float64x2_t accq = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t xv = vld1q_f64(as_d(x + i));
    float64x2_t yv = vld1q_f64(as_d(y + i));
    accp = vfmaq_f64(accp, xv, yv);
    accq = vfmaq_f64(accq, xv, swap_ri(yv));
  }
  const double p0 = vgetq_lane_f64(accp, 0), p1 = vgetq_lane_f64(accp, 1);
  const double q0 = vgetq_lane_f64(accq, 0), q1 = vgetq_lane_f64(accq, 1);
  if constexpr (Conj) return cplx(p0 + p1, q0 - q1);
  return cplx(p0 - p1, q0 + q1);
}

cplx n_dotc(std::size_t n, const cplx* x, const cplx* y) {
  return n_dot_impl<true>(n, x, y);
}
cplx n_dotu(std::size_t n, const cplx* x, const cplx* y) {
  return n_dot_impl<false>(n, x, y);
}

double n_nrm2sq(std::size_t n, const cplx* x) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t xv = vld1q_f64(as_d(x + i));
    acc = vfmaq_f64(acc, xv, xv);
  }
  return vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
}

template <int MR>
inline void gemm_tile(std::size_t k, cplx alpha, const cplx* a,
                      std::size_t lda, const cplx* b, std::size_t ldb, cplx* c,
                      std::size_t ldc) {
  float64x2_t p[MR][4], q[MR][4];
  for (int r = 0; r < MR; ++r)
    for (int v = 0; v < 4; ++v) {
      p[r][v] = vdupq_n_f64(0.0);
      q[r][v] = vdupq_n_f64(0.0);
    }
  for (std::size_t t = 0; t < k; ++t) {
    float64x2_t bv[4], sv[4];
    for (int v = 0; v < 4; ++v) {
      bv[v] = vld1q_f64(as_d(b + t * ldb + v));
      sv[v] = swap_ri(bv[v]);
    }
    for (int r = 0; r < MR; ++r) {
      const double* ap = as_d(a + r * lda + t);
      const float64x2_t ar = vdupq_n_f64(ap[0]);
      const float64x2_t ai = vdupq_n_f64(ap[1]);
      for (int v = 0; v < 4; ++v) {
        p[r][v] = vfmaq_f64(p[r][v], ar, bv[v]);
        q[r][v] = vfmaq_f64(q[r][v], ai, sv[v]);
      }
    }
  }
  const float64x2_t are = vdupq_n_f64(alpha.real());
  const float64x2_t aim = vdupq_n_f64(alpha.imag());
  for (int r = 0; r < MR; ++r) {
    cplx* crow = c + r * ldc;
    for (int v = 0; v < 4; ++v) {
      float64x2_t tv = addsub(p[r][v], q[r][v]);
      float64x2_t cv = vld1q_f64(as_d(crow + v));
      vst1q_f64(as_d(crow + v), vaddq_f64(cv, cmul(are, aim, tv)));
    }
  }
}

void n_gemm(std::size_t m, std::size_t n, std::size_t k, cplx alpha,
            const cplx* a, std::size_t lda, const cplx* b, std::size_t ldb,
            cplx beta, cplx* c, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * ldc;
    if (beta == cplx(0.0)) {
      for (std::size_t j = 0; j < n; ++j) crow[j] = 0.0;
    } else if (beta != cplx(1.0)) {
      n_scal(n, beta, crow);
    }
  }
  if (alpha == cplx(0.0) || k == 0) return;

  const std::size_t n4 = n - n % 4;
  // Same packed-panel scheme as the AVX2 table.
  std::vector<cplx> bpack(k * 4);
  for (std::size_t j = 0; j < n4; j += 4) {
    for (std::size_t t = 0; t < k; ++t) {
      const cplx* src = b + t * ldb + j;
      cplx* dst = bpack.data() + t * 4;
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
  if (n4 < n) {
    for (std::size_t r = 0; r < m; ++r) {
      const cplx* arow = a + r * lda;
      cplx* crow = c + r * ldc;
      for (std::size_t t = 0; t < k; ++t) {
        const cplx aip = alpha * arow[t];
        const cplx* brow = b + t * ldb;
        for (std::size_t j = n4; j < n; ++j) crow[j] += aip * brow[j];
      }
    }
  }
}

void n_gemv(std::size_t m, std::size_t n, cplx alpha, const cplx* a,
            std::size_t lda, const cplx* x, cplx beta, cplx* y) {
  for (std::size_t i = 0; i < m; ++i) {
    const cplx acc = n_dotu(n, a + i * lda, x);
    y[i] = alpha * acc + (beta == cplx(0.0) ? cplx(0.0) : beta * y[i]);
  }
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable t = {"neon",   n_axpy,   n_scal, n_dotc,
                                n_dotu,   n_nrm2sq, n_gemm, n_gemv};
  return t;
}

}  // namespace fockbench::kernels

#endif  // FOCKBENCH_HAVE_NEON
