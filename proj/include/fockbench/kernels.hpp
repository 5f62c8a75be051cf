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

#ifndef FOCKBENCH_KERNELS_HPP
#define FOCKBENCH_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fockbench {

using cplx = std::complex<double>;

namespace kernels {

// Low-level dense complex routines. All matrices are row-major with an
// explicit leading dimension (stride between rows, in elements).
//
// Each entry point exists in a scalar reference version and, where the
// target supports it, a SIMD version. The active table is chosen once at
// startup (see select() / active()); scalar is the semantic reference and
// the SIMD variants are equivalence-tested against it.
struct KernelTable {
  const char* name;

  // y += alpha * x
  void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  // x *= alpha
  void (*scal)(std::size_t n, cplx alpha, cplx* x);
  // sum_i conj(x_i) * y_i
  cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);
  // sum_i x_i * y_i  (no conjugation)
  cplx (*dotu)(std::size_t n, const cplx* x, const cplx* y);
  // sum_i |x_i|^2
  double (*nrm2sq)(std::size_t n, const cplx* x);
  // C <- alpha*A*B + beta*C, A m-by-k, B k-by-n, C m-by-n
  void (*gemm)(std::size_t m, std::size_t n, std::size_t k, cplx alpha,
               const cplx* a, std::size_t lda, const cplx* b, std::size_t ldb,
               cplx beta, cplx* c, std::size_t ldc);
  // y <- alpha*A*x + beta*y, A m-by-n
  void (*gemv)(std::size_t m, std::size_t n, cplx alpha, const cplx* a,
               std::size_t lda, const cplx* x, cplx beta, cplx* y);
};

const KernelTable& scalar_table();

#if defined(FOCKBENCH_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(FOCKBENCH_HAVE_NEON)
const KernelTable& neon_table();
#endif

// Names of kernel tables usable on this machine ("scalar" always included;
// "avx2"/"neon" when compiled in and supported by the CPU).
std::vector<std::string> available();

// Currently active table. Defaults to the best available unless overridden
// by select() or the FOCKBENCH_KERNELS environment variable ("scalar",
// "avx2", "neon", "auto").
const KernelTable& active();

// Switch the active table by name; returns false for unknown/unsupported
// names. Intended to be called once during startup, before any worker
// threads exist.
bool select(std::string_view name);

// Convenience forwarders through the active table.
inline void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  active().axpy(n, alpha, x, y);
}
inline void scal(std::size_t n, cplx alpha, cplx* x) {
  active().scal(n, alpha, x);
}
inline cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  return active().dotc(n, x, y);
}
inline cplx dotu(std::size_t n, const cplx* x, const cplx* y) {
  return active().dotu(n, x, y);
}
inline double nrm2sq(std::size_t n, const cplx* x) {
  return active().nrm2sq(n, x);
}
inline void gemm(std::size_t m, std::size_t n, std::size_t k, cplx alpha,
                 const cplx* a, std::size_t lda, const cplx* b,
                 std::size_t ldb, cplx beta, cplx* c, std::size_t ldc) {
  active().gemm(m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}
inline void gemv(std::size_t m, std::size_t n, cplx alpha, const cplx* a,
                 std::size_t lda, const cplx* x, cplx beta, cplx* y) {
  active().gemv(m, n, alpha, a, lda, x, beta, y);
}

}  // namespace kernels
}  // namespace fockbench

#endif  // FOCKBENCH_KERNELS_HPP
