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

#ifndef FOCKBENCH_MATRIX_HPP
#define FOCKBENCH_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "fockbench/kernels.hpp"

namespace fockbench {

// Dense row-major complex matrix. Value semantics throughout; the heavy
// arithmetic goes through the kernel layer.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0)) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  cplx* row(std::size_t i) { return data_.data() + i * cols_; }
  const cplx* row(std::size_t i) const { return data_.data() + i * cols_; }

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx alpha);

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conjugate() const;

  cplx trace() const;
  double frobenius_norm() const;
  double one_norm() const;  // max absolute column sum
  double max_abs() const;
  bool all_finite() const;
  bool is_hermitian(double tol) const;

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cplx alpha, CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);

// c += alpha * a * b (gemm accumulate)
void gemm_acc(cplx alpha, const CMatrix& a, const CMatrix& b, CMatrix& c);

// (x + x^+)/2 — projection onto the Hermitian subspace. Used to strip
// roundoff asymmetry from propagated states; leaves the trace untouched.
CMatrix hermitian_part(CMatrix x);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Column-stacking vectorization: vec(X)[j*D + i] = X(i, j), so that
// vec(A X B) = (B^T (x) A) vec(X). This convention is load-bearing for all
// superoperator matrices; tests pin it down.
std::vector<cplx> vec(const CMatrix& x);
CMatrix unvec(const std::vector<cplx>& v, std::size_t rows, std::size_t cols);

// Thin complex vector helpers used for kets and flattened states.
using CVector = std::vector<cplx>;
double norm(const CVector& v);
void normalize(CVector& v);
cplx inner(const CVector& a, const CVector& b);  // <a|b>, conjugate-linear in a

// y = A * x
CVector matvec(const CMatrix& a, const CVector& x);
// |x><y|
CMatrix outer(const CVector& x, const CVector& y);

}  // namespace fockbench

#endif  // FOCKBENCH_MATRIX_HPP
