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

#include "fockbench/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace fockbench {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("CMatrix: shape mismatch in +=");
  kernels::axpy(data_.size(), cplx(1.0), o.data_.data(), data_.data());
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("CMatrix: shape mismatch in -=");
  kernels::axpy(data_.size(), cplx(-1.0), o.data_.data(), data_.data());
  return *this;
}

CMatrix& CMatrix::operator*=(cplx alpha) {
  kernels::scal(data_.size(), alpha, data_.data());
  return *this;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMatrix CMatrix::transpose() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

CMatrix CMatrix::conjugate() const {
  CMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    r.data_[i] = std::conj(data_[i]);
  return r;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius_norm() const {
  return std::sqrt(kernels::nrm2sq(data_.size(), data_.data()));
}

double CMatrix::one_norm() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    if (s > best) best = s;
  }
  return best;
}

double CMatrix::max_abs() const {
  double best = 0.0;
  for (const cplx& z : data_) best = std::max(best, std::abs(z));
  return best;
}

bool CMatrix::all_finite() const {
  for (const cplx& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

bool CMatrix::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol)
        return false;
  return true;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx alpha, CMatrix a) { return a *= alpha; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("CMatrix: shape mismatch in product");
  CMatrix c(a.rows(), b.cols());
  kernels::gemm(a.rows(), b.cols(), a.cols(), cplx(1.0), a.data(), a.cols(),
                b.data(), b.cols(), cplx(0.0), c.data(), c.cols());
  return c;
}

CMatrix hermitian_part(CMatrix x) {
  CMatrix adj = x.adjoint();
  x += adj;
  x *= cplx(0.5);
  return x;
}

void gemm_acc(cplx alpha, const CMatrix& a, const CMatrix& b, CMatrix& c) {
  if (a.cols() != b.rows() || c.rows() != a.rows() || c.cols() != b.cols())
    throw std::invalid_argument("gemm_acc: shape mismatch");
  kernels::gemm(a.rows(), b.cols(), a.cols(), alpha, a.data(), a.cols(),
                b.data(), b.cols(), cplx(1.0), c.data(), c.cols());
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

std::vector<cplx> vec(const CMatrix& x) {
  std::vector<cplx> v(x.rows() * x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j)
    for (std::size_t i = 0; i < x.rows(); ++i) v[j * x.rows() + i] = x(i, j);
  return v;
}

CMatrix unvec(const std::vector<cplx>& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols)
    throw std::invalid_argument("unvec: size mismatch");
  CMatrix x(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) x(i, j) = v[j * rows + i];
  return x;
}

double norm(const CVector& v) {
  return std::sqrt(kernels::nrm2sq(v.size(), v.data()));
}

void normalize(CVector& v) {
  const double n = norm(v);
  if (n == 0.0) throw std::invalid_argument("normalize: zero vector");
  kernels::scal(v.size(), cplx(1.0 / n), v.data());
}

cplx inner(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner: size mismatch");
  return kernels::dotc(a.size(), a.data(), b.data());
}

CVector matvec(const CMatrix& a, const CVector& x) {
  if (a.cols() != x.size())
    throw std::invalid_argument("matvec: size mismatch");
  CVector y(a.rows());
  kernels::gemv(a.rows(), a.cols(), cplx(1.0), a.data(), a.cols(), x.data(),
                cplx(0.0), y.data());
  return y;
}

CMatrix outer(const CVector& x, const CVector& y) {
  CMatrix m(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      m(i, j) = x[i] * std::conj(y[j]);
  return m;
}

}  // namespace fockbench
