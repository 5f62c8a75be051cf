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

#include "fockbench/liouville.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fockbench {

namespace {

void check_square_on(const FockBasis& basis, const CMatrix& m,
                     const char* what) {
  if (m.rows() != basis.total_dim() || m.cols() != basis.total_dim())
    throw std::invalid_argument(std::string(what) +
                                ": shape does not match the basis dimension");
}

}  // namespace

DensityOperator::DensityOperator(FockBasis b, CMatrix m)
    : basis(std::move(b)), mat(std::move(m)) {
  check_square_on(basis, mat, "DensityOperator");
  const double scale = std::max(1.0, mat.max_abs());
  if (!mat.is_hermitian(1e-12 * scale))
    throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
}

DensityOperator DensityOperator::from_ket(const Ket& k) {
  return DensityOperator(k.basis, outer(k.amps, k.amps));
}

DensityOperator DensityOperator::fock_state(
    const FockBasis& b, const std::vector<std::size_t>& occ) {
  return from_ket(fock_ket(b, occ));
}

DensityOperator DensityOperator::maximally_mixed(const FockBasis& b) {
  CMatrix m = CMatrix::identity(b.total_dim());
  m *= cplx(1.0 / double(b.total_dim()));
  return DensityOperator(b, std::move(m));
}

CMatrix SuperOperatorMatrix::apply(const CMatrix& x) const {
  if (x.rows() != dim || x.cols() != dim)
    throw std::invalid_argument("SuperOperatorMatrix: input shape mismatch");
  return unvec(matvec(mat, vec(x)), dim, dim);
}

Liouvillian::Liouvillian(FockBasis basis,
                         std::optional<HilbertOperator> hamiltonian,
                         std::vector<HilbertOperator> jumps,
                         bool check_hermitian)
    : basis_(std::move(basis)),
      hamiltonian_(std::move(hamiltonian)),
      jumps_(std::move(jumps)) {
  if (hamiltonian_) {
    if (hamiltonian_->basis != basis_)
      throw std::invalid_argument("Liouvillian: Hamiltonian basis mismatch");
    check_square_on(basis_, hamiltonian_->mat, "Liouvillian H");
    const double scale = std::max(1.0, hamiltonian_->mat.max_abs());
    if (check_hermitian && !hamiltonian_->mat.is_hermitian(1e-12 * scale))
      throw std::invalid_argument("Liouvillian: Hamiltonian is not Hermitian");
  }
  jump_grams_.reserve(jumps_.size());
  for (const HilbertOperator& l : jumps_) {
    if (l.basis != basis_)
      throw std::invalid_argument("Liouvillian: jump operator basis mismatch");
    check_square_on(basis_, l.mat, "Liouvillian jump");
    jump_grams_.push_back(l.mat.adjoint() * l.mat);
  }
}

CMatrix Liouvillian::apply(const CMatrix& x) const {
  check_square_on(basis_, x, "Liouvillian::apply");
  const std::size_t d = basis_.total_dim();
  CMatrix out(d, d);
  if (hamiltonian_) {
    // -i (H x - x H)
    gemm_acc(cplx(0.0, -1.0), hamiltonian_->mat, x, out);
    gemm_acc(cplx(0.0, 1.0), x, hamiltonian_->mat, out);
  }
  for (std::size_t j = 0; j < jumps_.size(); ++j) {
    const CMatrix lx = jumps_[j].mat * x;
    gemm_acc(cplx(1.0), lx, jumps_[j].mat.adjoint(), out);
    gemm_acc(cplx(-0.5), jump_grams_[j], x, out);
    gemm_acc(cplx(-0.5), x, jump_grams_[j], out);
  }
  return out;
}

Liouvillian Liouvillian::finalized(std::size_t dense_limit) const {
  Liouvillian copy = *this;
  copy.cached_ =
      std::make_shared<SuperOperatorMatrix>(flatten(*this, dense_limit));
  return copy;
}

std::vector<std::size_t> Liouvillian::degree_margin() const {
  std::vector<std::size_t> margin(basis_.modes(), 0);
  auto fold = [&](const HilbertOperator& op) {
    const std::vector<std::size_t> s = occupation_shift(op);
    for (std::size_t j = 0; j < margin.size(); ++j)
      margin[j] = std::max(margin[j], s[j]);
  };
  if (hamiltonian_) fold(*hamiltonian_);
  for (const HilbertOperator& l : jumps_) fold(l);
  return margin;
}

Liouvillian commutator_generator(const HilbertOperator& h) {
  return Liouvillian(h.basis, h, {});
}

Liouvillian dissipator(const HilbertOperator& l) {
  return Liouvillian(l.basis, std::nullopt, {l});
}

Liouvillian gksl(const FockBasis& basis,
                 std::optional<HilbertOperator> hamiltonian,
                 std::vector<HilbertOperator> jumps) {
  return Liouvillian(basis, std::move(hamiltonian), std::move(jumps));
}

Liouvillian zero_liouvillian(const FockBasis& basis) {
  return Liouvillian(basis, std::nullopt, {});
}

Liouvillian operator+(const Liouvillian& a, const Liouvillian& b) {
  if (a.basis() != b.basis())
    throw std::invalid_argument("Liouvillian sum: basis mismatch");
  std::optional<HilbertOperator> h;
  if (a.hamiltonian() && b.hamiltonian())
    h = HilbertOperator{a.basis(),
                        a.hamiltonian()->mat + b.hamiltonian()->mat};
  else if (a.hamiltonian())
    h = *a.hamiltonian();
  else if (b.hamiltonian())
    h = *b.hamiltonian();
  std::vector<HilbertOperator> jumps = a.jumps();
  jumps.insert(jumps.end(), b.jumps().begin(), b.jumps().end());
  return Liouvillian(a.basis(), std::move(h), std::move(jumps));
}

SuperOperatorMatrix flatten(const Liouvillian& l, std::size_t dense_limit) {
  const std::size_t d = l.basis().total_dim();
  if (d > dense_limit)
    throw std::invalid_argument(
        "flatten: dimension " + std::to_string(d) + " exceeds the dense limit " +
        std::to_string(dense_limit) + "; use action-form propagation");
  if (l.cached_matrix()) return *l.cached_matrix();

  const CMatrix eye = CMatrix::identity(d);
  CMatrix s(d * d, d * d);
  if (l.hamiltonian()) {
    const CMatrix& h = l.hamiltonian()->mat;
    s += cplx(0.0, -1.0) * kron(eye, h);
    s += cplx(0.0, 1.0) * kron(h.transpose(), eye);
  }
  for (const HilbertOperator& jop : l.jumps()) {
    const CMatrix& j = jop.mat;
    const CMatrix gram = j.adjoint() * j;
    s += kron(j.conjugate(), j);
    s += cplx(-0.5) * kron(eye, gram);
    s += cplx(-0.5) * kron(gram.transpose(), eye);
  }
  return {d, std::move(s)};
}

ProjectorSuperOp::ProjectorSuperOp(HilbertOperator p, double idem_tol)
    : p_(std::move(p)) {
  check_square_on(p_.basis, p_.mat, "ProjectorSuperOp");
  const CMatrix p2 = p_.mat * p_.mat;
  double diff = 0.0;
  for (std::size_t i = 0; i < p2.rows(); ++i)
    for (std::size_t j = 0; j < p2.cols(); ++j)
      diff = std::max(diff, std::abs(p2(i, j) - p_.mat(i, j)));
  if (diff > idem_tol)
    throw std::invalid_argument(
        "ProjectorSuperOp: operator is not idempotent (max |P^2-P| = " +
        std::to_string(diff) + ")");
}

CMatrix ProjectorSuperOp::apply(const CMatrix& x) const {
  return p_.mat * x * p_.mat;
}

SuperOperatorMatrix ProjectorSuperOp::flattened() const {
  return {p_.basis.total_dim(), kron(p_.mat.conjugate(), p_.mat)};
}

ProjectorSuperOp projector_superop(HilbertOperator p, double idem_tol) {
  return ProjectorSuperOp(std::move(p), idem_tol);
}

std::vector<std::size_t> occupation_shift(const HilbertOperator& op) {
  const FockBasis& basis = op.basis;
  std::vector<std::size_t> shift(basis.modes(), 0);
  const double floor = 1e-14 * std::max(1.0, op.mat.max_abs());
  for (std::size_t r = 0; r < op.mat.rows(); ++r)
    for (std::size_t c = 0; c < op.mat.cols(); ++c) {
      if (std::abs(op.mat(r, c)) <= floor) continue;
      for (std::size_t j = 0; j < basis.modes(); ++j) {
        const std::size_t nr = basis.occupation_of(r, j);
        const std::size_t nc = basis.occupation_of(c, j);
        shift[j] = std::max(shift[j], nr > nc ? nr - nc : nc - nr);
      }
    }
  return shift;
}

}  // namespace fockbench
