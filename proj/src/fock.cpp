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

#include "fockbench/fock.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace fockbench {

FockBasis::FockBasis(std::vector<std::size_t> cutoffs)
    : cutoffs_(std::move(cutoffs)) {
  if (cutoffs_.empty())
    throw std::invalid_argument("FockBasis: need at least one mode");
  for (std::size_t d : cutoffs_)
    if (d < 2) throw std::invalid_argument("FockBasis: cutoffs must be >= 2");
  strides_.assign(cutoffs_.size(), 1);
  for (std::size_t j = cutoffs_.size() - 1; j-- > 0;)
    strides_[j] = strides_[j + 1] * cutoffs_[j + 1];
  total_dim_ = strides_[0] * cutoffs_[0];
}

std::size_t FockBasis::flat_index(const std::vector<std::size_t>& occ) const {
  if (occ.size() != modes())
    throw std::invalid_argument("FockBasis: occupation list length mismatch");
  std::size_t flat = 0;
  for (std::size_t j = 0; j < occ.size(); ++j) {
    if (occ[j] >= cutoffs_[j])
      throw std::invalid_argument("FockBasis: occupation beyond cutoff");
    flat += occ[j] * strides_[j];
  }
  return flat;
}

std::vector<std::size_t> FockBasis::occupations(std::size_t flat) const {
  std::vector<std::size_t> occ(modes());
  for (std::size_t j = 0; j < modes(); ++j) {
    occ[j] = (flat / strides_[j]) % cutoffs_[j];
  }
  return occ;
}

std::size_t FockBasis::occupation_of(std::size_t flat, std::size_t mode) const {
  return (flat / strides_[mode]) % cutoffs_[mode];
}

namespace {

void check_mode(const FockBasis& basis, std::size_t mode) {
  if (mode >= basis.modes())
    throw std::invalid_argument("fock: mode index " + std::to_string(mode) +
                                " out of range");
}

CMatrix single_mode_annihilation(std::size_t d) {
  CMatrix a(d, d);
  for (std::size_t n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

}  // namespace

HilbertOperator identity_operator(const FockBasis& basis) {
  return {basis, CMatrix::identity(basis.total_dim())};
}

HilbertOperator annihilation(const FockBasis& basis, std::size_t mode) {
  check_mode(basis, mode);
  return embed_single_mode(basis, mode,
                           single_mode_annihilation(basis.cutoff(mode)));
}

HilbertOperator creation(const FockBasis& basis, std::size_t mode) {
  check_mode(basis, mode);
  return embed_single_mode(
      basis, mode, single_mode_annihilation(basis.cutoff(mode)).adjoint());
}

HilbertOperator number_operator(const FockBasis& basis, std::size_t mode) {
  check_mode(basis, mode);
  CMatrix n(basis.total_dim(), basis.total_dim());
  for (std::size_t i = 0; i < basis.total_dim(); ++i)
    n(i, i) = double(basis.occupation_of(i, mode));
  return {basis, std::move(n)};
}

HilbertOperator parity_operator(const FockBasis& basis, std::size_t mode) {
  check_mode(basis, mode);
  CMatrix p(basis.total_dim(), basis.total_dim());
  for (std::size_t i = 0; i < basis.total_dim(); ++i)
    p(i, i) = (basis.occupation_of(i, mode) % 2 == 0) ? 1.0 : -1.0;
  return {basis, std::move(p)};
}

HilbertOperator embed_single_mode(const FockBasis& basis, std::size_t mode,
                                  const CMatrix& op) {
  check_mode(basis, mode);
  const std::size_t d = basis.cutoff(mode);
  if (op.rows() != d || op.cols() != d)
    throw std::invalid_argument(
        "embed_single_mode: operator dimension does not match the mode cutoff");
  std::size_t outer = 1, inner = 1;
  for (std::size_t j = 0; j < mode; ++j) outer *= basis.cutoff(j);
  for (std::size_t j = mode + 1; j < basis.modes(); ++j)
    inner *= basis.cutoff(j);

  CMatrix full(basis.total_dim(), basis.total_dim());
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        const cplx v = op(r, c);
        if (v == cplx(0.0)) continue;
        const std::size_t row0 = (o * d + r) * inner;
        const std::size_t col0 = (o * d + c) * inner;
        for (std::size_t i = 0; i < inner; ++i) full(row0 + i, col0 + i) = v;
      }
  return {basis, std::move(full)};
}

Ket fock_ket(const FockBasis& basis, const std::vector<std::size_t>& occ) {
  CVector amps(basis.total_dim(), cplx(0.0));
  amps[basis.flat_index(occ)] = 1.0;
  return {basis, std::move(amps)};
}

StateWithTail coherent_state(const FockBasis& basis,
                             const std::vector<cplx>& alpha, double guard) {
  if (alpha.size() != basis.modes())
    throw std::invalid_argument("coherent_state: one amplitude per mode");

  // Per-mode truncated series with the exp(-|a|^2/2) prefactor; the retained
  // mass q_j tracks how much the cutoff removed before renormalization.
  std::vector<CVector> mode_amps(basis.modes());
  double retained = 1.0;
  for (std::size_t j = 0; j < basis.modes(); ++j) {
    const std::size_t d = basis.cutoff(j);
    CVector c(d);
    const double pref = std::exp(-0.5 * std::norm(alpha[j]));
    cplx term = pref;
    double q = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
      if (n > 0) term *= alpha[j] / std::sqrt(double(n));
      c[n] = term;
      q += std::norm(term);
    }
    retained *= q;
    mode_amps[j] = std::move(c);
  }
  const double tail = 1.0 - retained;
  if (tail > guard) {
    char msg[128];
    std::snprintf(msg, sizeof(msg),
                  "coherent_state: truncation tail mass %.3e exceeds guard %.3e",
                  tail, guard);
    throw std::invalid_argument(msg);
  }

  CVector amps(basis.total_dim());
  for (std::size_t i = 0; i < basis.total_dim(); ++i) {
    cplx v = 1.0;
    for (std::size_t j = 0; j < basis.modes(); ++j)
      v *= mode_amps[j][basis.occupation_of(i, j)];
    amps[i] = v;
  }
  normalize(amps);
  return {Ket{basis, std::move(amps)}, tail};
}

StateWithTail cat_state(const FockBasis& basis, cplx alpha, CatParity parity,
                        std::size_t mode, double guard) {
  check_mode(basis, mode);
  std::vector<cplx> plus(basis.modes(), cplx(0.0));
  std::vector<cplx> minus(basis.modes(), cplx(0.0));
  plus[mode] = alpha;
  minus[mode] = -alpha;
  // Tail mass is identical for +alpha and -alpha.
  StateWithTail a = coherent_state(basis, plus, guard);
  StateWithTail b = coherent_state(basis, minus, guard);

  CVector amps = a.ket.amps;
  const cplx sign = (parity == CatParity::plus) ? cplx(1.0) : cplx(-1.0);
  kernels::axpy(amps.size(), sign, b.ket.amps.data(), amps.data());
  if (norm(amps) < 1e-14)
    throw std::invalid_argument(
        "cat_state: superposition has zero norm (odd cat at alpha = 0?)");
  normalize(amps);
  return {Ket{basis, std::move(amps)}, a.tail_mass};
}

}  // namespace fockbench
