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

#ifndef FOCKBENCH_FOCK_HPP
#define FOCKBENCH_FOCK_HPP

#include "fockbench/matrix.hpp"

namespace fockbench {

// Truncated m-mode Fock space. Each mode j keeps occupation numbers
// 0 .. cutoffs[j]-1; the creation operator annihilates the top level (hard
// cutoff, leakage monitored downstream rather than hidden).
//
// Flat indexing is row-major over modes with mode 0 slowest:
//   flat = sum_j n_j * stride_j,  stride_j = prod_{l > j} cutoffs[l].
class FockBasis {
 public:
  explicit FockBasis(std::vector<std::size_t> cutoffs);

  std::size_t modes() const { return cutoffs_.size(); }
  const std::vector<std::size_t>& cutoffs() const { return cutoffs_; }
  std::size_t cutoff(std::size_t mode) const { return cutoffs_[mode]; }
  std::size_t total_dim() const { return total_dim_; }

  std::size_t flat_index(const std::vector<std::size_t>& occ) const;
  std::vector<std::size_t> occupations(std::size_t flat) const;
  std::size_t occupation_of(std::size_t flat, std::size_t mode) const;

  friend bool operator==(const FockBasis&, const FockBasis&) = default;

 private:
  std::vector<std::size_t> cutoffs_;
  std::vector<std::size_t> strides_;
  std::size_t total_dim_ = 0;
};

struct HilbertOperator {
  FockBasis basis;
  CMatrix mat;
};

struct Ket {
  FockBasis basis;
  CVector amps;
};

HilbertOperator identity_operator(const FockBasis& basis);
HilbertOperator annihilation(const FockBasis& basis, std::size_t mode);
HilbertOperator creation(const FockBasis& basis, std::size_t mode);
HilbertOperator number_operator(const FockBasis& basis, std::size_t mode);
// diag (-1)^{n_mode}
HilbertOperator parity_operator(const FockBasis& basis, std::size_t mode);

// Identity on all other modes, `op` on the given one.
HilbertOperator embed_single_mode(const FockBasis& basis, std::size_t mode,
                                  const CMatrix& op);

Ket fock_ket(const FockBasis& basis, const std::vector<std::size_t>& occ);

// Truncated coherent / CAT states. `tail_mass` is the probability mass the
// cutoff removed, before renormalization; construction fails when it
// exceeds `guard` (every downstream exponential-smallness claim needs that
// floor to be quantified).
struct StateWithTail {
  Ket ket;
  double tail_mass;
};

StateWithTail coherent_state(const FockBasis& basis,
                             const std::vector<cplx>& alpha,
                             double guard = 1e-10);

enum class CatParity { plus, minus };

StateWithTail cat_state(const FockBasis& basis, cplx alpha, CatParity parity,
                        std::size_t mode = 0, double guard = 1e-10);

}  // namespace fockbench

#endif  // FOCKBENCH_FOCK_HPP
