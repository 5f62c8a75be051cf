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

#ifndef FOCKBENCH_LIOUVILLE_HPP
#define FOCKBENCH_LIOUVILLE_HPP

#include <memory>
#include <optional>

#include "fockbench/fock.hpp"

namespace fockbench {

// Hermitian element of the truncated operator space. Hermiticity is enforced
// at construction (1e-12); unit trace and positivity are properties of
// *physical* states only and are checked on demand, because propagation under
// truncation legitimately drifts both.
struct DensityOperator {
  FockBasis basis;
  CMatrix mat;

  DensityOperator(FockBasis b, CMatrix m);

  static DensityOperator from_ket(const Ket& k);
  static DensityOperator fock_state(const FockBasis& b,
                                    const std::vector<std::size_t>& occ);
  static DensityOperator maximally_mixed(const FockBasis& b);
};

// Flattened (column-stacking) representation of a superoperator as a
// D^2 x D^2 matrix.
struct SuperOperatorMatrix {
  std::size_t dim = 0;  // Hilbert-space dimension D
  CMatrix mat;          // D^2 x D^2

  CMatrix apply(const CMatrix& x) const;
};

// Generator of dynamics on density operators: GKSL form
//   L(x) = -i [H, x] + sum_j L_j x L_j^+ - 1/2 {L_j^+ L_j, x}
// or a pure commutator / pure dissipator as special cases. Immutable after
// construction; the flattened matrix is produced by finalized() or flatten(),
// never behind-the-scenes.
class Liouvillian {
 public:
  Liouvillian(FockBasis basis, std::optional<HilbertOperator> hamiltonian,
              std::vector<HilbertOperator> jumps,
              bool check_hermitian = true);

  const FockBasis& basis() const { return basis_; }
  const std::optional<HilbertOperator>& hamiltonian() const {
    return hamiltonian_;
  }
  const std::vector<HilbertOperator>& jumps() const { return jumps_; }

  bool is_zero() const { return !hamiltonian_ && jumps_.empty(); }
  bool pure_commutator() const {
    return hamiltonian_.has_value() && jumps_.empty();
  }

  CMatrix apply(const CMatrix& x) const;

  // Copy carrying the precomputed flattened matrix.
  Liouvillian finalized(std::size_t dense_limit = 64) const;
  std::shared_ptr<const SuperOperatorMatrix> cached_matrix() const {
    return cached_;
  }

  // Per-mode maximum occupation shift of any constituent operator; states
  // supported `degree_margin` levels below the cutoff see the untruncated
  // action exactly.
  std::vector<std::size_t> degree_margin() const;

 private:
  FockBasis basis_;
  std::optional<HilbertOperator> hamiltonian_;
  std::vector<HilbertOperator> jumps_;
  std::vector<CMatrix> jump_grams_;  // L_j^+ L_j
  std::shared_ptr<const SuperOperatorMatrix> cached_;
};

Liouvillian commutator_generator(const HilbertOperator& h);
Liouvillian dissipator(const HilbertOperator& l);
Liouvillian gksl(const FockBasis& basis,
                 std::optional<HilbertOperator> hamiltonian,
                 std::vector<HilbertOperator> jumps);
Liouvillian zero_liouvillian(const FockBasis& basis);

// Generator of the summed dynamics (Hamiltonians add, jump lists concatenate).
Liouvillian operator+(const Liouvillian& a, const Liouvillian& b);

SuperOperatorMatrix flatten(const Liouvillian& l, std::size_t dense_limit = 64);

// x -> P x P for an idempotent P.
class ProjectorSuperOp {
 public:
  explicit ProjectorSuperOp(HilbertOperator p, double idem_tol = 1e-10);

  const HilbertOperator& projector() const { return p_; }
  CMatrix apply(const CMatrix& x) const;
  SuperOperatorMatrix flattened() const;

 private:
  HilbertOperator p_;
};

ProjectorSuperOp projector_superop(HilbertOperator p, double idem_tol = 1e-10);

// Per-mode maximum |n_j(row) - n_j(col)| over the nonzero entries.
std::vector<std::size_t> occupation_shift(const HilbertOperator& op);

}  // namespace fockbench

#endif  // FOCKBENCH_LIOUVILLE_HPP
