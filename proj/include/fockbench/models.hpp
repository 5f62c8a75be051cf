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

#ifndef FOCKBENCH_MODELS_HPP
#define FOCKBENCH_MODELS_HPP

#include "fockbench/liouville.hpp"
#include "fockbench/propagators.hpp"

namespace fockbench {

// Normal-ordered polynomial in ladder operators: per-mode monomials
// (a^+_j)^k a_j^l with complex coefficients, plus an optional polynomial in
// the number operators. Monomial coefficients may carry a time dependence
// for schedule construction.
struct Monomial {
  std::size_t mode = 0;
  unsigned k = 0;  // creation power
  unsigned l = 0;  // annihilation power
  cplx coeff = 1.0;
  std::function<cplx(double)> coeff_t;  // optional; multiplies coeff
};

struct NumberMonomial {
  std::vector<unsigned> powers;  // one per mode
  double coeff = 1.0;
  std::function<double(double)> coeff_t;  // optional
};

struct PolynomialSpec {
  std::vector<Monomial> monomials;
  std::vector<NumberMonomial> number_poly;

  // Hermitian as specified: every (j,k,l,c) has the partner (j,l,k,conj c);
  // self-paired monomials (k = l) need real coefficients.
  bool is_hermitian_spec(double tol = 1e-12) const;
  unsigned degree() const;
  bool time_dependent() const;
};

// Dense assembly of the spec at fixed time (t enters through coeff_t).
HilbertOperator build_operator(const PolynomialSpec& spec,
                               const FockBasis& basis, double t = 0.0,
                               unsigned max_degree = 4);

// As build_operator, but enforces the Hermiticity invariant.
HilbertOperator build_hamiltonian(const PolynomialSpec& spec,
                                  const FockBasis& basis, double t = 0.0,
                                  unsigned max_degree = 4);

// Quantum Ornstein-Uhlenbeck generator lambda^2 D[a] + mu^2 D[a^+].
Liouvillian ou_generator(const FockBasis& basis, double lambda, double mu,
                         std::size_t mode = 0);

// Dissipator with jump a^l - alpha^l.
Liouvillian l_photon_dissipation(const FockBasis& basis, unsigned photon_l,
                                 cplx alpha, std::size_t mode = 0,
                                 double guard = 1e-10);

// Rank-2 projector onto span{|CAT+>, |CAT->}.
HilbertOperator cat_projector(const FockBasis& basis, cplx alpha,
                              std::size_t mode = 0, double guard = 1e-10);

// Logical X on the CAT code space: |+><-| + |-><+|.
HilbertOperator cat_logical_x(const FockBasis& basis, cplx alpha,
                              std::size_t mode = 0, double guard = 1e-10);

// The Zeno gate target for the drive H = a + a^+, as two step maps on the
// code block:
//   ideal:      generated by 2 Re(alpha) X_alpha (the large-|alpha| identity)
//   compressed: generated by P H P assembled from matrix products
// The compressed map is the authoritative oracle; `discrepancy` is the
// flattened 2->2 distance between the two at the given t and is expected to
// be exponentially small in |alpha|^2.
struct ZenoGateTarget {
  double t = 0.0;
  HilbertOperator projector;
  CMatrix h_compressed;  // P H P
  CMatrix h_ideal;       // 2 Re(alpha) X_alpha
  CMatrix u_compressed;  // e^{-i t PHP}
  CMatrix u_ideal;

  CMatrix apply_compressed(const CMatrix& x) const;
  CMatrix apply_ideal(const CMatrix& x) const;
  double discrepancy = 0.0;
};

ZenoGateTarget zeno_gate_target(const FockBasis& basis, cplx alpha, double t,
                                std::size_t mode = 0, double guard = 1e-10);

// Commutator (or GKSL) schedule from a time-dependent polynomial spec;
// Hermiticity is arranged per monomial pair.
Schedule schedule_from_spec(const PolynomialSpec& spec, const FockBasis& basis,
                            double horizon, unsigned max_degree = 4);

}  // namespace fockbench

#endif  // FOCKBENCH_MODELS_HPP
