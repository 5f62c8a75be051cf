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

#ifndef FOCKBENCH_PROPAGATORS_HPP
#define FOCKBENCH_PROPAGATORS_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "fockbench/linalg.hpp"
#include "fockbench/liouville.hpp"

namespace fockbench {

struct StepOptions {
  // Above this Hilbert-space dimension the flattened exponential is refused
  // and the action-form path is used instead.
  std::size_t dense_limit = 64;
  // Negative time steps are only meaningful for reversible (pure commutator)
  // generators; the override exists for deliberate experiments.
  bool allow_negative_dissipative = false;
  // Per-step tolerance of the action-form Taylor stepping.
  double action_tol = 1e-12;
  // e^{t(-i[H,.])} x = e^{-itH} x e^{itH} exactly; disable to force the
  // flattened route (the two are equivalence-tested).
  bool use_unitary_fast_path = true;
};

// A single reusable propagation factor e^{dt L}. The expensive part
// (matrix exponential) happens once, at preparation.
class PreparedStep {
 public:
  enum class Mode { identity, unitary, dense, action };

  CMatrix apply(const CMatrix& x) const;
  Mode mode() const { return mode_; }
  const CMatrix& flattened_exponential() const;  // dense mode only

 private:
  friend PreparedStep prepare_step(const Liouvillian&, double,
                                   const StepOptions&);
  Mode mode_ = Mode::identity;
  CMatrix u_, u_adj_;                     // unitary conjugation
  std::shared_ptr<const CMatrix> expm_;   // flattened exponential
  std::shared_ptr<const Liouvillian> gen_;  // action stepping
  double dt_ = 0.0;
  double tol_ = 1e-12;
  int substeps_ = 1;
};

PreparedStep prepare_step(const Liouvillian& l, double dt,
                          const StepOptions& opts = {});

DensityOperator semigroup_step(const Liouvillian& l, double t,
                               const DensityOperator& x,
                               const StepOptions& opts = {});
// General (possibly non-Hermitian) inputs; no symmetrization of the result.
CMatrix semigroup_step_matrix(const Liouvillian& l, double t, const CMatrix& x,
                              const StepOptions& opts = {});

// Memoizes prepared steps per distinct step size for one generator.
// Warm up single-threaded, then share for concurrent reads.
class PropagatorCache {
 public:
  explicit PropagatorCache(Liouvillian gen, StepOptions opts = {});
  const PreparedStep& step(double dt);
  const Liouvillian& generator() const { return gen_; }

 private:
  Liouvillian gen_;
  StepOptions opts_;
  std::map<double, PreparedStep> steps_;
  std::mutex mu_;
};

// Time-dependent generator: coefficient functions feeding a fixed GKSL
// skeleton, H(t) = sum_k f_k(t) H_k and jumps g_j(t) L_j. The assembled
// H(t) must be Hermitian; this and the finiteness/continuity of the
// coefficients are checked on a sampled grid at construction.
class Schedule {
 public:
  struct HamiltonianTerm {
    CMatrix op;
    std::function<cplx(double)> coeff;
  };
  struct JumpTerm {
    CMatrix op;
    std::function<cplx(double)> coeff;
  };

  Schedule(FockBasis basis, double horizon,
           std::vector<HamiltonianTerm> ham_terms,
           std::vector<JumpTerm> jump_terms = {});
  static Schedule autonomous(Liouvillian l, double horizon);

  const FockBasis& basis() const { return basis_; }
  double horizon() const { return horizon_; }
  bool is_autonomous() const { return autonomous_.has_value(); }
  const Liouvillian& autonomous_generator() const;

  Liouvillian at(double t) const;
  CMatrix action(double t, const CMatrix& x) const;

 private:
  FockBasis basis_;
  double horizon_;
  std::vector<HamiltonianTerm> ham_terms_;
  std::vector<JumpTerm> jump_terms_;
  std::optional<Liouvillian> autonomous_;
};

// High-accuracy solution of the (flattened) linear master equation by
// adaptive RK4 with step doubling and local extrapolation. The global
// trace-norm error target is `tol`, enforced through a Frobenius budget of
// tol/sqrt(D) per unit time. Throws on step-size underflow, naming the last
// accepted time.
CMatrix reference_evolution_matrix(const Schedule& s, double t_start,
                                   double t_end, CMatrix x, double tol);
DensityOperator reference_evolution(const Schedule& s, double t_start,
                                    double t_end, const DensityOperator& x,
                                    double tol);

// Two-parameter family U(t, s0) as a thin wrapper; cocycle property is
// checked in tests.
DensityOperator evolution_system_step(const Schedule& s, double t, double s0,
                                      const DensityOperator& x,
                                      double tol = 1e-11);
CMatrix evolution_system_step_matrix(const Schedule& s, double t, double s0,
                                     CMatrix x, double tol = 1e-11);

}  // namespace fockbench

#endif  // FOCKBENCH_PROPAGATORS_HPP
