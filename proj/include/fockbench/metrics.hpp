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

#ifndef FOCKBENCH_METRICS_HPP
#define FOCKBENCH_METRICS_HPP

#include <string>

#include "fockbench/propagators.hpp"

namespace fockbench {

// Trace norm: sum of |eigenvalues| on the Hermitian path (input Hermitian
// within 1e-10 relative), singular values otherwise.
double trace_norm(const CMatrix& x);
double trace_norm(const DensityOperator& x);

// Two-sided number weight prod_j (1+N_j)^{k_j/4}; diagonal, positive,
// invertible on the truncated space.
class SobolevWeight {
 public:
  SobolevWeight(FockBasis basis, std::vector<double> k);

  const FockBasis& basis() const { return basis_; }
  const std::vector<double>& exponents() const { return k_; }
  // diag entries of prod_j (1+N_j)^{k_j/4}
  const std::vector<double>& weight_diag() const { return diag_; }
  CMatrix weighted(const CMatrix& x) const;  // W x W

 private:
  FockBasis basis_;
  std::vector<double> k_;
  std::vector<double> diag_;
};

// |W x W|_1 (reduces to the trace norm at k = 0).
double sobolev_norm(const CMatrix& x, const SobolevWeight& w);
double sobolev_norm(const DensityOperator& x, const SobolevWeight& w);

// Flattened operator norms. The 2->2 norm is the largest singular value.
double flattened_operator_norm_22(const SuperOperatorMatrix& m);

// The trace-norm induced 1->1 norm is reported as a certified lower bound
// (achieved by feasible inputs found by projected subgradient ascent) plus a
// 2->2 derived upper bound sqrt(D) |M|_2.
struct Norm11 {
  double lower = 0.0;
  double upper = 0.0;
};
Norm11 flattened_operator_norm_11(const SuperOperatorMatrix& m,
                                  int restarts = 4, int iters = 40,
                                  std::uint64_t seed = 2024);

struct DriftDiagnostics {
  double trace_drift = 0.0;     // |tr x - 1|
  double min_eigenvalue = 0.0;  // lambda_min(x)
  double top_level_mass = 0.0;  // max over modes
  std::vector<double> per_mode_mass;  // mass on the top 2 levels of each mode
};

DriftDiagnostics drift_diagnostics(const DensityOperator& x);

struct ConvergenceReport {
  std::vector<std::size_t> ns;
  std::vector<double> errors;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double oracle_tol = 0.0;
  std::vector<bool> saturated;  // error below 100 x oracle tolerance
  std::vector<bool> exact;      // error exactly zero, excluded from the fit
  bool fit_ok = false;
  std::string message;
  std::vector<DriftDiagnostics> diagnostics;  // per run, filled by the runner
};

// ln(error) vs ln(n) least squares over the usable (non-exact, unsaturated)
// points; fit_ok is false with a message when fewer than 3 remain.
ConvergenceReport fit_order(const std::vector<std::size_t>& ns,
                            const std::vector<double>& errors,
                            double oracle_tol);

// Non-uniform-partition variant: the abscissa is the inverse of the largest
// step size, so the slope is comparable to the uniform-grid exponent.
ConvergenceReport fit_order_steps(const std::vector<double>& max_steps,
                                  const std::vector<double>& errors,
                                  double oracle_tol);

struct RelativeBoundEstimate {
  double b = 0.0;  // max over samples of |L(x)|_1 / |x|_{W^{k,1}}
  std::size_t samples = 0;
  std::string description;
};

RelativeBoundEstimate relative_bound_diagnostic(const Liouvillian& l,
                                                const SobolevWeight& w,
                                                std::size_t samples,
                                                std::uint64_t seed = 7);

struct MomentStabilityResult {
  double omega = 0.0;           // supplied or fitted
  bool omega_fitted = false;
  std::vector<double> margins;  // tr[W L(x)] - omega tr[W x], per state
};

// Moment stability tr[W^k L(x)] <= omega tr[W^k x] on positive semi-definite
// states supported within the degree margin of the generator.
MomentStabilityResult moment_stability_check(
    const Liouvillian& l, const SobolevWeight& w,
    const std::vector<DensityOperator>& states,
    std::optional<double> omega = std::nullopt);

struct DriftInequalityResult {
  double c = 0.0;               // fitted constant (max drift over the states)
  std::size_t argmax = 0;       // index of the state attaining it
  std::vector<double> drifts;   // tr[f L(x)] + (l/2) tr[x g] per state
};

// Stronger single-mode drift form with f = (1+N)^{k/2} and
// g = (1+N)^{k/2 - 1 + l}.
DriftInequalityResult moment_drift_check(
    const Liouvillian& l, double k, unsigned photon_l,
    const std::vector<DensityOperator>& states);

struct ZenoConditionEstimate {
  double b = 0.0;  // max over grid pairs
  struct Pair {
    double s, t;
    double norm_pvq, norm_qvp;  // divided by (t-s)
  };
  std::vector<Pair> pairs;
};

// Off-corner block growth |P V(t,s) (1-P)| and |(1-P) V(t,s) P| over all
// ordered grid pairs, divided by (t-s). Autonomous schedules only.
ZenoConditionEstimate zeno_condition_check(const ProjectorSuperOp& p,
                                           const Schedule& v,
                                           const std::vector<double>& grid,
                                           std::size_t dense_limit = 64);

}  // namespace fockbench

#endif  // FOCKBENCH_METRICS_HPP
