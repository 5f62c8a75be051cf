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

#ifndef FOCKBENCH_SCHEMES_HPP
#define FOCKBENCH_SCHEMES_HPP

#include <cstdint>

#include "fockbench/propagators.hpp"

namespace fockbench {

// Product conventions, fixed once for the whole project: a product
// prod_{j=1..n} F_j runs in decreasing index order from the left, so the
// rightmost factor (j = 1) is applied to the state first. Scheme stages are
// listed left to right, i.e. stages.back() acts first.

enum class GenTag { A, B };

struct Stage {
  GenTag tag;
  double coeff;
};

struct SplittingScheme {
  std::vector<Stage> stages;
  int order_claim = 1;

  // Any negative stage coefficient makes the scheme usable only with
  // reversible (pure commutator) generators.
  bool reversible_only() const;
  void validate() const;  // per-tag coefficients must sum to 1

  static SplittingScheme trotter();
  static SplittingScheme strang();
  // Recursive symmetric composition of order 2k (k >= 1); k = 1 is Strang,
  // k = 2 the standard fourth-order scheme with p = 1/(4 - 4^{1/3}).
  static SplittingScheme suzuki(int order);
};

struct Partition {
  std::vector<double> points;  // strictly increasing, at least one interval

  explicit Partition(std::vector<double> pts);
  static Partition uniform(double s0, double s1, std::size_t n);
  std::size_t intervals() const { return points.size() - 1; }
  double start() const { return points.front(); }
  double end() const { return points.back(); }
};

DensityOperator trotter_product(const Liouvillian& a, const Liouvillian& b,
                                double t, std::size_t n,
                                const DensityOperator& x,
                                const StepOptions& opts = {});

DensityOperator strang_product(const Liouvillian& a, const Liouvillian& b,
                               double t, std::size_t n,
                               const DensityOperator& x,
                               const StepOptions& opts = {});

DensityOperator suzuki_product(const SplittingScheme& scheme,
                               const Liouvillian& a, const Liouvillian& b,
                               double t, std::size_t n,
                               const DensityOperator& x,
                               const StepOptions& opts = {});

// prod_j U(s_j, s_{j-1}) V(s_j, s_{j-1}) x over the partition; each factor is
// an evolution-system step solved to factor_tol.
DensityOperator time_dependent_trotter(const Schedule& u, const Schedule& v,
                                       const Partition& partition,
                                       const DensityOperator& x,
                                       double factor_tol = 1e-11);

// (P e^{(t/n) L} P)^n P x.
DensityOperator zeno_product(const ProjectorSuperOp& p, const Liouvillian& l,
                             double t, std::size_t n, const DensityOperator& x,
                             const StepOptions& opts = {});

// Measurement with uniform power convergence |M^n - P| <= delta^n, verified
// in the flattened 2->2 norm at construction.
struct ZenoSpec {
  SuperOperatorMatrix m;
  ProjectorSuperOp p;
  double delta;

  ZenoSpec(SuperOperatorMatrix m_in, ProjectorSuperOp p_in, double delta_in,
           int n_check = 10);
};

// Haar-random isometry of the complement of ran(x -> PxP) inside the
// flattened space, returned as an explicit superoperator matrix.
SuperOperatorMatrix haar_complement_mixer(const HilbertOperator& p,
                                          std::uint64_t seed);

// M = P + delta (1-P) mixer (1-P) as superoperators; with an isometric mixer
// this realizes |M^n - P| = delta^n exactly.
ZenoSpec make_uniform_power_contraction(const HilbertOperator& p, double delta,
                                        const SuperOperatorMatrix& mixer,
                                        int n_check = 10);

// prod_j M V(s_j, s_{j-1}) x. The output can be non-Hermitian for a general
// contraction M, hence the matrix return type.
CMatrix zeno_product_general(const ZenoSpec& z, const Schedule& v,
                             const Partition& partition, const CMatrix& x,
                             double factor_tol = 1e-11);

// Per-interval defect diagnostic of the telescopic estimate
//   |prod F x - T x| <= n max_j |(F_j - T_j) T(s_{j-1}, s_0) x|.
using StepMap = std::function<CMatrix(double s, double t, const CMatrix&)>;

struct TelescopicReport {
  std::vector<double> defects;  // trace norms, one per interval
  double max_defect = 0.0;
  double bound = 0.0;          // n * max_defect
  double product_error = 0.0;  // |prod F x - prod T x|_1
};

TelescopicReport telescopic_defect(const StepMap& f, const StepMap& t_oracle,
                                   const Partition& partition,
                                   const CMatrix& x);

}  // namespace fockbench

#endif  // FOCKBENCH_SCHEMES_HPP
