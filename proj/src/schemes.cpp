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

#include "fockbench/schemes.hpp"

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

#include "fockbench/metrics.hpp"

namespace fockbench {

bool SplittingScheme::reversible_only() const {
  for (const Stage& s : stages)
    if (s.coeff < 0.0) return true;
  return false;
}

void SplittingScheme::validate() const {
  if (stages.empty())
    throw std::invalid_argument("SplittingScheme: no stages");
  double sum_a = 0.0, sum_b = 0.0;
  for (const Stage& s : stages)
    (s.tag == GenTag::A ? sum_a : sum_b) += s.coeff;
  if (std::abs(sum_a - 1.0) > 1e-12 || std::abs(sum_b - 1.0) > 1e-12)
    throw std::invalid_argument(
        "SplittingScheme: stage coefficients must sum to 1 per generator");
}

SplittingScheme SplittingScheme::trotter() {
  return {{{GenTag::A, 1.0}, {GenTag::B, 1.0}}, 1};
}

SplittingScheme SplittingScheme::strang() {
  return {{{GenTag::B, 0.5}, {GenTag::A, 1.0}, {GenTag::B, 0.5}}, 2};
}

namespace {

std::vector<Stage> merge_adjacent(const std::vector<Stage>& in) {
  std::vector<Stage> out;
  for (const Stage& s : in) {
    if (!out.empty() && out.back().tag == s.tag)
      out.back().coeff += s.coeff;
    else
      out.push_back(s);
  }
  return out;
}

}  // namespace

SplittingScheme SplittingScheme::suzuki(int order) {
  if (order < 2 || order % 2 != 0)
    throw std::invalid_argument("SplittingScheme::suzuki: order must be even");
  SplittingScheme s = strang();
  for (int m = 4; m <= order; m += 2) {
    const double p = 1.0 / (4.0 - std::pow(4.0, 1.0 / double(m - 1)));
    const double scales[5] = {p, p, 1.0 - 4.0 * p, p, p};
    std::vector<Stage> next;
    next.reserve(5 * s.stages.size());
    for (double sc : scales)
      for (const Stage& st : s.stages)
        next.push_back({st.tag, sc * st.coeff});
    s.stages = merge_adjacent(next);
    s.order_claim = m;
  }
  s.validate();
  return s;
}

Partition::Partition(std::vector<double> pts) : points(std::move(pts)) {
  if (points.size() < 2)
    throw std::invalid_argument("Partition: need at least one interval");
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    if (!(points[i] < points[i + 1]))
      throw std::invalid_argument("Partition: points must strictly increase");
}

Partition Partition::uniform(double s0, double s1, std::size_t n) {
  if (n == 0) throw std::invalid_argument("Partition: n must be positive");
  std::vector<double> pts(n + 1);
  for (std::size_t j = 0; j <= n; ++j)
    pts[j] = s0 + (s1 - s0) * double(j) / double(n);
  return Partition(std::move(pts));
}

namespace {

void check_product_args(double t, std::size_t n) {
  if (n == 0) throw std::invalid_argument("product: n must be >= 1");
  if (t < 0.0) throw std::invalid_argument("product: t must be >= 0");
}

}  // namespace

DensityOperator trotter_product(const Liouvillian& a, const Liouvillian& b,
                                double t, std::size_t n,
                                const DensityOperator& x,
                                const StepOptions& opts) {
  check_product_args(t, n);
  const PreparedStep fa = prepare_step(a, t / double(n), opts);
  const PreparedStep fb = prepare_step(b, t / double(n), opts);
  CMatrix y = x.mat;
  for (std::size_t j = 0; j < n; ++j) y = fa.apply(fb.apply(y));
  return DensityOperator(x.basis, hermitian_part(std::move(y)));
}

DensityOperator strang_product(const Liouvillian& a, const Liouvillian& b,
                               double t, std::size_t n,
                               const DensityOperator& x,
                               const StepOptions& opts) {
  check_product_args(t, n);
  const PreparedStep fb2 = prepare_step(b, t / double(2 * n), opts);
  const PreparedStep fa = prepare_step(a, t / double(n), opts);
  CMatrix y = x.mat;
  for (std::size_t j = 0; j < n; ++j)
    y = fb2.apply(fa.apply(fb2.apply(y)));
  return DensityOperator(x.basis, hermitian_part(std::move(y)));
}

DensityOperator suzuki_product(const SplittingScheme& scheme,
                               const Liouvillian& a, const Liouvillian& b,
                               double t, std::size_t n,
                               const DensityOperator& x,
                               const StepOptions& opts) {
  check_product_args(t, n);
  scheme.validate();
  if (scheme.reversible_only() &&
      !(a.pure_commutator() && b.pure_commutator()))
    throw std::invalid_argument(
        "suzuki_product: scheme has negative coefficients; both generators "
        "must be pure commutators");

  // One prepared factor per distinct (tag, coefficient).
  std::map<std::pair<int, double>, PreparedStep> steps;
  for (const Stage& s : scheme.stages) {
    const auto key = std::make_pair(s.tag == GenTag::A ? 0 : 1, s.coeff);
    if (!steps.count(key))
      steps.emplace(key, prepare_step(s.tag == GenTag::A ? a : b,
                                      s.coeff * t / double(n), opts));
  }
  CMatrix y = x.mat;
  for (std::size_t j = 0; j < n; ++j) {
    for (auto it = scheme.stages.rbegin(); it != scheme.stages.rend(); ++it) {
      const auto key = std::make_pair(it->tag == GenTag::A ? 0 : 1, it->coeff);
      y = steps.at(key).apply(y);
    }
  }
  return DensityOperator(x.basis, hermitian_part(std::move(y)));
}

namespace {

// One-interval stepper for a schedule: exact prepared factors when the
// schedule is autonomous (memoized per step length), adaptive solves
// otherwise.
class IntervalStepper {
 public:
  IntervalStepper(const Schedule& s, double tol) : s_(s), tol_(tol) {
    if (s.is_autonomous())
      cache_.emplace(s.autonomous_generator(), StepOptions{});
  }

  CMatrix apply(double s0, double s1, CMatrix y) {
    if (cache_) return cache_->step(s1 - s0).apply(y);
    return evolution_system_step_matrix(s_, s1, s0, std::move(y), tol_);
  }

 private:
  const Schedule& s_;
  double tol_;
  std::optional<PropagatorCache> cache_;
};

}  // namespace

DensityOperator time_dependent_trotter(const Schedule& u, const Schedule& v,
                                       const Partition& partition,
                                       const DensityOperator& x,
                                       double factor_tol) {
  const double hor = std::min(u.horizon(), v.horizon());
  if (partition.start() < 0.0 || partition.end() > hor + 1e-12)
    throw std::invalid_argument(
        "time_dependent_trotter: partition outside the schedule horizons");
  IntervalStepper ustep(u, factor_tol), vstep(v, factor_tol);
  CMatrix y = x.mat;
  for (std::size_t j = 1; j < partition.points.size(); ++j) {
    const double s0 = partition.points[j - 1];
    const double s1 = partition.points[j];
    y = ustep.apply(s0, s1, vstep.apply(s0, s1, std::move(y)));
  }
  return DensityOperator(x.basis, hermitian_part(std::move(y)));
}

DensityOperator zeno_product(const ProjectorSuperOp& p, const Liouvillian& l,
                             double t, std::size_t n, const DensityOperator& x,
                             const StepOptions& opts) {
  check_product_args(t, n);
  const PreparedStep step = prepare_step(l, t / double(n), opts);
  CMatrix y = p.apply(x.mat);
  for (std::size_t j = 0; j < n; ++j) y = p.apply(step.apply(y));
  return DensityOperator(x.basis, hermitian_part(std::move(y)));
}

ZenoSpec::ZenoSpec(SuperOperatorMatrix m_in, ProjectorSuperOp p_in,
                   double delta_in, int n_check)
    : m(std::move(m_in)), p(std::move(p_in)), delta(delta_in) {
  if (delta < 0.0 || delta >= 1.0)
    throw std::invalid_argument("ZenoSpec: delta must lie in [0, 1)");
  const std::size_t d = p.projector().basis.total_dim();
  if (m.dim != d || m.mat.rows() != d * d)
    throw std::invalid_argument("ZenoSpec: measurement dimension mismatch");
  // Uniform power convergence |M^n - P| <= delta^n, flattened 2->2 norm.
  const CMatrix pflat = p.flattened().mat;
  CMatrix mn = CMatrix::identity(d * d);
  for (int k = 1; k <= n_check; ++k) {
    mn = m.mat * mn;
    CMatrix diff = mn;
    diff -= pflat;
    const double nrm = linalg::sigma_max(diff);
    const double bound = std::pow(delta, k);
    if (nrm > bound * (1.0 + 1e-9) + 1e-12)
      throw std::invalid_argument(
          "ZenoSpec: |M^" + std::to_string(k) + " - P| = " +
          std::to_string(nrm) + " exceeds delta^n = " + std::to_string(bound));
  }
}

SuperOperatorMatrix haar_complement_mixer(const HilbertOperator& p,
                                          std::uint64_t seed) {
  const std::size_t d = p.basis.total_dim();
  const double scale = std::max(1.0, p.mat.max_abs());
  if (!p.mat.is_hermitian(1e-10 * scale))
    throw std::invalid_argument("haar_complement_mixer: P must be Hermitian");
  const linalg::EighResult eig = linalg::eigh(p.mat, /*want_vectors=*/true);
  std::size_t rank = 0;
  for (double ev : eig.eigenvalues) {
    if (ev < -1e-8 || ev > 1.0 + 1e-8 || (ev > 1e-8 && ev < 1.0 - 1e-8))
      throw std::invalid_argument(
          "haar_complement_mixer: P is not an orthogonal projector");
    if (ev > 0.5) ++rank;
  }
  // Eigenvalues ascend, so columns 0..d-rank-1 span ker P.
  const std::size_t comp = d * d - rank * rank;
  const CMatrix& vecs = *eig.vectors;

  // HS-orthonormal basis of the complement of ran(x -> PxP): |u_a><u_b| with
  // (a, b) not both in the code block.
  CMatrix b(d * d, comp);
  std::size_t col = 0;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t bidx = 0; bidx < d; ++bidx) {
      const bool a_code = a >= d - rank;
      const bool b_code = bidx >= d - rank;
      if (a_code && b_code) continue;
      // vec(|u_a><u_b|)[j*d + i] = u_a[i] conj(u_b[j])
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i)
          b(j * d + i, col) = vecs(i, a) * std::conj(vecs(j, bidx));
      ++col;
    }

  std::mt19937_64 rng(seed);
  const CMatrix w = linalg::haar_unitary(comp, rng);
  CMatrix mixer = b * (w * b.adjoint());
  return {d, std::move(mixer)};
}

ZenoSpec make_uniform_power_contraction(const HilbertOperator& p, double delta,
                                        const SuperOperatorMatrix& mixer,
                                        int n_check) {
  if (delta < 0.0 || delta >= 1.0)
    throw std::invalid_argument(
        "make_uniform_power_contraction: delta must lie in [0, 1)");
  ProjectorSuperOp psup = projector_superop(p);
  const std::size_t d = p.basis.total_dim();
  if (mixer.dim != d)
    throw std::invalid_argument(
        "make_uniform_power_contraction: mixer dimension mismatch");
  const CMatrix pflat = psup.flattened().mat;
  CMatrix qflat = CMatrix::identity(d * d);
  qflat -= pflat;

  const double mix_scale = std::max(1.0, mixer.mat.frobenius_norm());
  if ((pflat * mixer.mat).frobenius_norm() > 1e-12 * mix_scale ||
      (mixer.mat * pflat).frobenius_norm() > 1e-12 * mix_scale)
    throw std::invalid_argument(
        "make_uniform_power_contraction: mixer leaks into ran(P)");

  CMatrix m = qflat * (mixer.mat * qflat);
  m *= cplx(delta);
  m += pflat;
  return ZenoSpec({d, std::move(m)}, std::move(psup), delta, n_check);
}

CMatrix zeno_product_general(const ZenoSpec& z, const Schedule& v,
                             const Partition& partition, const CMatrix& x,
                             double factor_tol) {
  if (partition.start() < 0.0 || partition.end() > v.horizon() + 1e-12)
    throw std::invalid_argument(
        "zeno_product_general: partition outside the schedule horizon");
  IntervalStepper vstep(v, factor_tol);
  CMatrix y = x;
  for (std::size_t j = 1; j < partition.points.size(); ++j) {
    y = vstep.apply(partition.points[j - 1], partition.points[j],
                    std::move(y));
    y = z.m.apply(y);
  }
  return y;
}

TelescopicReport telescopic_defect(const StepMap& f, const StepMap& t_oracle,
                                   const Partition& partition,
                                   const CMatrix& x) {
  TelescopicReport rep;
  const std::size_t n = partition.intervals();
  rep.defects.reserve(n);

  CMatrix oracle_orbit = x;   // T(s_{j-1}, s_0) x
  CMatrix product_orbit = x;  // prod F x
  double prev_norm = trace_norm(product_orbit);
  for (std::size_t j = 1; j <= n; ++j) {
    const double s0 = partition.points[j - 1];
    const double s1 = partition.points[j];

    const CMatrix fx = f(s0, s1, oracle_orbit);
    const CMatrix tx = t_oracle(s0, s1, oracle_orbit);
    CMatrix diff = fx;
    diff -= tx;
    rep.defects.push_back(trace_norm(diff));

    product_orbit = f(s0, s1, product_orbit);
    const double cur_norm = trace_norm(product_orbit);
    if (cur_norm > prev_norm * (1.0 + 1e-9) + 1e-12)
      throw std::invalid_argument(
          "telescopic_defect: step map is not contractive on the orbit (" +
          std::to_string(prev_norm) + " -> " + std::to_string(cur_norm) + ")");
    prev_norm = cur_norm;
    oracle_orbit = tx;
  }
  for (double d : rep.defects) rep.max_defect = std::max(rep.max_defect, d);
  rep.bound = double(n) * rep.max_defect;
  CMatrix err = product_orbit;
  err -= oracle_orbit;
  rep.product_error = trace_norm(err);
  return rep;
}

}  // namespace fockbench
