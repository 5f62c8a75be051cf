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

#include "fockbench/propagators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fockbench {

namespace {

double action_norm_estimate(const Liouvillian& l) {
  double lam = 0.0;
  if (l.hamiltonian()) lam += 2.0 * l.hamiltonian()->mat.one_norm();
  for (const HilbertOperator& j : l.jumps()) {
    const double nj = j.mat.one_norm();
    lam += 2.0 * nj * nj;
  }
  return lam;
}

}  // namespace

const CMatrix& PreparedStep::flattened_exponential() const {
  if (mode_ != Mode::dense || !expm_)
    throw std::logic_error("PreparedStep: no flattened exponential held");
  return *expm_;
}

CMatrix PreparedStep::apply(const CMatrix& x) const {
  switch (mode_) {
    case Mode::identity:
      return x;
    case Mode::unitary:
      return u_ * x * u_adj_;
    case Mode::dense:
      return unvec(matvec(*expm_, vec(x)), x.rows(), x.cols());
    case Mode::action:
      break;
  }
  // Sub-stepped Taylor series of e^{dt L} x, accurate to tol_ per step.
  CMatrix y = x;
  const double h = dt_ / substeps_;
  for (int s = 0; s < substeps_; ++s) {
    CMatrix term = y;
    CMatrix acc = y;
    bool converged = false;
    for (int k = 1; k <= 80; ++k) {
      term = gen_->apply(term);
      term *= cplx(h / k);
      acc += term;
      if (term.frobenius_norm() <=
          0.1 * tol_ * std::max(1.0, acc.frobenius_norm())) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw std::runtime_error("PreparedStep: Taylor stepping stalled");
    y = std::move(acc);
  }
  return y;
}

PreparedStep prepare_step(const Liouvillian& l, double dt,
                          const StepOptions& opts) {
  PreparedStep step;
  if (dt == 0.0 || l.is_zero()) {
    step.mode_ = PreparedStep::Mode::identity;
    return step;
  }
  if (dt < 0.0 && !l.pure_commutator() && !opts.allow_negative_dissipative)
    throw std::invalid_argument(
        "prepare_step: negative time on a dissipative generator");

  if (l.pure_commutator() && opts.use_unitary_fast_path) {
    CMatrix a = l.hamiltonian()->mat;
    a *= cplx(0.0, -dt);
    step.mode_ = PreparedStep::Mode::unitary;
    step.u_ = linalg::expm(a);
    step.u_adj_ = step.u_.adjoint();
    return step;
  }

  if (l.basis().total_dim() <= opts.dense_limit) {
    step.mode_ = PreparedStep::Mode::dense;
    step.expm_ = std::make_shared<const CMatrix>(
        linalg::expm(flatten(l, opts.dense_limit).mat, dt));
    return step;
  }

  step.mode_ = PreparedStep::Mode::action;
  step.gen_ = std::make_shared<const Liouvillian>(l);
  step.dt_ = dt;
  step.tol_ = opts.action_tol;
  step.substeps_ = std::max(
      1, static_cast<int>(std::ceil(std::abs(dt) * action_norm_estimate(l))));
  return step;
}

DensityOperator semigroup_step(const Liouvillian& l, double t,
                               const DensityOperator& x,
                               const StepOptions& opts) {
  return DensityOperator(x.basis,
                         hermitian_part(semigroup_step_matrix(l, t, x.mat, opts)));
}

CMatrix semigroup_step_matrix(const Liouvillian& l, double t, const CMatrix& x,
                              const StepOptions& opts) {
  return prepare_step(l, t, opts).apply(x);
}

PropagatorCache::PropagatorCache(Liouvillian gen, StepOptions opts)
    : gen_(std::move(gen)), opts_(opts) {}

const PreparedStep& PropagatorCache::step(double dt) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = steps_.find(dt);
  if (it == steps_.end())
    it = steps_.emplace(dt, prepare_step(gen_, dt, opts_)).first;
  return it->second;
}

Schedule::Schedule(FockBasis basis, double horizon,
                   std::vector<HamiltonianTerm> ham_terms,
                   std::vector<JumpTerm> jump_terms)
    : basis_(std::move(basis)),
      horizon_(horizon),
      ham_terms_(std::move(ham_terms)),
      jump_terms_(std::move(jump_terms)) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_))
    throw std::invalid_argument("Schedule: horizon must be positive");
  const std::size_t d = basis_.total_dim();
  for (const HamiltonianTerm& t : ham_terms_) {
    if (t.op.rows() != d || t.op.cols() != d)
      throw std::invalid_argument("Schedule: term shape mismatch");
    if (!t.coeff) throw std::invalid_argument("Schedule: missing coefficient");
  }
  for (const JumpTerm& t : jump_terms_) {
    if (t.op.rows() != d || t.op.cols() != d)
      throw std::invalid_argument("Schedule: jump shape mismatch");
    if (!t.coeff) throw std::invalid_argument("Schedule: missing coefficient");
  }
  // Sampled finiteness check of the coefficients and Hermiticity of the
  // assembled Hamiltonian across the horizon.
  constexpr int kSamples = 512;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = horizon_ * double(i) / kSamples;
    for (const HamiltonianTerm& term : ham_terms_) {
      const cplx f = term.coeff(t);
      if (!std::isfinite(f.real()) || !std::isfinite(f.imag()))
        throw std::invalid_argument(
            "Schedule: non-finite Hamiltonian coefficient at t = " +
            std::to_string(t));
    }
    for (const JumpTerm& term : jump_terms_) {
      const cplx g = term.coeff(t);
      if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
        throw std::invalid_argument(
            "Schedule: non-finite jump coefficient at t = " +
            std::to_string(t));
    }
    if (!ham_terms_.empty() && i % 32 == 0) {
      const Liouvillian lt = at(t);
      if (lt.hamiltonian()) {
        const CMatrix& h = lt.hamiltonian()->mat;
        if (!h.is_hermitian(1e-10 * std::max(1.0, h.max_abs())))
          throw std::invalid_argument(
              "Schedule: assembled Hamiltonian is not Hermitian at t = " +
              std::to_string(t));
      }
    }
  }
}

Schedule Schedule::autonomous(Liouvillian l, double horizon) {
  Schedule s(l.basis(), horizon, {}, {});
  s.autonomous_ = std::move(l);
  return s;
}

const Liouvillian& Schedule::autonomous_generator() const {
  if (!autonomous_)
    throw std::logic_error("Schedule: not autonomous");
  return *autonomous_;
}

Liouvillian Schedule::at(double t) const {
  if (autonomous_) return *autonomous_;
  const std::size_t d = basis_.total_dim();
  std::optional<HilbertOperator> h;
  if (!ham_terms_.empty()) {
    CMatrix hm(d, d);
    for (const HamiltonianTerm& term : ham_terms_) {
      const cplx f = term.coeff(t);
      if (f != cplx(0.0))
        kernels::axpy(d * d, f, term.op.data(), hm.data());
    }
    h = HilbertOperator{basis_, std::move(hm)};
  }
  std::vector<HilbertOperator> jumps;
  jumps.reserve(jump_terms_.size());
  for (const JumpTerm& term : jump_terms_) {
    CMatrix jm = term.op;
    jm *= term.coeff(t);
    jumps.push_back(HilbertOperator{basis_, std::move(jm)});
  }
  return Liouvillian(basis_, std::move(h), std::move(jumps),
                     /*check_hermitian=*/false);
}

CMatrix Schedule::action(double t, const CMatrix& x) const {
  return at(t).apply(x);
}

namespace {

CMatrix rk4_step(const Schedule& s, double t, double h, const CMatrix& x) {
  CMatrix k1 = s.action(t, x);
  CMatrix x2 = x;
  kernels::axpy(x.rows() * x.cols(), cplx(0.5 * h), k1.data(), x2.data());
  CMatrix k2 = s.action(t + 0.5 * h, x2);
  x2 = x;
  kernels::axpy(x.rows() * x.cols(), cplx(0.5 * h), k2.data(), x2.data());
  CMatrix k3 = s.action(t + 0.5 * h, x2);
  x2 = x;
  kernels::axpy(x.rows() * x.cols(), cplx(h), k3.data(), x2.data());
  CMatrix k4 = s.action(t + h, x2);

  CMatrix y = x;
  const std::size_t n = x.rows() * x.cols();
  kernels::axpy(n, cplx(h / 6.0), k1.data(), y.data());
  kernels::axpy(n, cplx(h / 3.0), k2.data(), y.data());
  kernels::axpy(n, cplx(h / 3.0), k3.data(), y.data());
  kernels::axpy(n, cplx(h / 6.0), k4.data(), y.data());
  return y;
}

}  // namespace

CMatrix reference_evolution_matrix(const Schedule& s, double t_start,
                                   double t_end, CMatrix x, double tol) {
  if (tol < 1e-13)
    throw std::invalid_argument("reference_evolution: tol below 1e-13");
  if (t_start < 0.0 || t_end < t_start || t_end > s.horizon() + 1e-12)
    throw std::invalid_argument(
        "reference_evolution: times outside the schedule horizon");
  const double span = t_end - t_start;
  if (span == 0.0) return x;

  const std::size_t d = x.rows();
  // Frobenius-per-unit-time budget backing the trace-norm target:
  // |y|_1 <= sqrt(D) |y|_F for D x D matrices.
  const double rate = tol / std::sqrt(double(d)) / span;

  // Integrate in local time tau in [0, span]; absolute time only enters the
  // coefficient evaluation, so autonomous evolutions are offset invariant.
  double tau = 0.0;
  double h = span / 16.0;
  const double h_min = 32.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, std::abs(t_end));
  long steps = 0;
  while (tau < span) {
    if (h < h_min)
      throw std::runtime_error(
          "reference_evolution: step size underflow; last accepted time t = " +
          std::to_string(t_start + tau));
    if (++steps > 20'000'000)
      throw std::runtime_error("reference_evolution: step budget exhausted");
    const double hc = std::min(h, span - tau);
    const double t = t_start + tau;
    CMatrix big = rk4_step(s, t, hc, x);
    CMatrix half = rk4_step(s, t, 0.5 * hc, x);
    half = rk4_step(s, t + 0.5 * hc, 0.5 * hc, half);
    CMatrix diff = half;
    diff -= big;
    const double err = diff.frobenius_norm() / 15.0;
    const double budget = rate * hc;
    if (err <= budget) {
      // Local extrapolation to fifth order.
      kernels::axpy(d * x.cols(), cplx(1.0 / 15.0), diff.data(), half.data());
      x = std::move(half);
      tau += hc;
      const double grow =
          err == 0.0 ? 4.0
                     : std::min(4.0, std::max(0.5, 0.9 * std::pow(budget / err,
                                                                  0.25)));
      h = hc * grow;
    } else {
      h = hc * std::max(0.1, 0.9 * std::pow(budget / err, 0.25));
    }
  }
  return x;
}

DensityOperator reference_evolution(const Schedule& s, double t_start,
                                    double t_end, const DensityOperator& x,
                                    double tol) {
  return DensityOperator(
      x.basis,
      hermitian_part(reference_evolution_matrix(s, t_start, t_end, x.mat, tol)));
}

DensityOperator evolution_system_step(const Schedule& s, double t, double s0,
                                      const DensityOperator& x, double tol) {
  return reference_evolution(s, s0, t, x, tol);
}

CMatrix evolution_system_step_matrix(const Schedule& s, double t, double s0,
                                     CMatrix x, double tol) {
  return reference_evolution_matrix(s, s0, t, std::move(x), tol);
}

}  // namespace fockbench
