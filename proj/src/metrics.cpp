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

#include "fockbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace fockbench {

double trace_norm(const CMatrix& x) {
  if (x.rows() != x.cols())
    throw std::invalid_argument("trace_norm: not square");
  if (!x.all_finite())
    throw std::invalid_argument("trace_norm: non-finite entries");
  const double scale = std::max(1.0, x.max_abs());
  double s = 0.0;
  if (x.is_hermitian(1e-10 * scale)) {
    for (double ev : linalg::eigh(hermitian_part(x)).eigenvalues)
      s += std::abs(ev);
  } else {
    for (double sv : linalg::singular_values(x)) s += sv;
  }
  return s;
}

double trace_norm(const DensityOperator& x) { return trace_norm(x.mat); }

SobolevWeight::SobolevWeight(FockBasis basis, std::vector<double> k)
    : basis_(std::move(basis)), k_(std::move(k)) {
  if (k_.size() != basis_.modes())
    throw std::invalid_argument("SobolevWeight: one exponent per mode");
  for (double kj : k_)
    if (kj < 0.0 || !std::isfinite(kj))
      throw std::invalid_argument("SobolevWeight: exponents must be >= 0");
  diag_.resize(basis_.total_dim());
  for (std::size_t i = 0; i < diag_.size(); ++i) {
    double w = 1.0;
    for (std::size_t j = 0; j < basis_.modes(); ++j)
      w *= std::pow(1.0 + double(basis_.occupation_of(i, j)), k_[j] / 4.0);
    diag_[i] = w;
  }
}

CMatrix SobolevWeight::weighted(const CMatrix& x) const {
  if (x.rows() != diag_.size() || x.cols() != diag_.size())
    throw std::invalid_argument("SobolevWeight: shape mismatch");
  CMatrix y = x;
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j) y(i, j) *= diag_[i] * diag_[j];
  return y;
}

double sobolev_norm(const CMatrix& x, const SobolevWeight& w) {
  return trace_norm(w.weighted(x));
}

double sobolev_norm(const DensityOperator& x, const SobolevWeight& w) {
  if (x.basis != w.basis())
    throw std::invalid_argument("sobolev_norm: basis mismatch");
  return sobolev_norm(x.mat, w);
}

double flattened_operator_norm_22(const SuperOperatorMatrix& m) {
  if (m.mat.rows() <= 512) {
    const std::vector<double> sv = linalg::singular_values(m.mat);
    return sv.empty() ? 0.0 : sv.back();
  }
  return linalg::sigma_max(m.mat);
}

namespace {

// Project a Hermitian matrix onto the trace-norm unit ball.
CMatrix project_trace_ball(const CMatrix& x) {
  const linalg::EighResult e = linalg::eigh(hermitian_part(x), true);
  std::vector<double> lam = e.eigenvalues;
  double l1 = 0.0;
  for (double v : lam) l1 += std::abs(v);
  if (l1 <= 1.0) return hermitian_part(x);
  // Soft-threshold |lambda| by theta so that sum max(|lambda|-theta,0) = 1.
  std::vector<double> mag(lam.size());
  for (std::size_t i = 0; i < lam.size(); ++i) mag[i] = std::abs(lam[i]);
  std::sort(mag.begin(), mag.end(), std::greater<double>());
  double csum = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < mag.size(); ++i) {
    csum += mag[i];
    const double cand = (csum - 1.0) / double(i + 1);
    if (i + 1 == mag.size() || mag[i + 1] <= cand) {
      theta = cand;
      break;
    }
  }
  const CMatrix& v = *e.vectors;
  const std::size_t d = v.rows();
  CMatrix out(d, d);
  for (std::size_t k = 0; k < lam.size(); ++k) {
    const double s = std::abs(lam[k]) - theta;
    if (s <= 0.0) continue;
    const double val = lam[k] > 0 ? s : -s;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        out(i, j) += val * v(i, k) * std::conj(v(j, k));
  }
  return out;
}

// Hermitian sign of a Hermitian matrix, the trace-norm subgradient.
CMatrix hermitian_sign(const CMatrix& y) {
  const linalg::EighResult e = linalg::eigh(y, true);
  const CMatrix& v = *e.vectors;
  const std::size_t d = v.rows();
  CMatrix s(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    const double sg = e.eigenvalues[k] >= 0.0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        s(i, j) += sg * v(i, k) * std::conj(v(j, k));
  }
  return s;
}

}  // namespace

Norm11 flattened_operator_norm_11(const SuperOperatorMatrix& m, int restarts,
                                  int iters, std::uint64_t seed) {
  const std::size_t d = m.dim;
  Norm11 res;
  res.upper = std::sqrt(double(d)) * flattened_operator_norm_22(m);
  const CMatrix madj = m.mat.adjoint();

  auto value = [&](const CMatrix& x) { return trace_norm(m.apply(x)); };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int r = 0; r < restarts + int(std::min<std::size_t>(d, 4)); ++r) {
    CMatrix x(d, d);
    if (r < int(std::min<std::size_t>(d, 4))) {
      x(r, r) = 1.0;  // matrix-unit starts
    } else {
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) x(i, j) = cplx(g(rng), g(rng));
      x = project_trace_ball(x);
    }
    double best = value(x);
    res.lower = std::max(res.lower, best);
    double eta = 0.5;
    for (int it = 0; it < iters; ++it) {
      // Ascent along the subgradient M^+(sign(M x)); every projected iterate
      // is feasible, so each evaluation certifies a lower bound.
      CMatrix y = hermitian_part(m.apply(x));
      CMatrix grad = unvec(matvec(madj, vec(hermitian_sign(y))), d, d);
      const double gn = grad.frobenius_norm();
      if (gn == 0.0) break;
      grad *= cplx(eta / gn);
      CMatrix cand = project_trace_ball(x + grad);
      const double cv = value(cand);
      if (cv > best + 1e-15) {
        best = cv;
        x = std::move(cand);
      } else {
        eta *= 0.5;
        if (eta < 1e-6) break;
      }
    }
    res.lower = std::max(res.lower, best);
  }
  res.upper = std::max(res.upper, res.lower);
  return res;
}

DriftDiagnostics drift_diagnostics(const DensityOperator& x) {
  DriftDiagnostics d;
  d.trace_drift = std::abs(x.mat.trace().real() - 1.0) +
                  std::abs(x.mat.trace().imag());
  d.min_eigenvalue = linalg::eigh(x.mat).eigenvalues.front();
  d.per_mode_mass.resize(x.basis.modes(), 0.0);
  for (std::size_t i = 0; i < x.basis.total_dim(); ++i) {
    const double pop = x.mat(i, i).real();
    for (std::size_t j = 0; j < x.basis.modes(); ++j) {
      if (x.basis.occupation_of(i, j) + 2 >= x.basis.cutoff(j))
        d.per_mode_mass[j] += pop;
    }
  }
  for (double mass : d.per_mode_mass)
    d.top_level_mass = std::max(d.top_level_mass, mass);
  return d;
}

namespace {

ConvergenceReport fit_order_impl(const std::vector<double>& abscissa,
                                 const std::vector<std::size_t>& ns,
                                 const std::vector<double>& errors,
                                 double oracle_tol) {
  ConvergenceReport rep;
  rep.ns = ns;
  rep.errors = errors;
  rep.oracle_tol = oracle_tol;
  rep.saturated.assign(errors.size(), false);
  rep.exact.assign(errors.size(), false);

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (errors[i] < 0.0 || !std::isfinite(errors[i]))
      throw std::invalid_argument("fit_order: invalid error value");
    if (errors[i] == 0.0) {
      rep.exact[i] = true;
      continue;
    }
    if (errors[i] < 100.0 * oracle_tol) {
      rep.saturated[i] = true;
      continue;
    }
    lx.push_back(std::log(abscissa[i]));
    ly.push_back(std::log(errors[i]));
  }
  if (lx.size() < 3) {
    rep.message = "fewer than 3 usable points after saturation filtering";
    return rep;
  }
  const double n = double(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) {
    rep.message = "degenerate abscissas";
    return rep;
  }
  rep.slope = (n * sxy - sx * sy) / denom;
  rep.intercept = (sy - rep.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean_y = sy / n;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double fit = rep.slope * lx[i] + rep.intercept;
    ss_res += (ly[i] - fit) * (ly[i] - fit);
    ss_tot += (ly[i] - mean_y) * (ly[i] - mean_y);
  }
  rep.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  rep.fit_ok = true;
  return rep;
}

}  // namespace

ConvergenceReport fit_order(const std::vector<std::size_t>& ns,
                            const std::vector<double>& errors,
                            double oracle_tol) {
  if (ns.size() != errors.size())
    throw std::invalid_argument("fit_order: size mismatch");
  std::vector<double> abscissa(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] == 0) throw std::invalid_argument("fit_order: n must be positive");
    abscissa[i] = double(ns[i]);
  }
  return fit_order_impl(abscissa, ns, errors, oracle_tol);
}

ConvergenceReport fit_order_steps(const std::vector<double>& max_steps,
                                  const std::vector<double>& errors,
                                  double oracle_tol) {
  if (max_steps.size() != errors.size())
    throw std::invalid_argument("fit_order_steps: size mismatch");
  std::vector<double> abscissa(max_steps.size());
  for (std::size_t i = 0; i < max_steps.size(); ++i) {
    if (!(max_steps[i] > 0.0))
      throw std::invalid_argument("fit_order_steps: steps must be positive");
    abscissa[i] = 1.0 / max_steps[i];
  }
  return fit_order_impl(abscissa, {}, errors, oracle_tol);
}

RelativeBoundEstimate relative_bound_diagnostic(const Liouvillian& l,
                                                const SobolevWeight& w,
                                                std::size_t samples,
                                                std::uint64_t seed) {
  if (samples < 1)
    throw std::invalid_argument("relative_bound_diagnostic: samples >= 1");
  const std::size_t d = l.basis().total_dim();
  RelativeBoundEstimate est;
  est.description =
      "max over matrix units E_ij (levels < min(D,12)) and " +
      std::to_string(samples) + " random Gaussian Hermitian samples";

  auto ratio = [&](const CMatrix& x) {
    const double den = sobolev_norm(x, w);
    if (den == 0.0) return 0.0;
    return trace_norm(l.apply(x)) / den;
  };

  const std::size_t budget = std::min<std::size_t>(d, 12);
  for (std::size_t i = 0; i < budget; ++i)
    for (std::size_t j = 0; j < budget; ++j) {
      CMatrix x(d, d);
      x(i, j) = 1.0;
      est.b = std::max(est.b, ratio(x));
      ++est.samples;
    }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (std::size_t s = 0; s < samples; ++s) {
    CMatrix x(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) x(i, j) = cplx(g(rng), g(rng));
    x = hermitian_part(std::move(x));
    est.b = std::max(est.b, ratio(x));
    ++est.samples;
  }
  return est;
}

namespace {

// Highest occupied level per mode of a state (by diagonal and row support).
void check_degree_margin(const Liouvillian& l, const DensityOperator& x) {
  const FockBasis& basis = x.basis;
  const std::vector<std::size_t> deg = l.degree_margin();
  const double floor = 1e-14 * std::max(1.0, x.mat.max_abs());
  for (std::size_t r = 0; r < x.mat.rows(); ++r)
    for (std::size_t c = 0; c < x.mat.cols(); ++c) {
      if (std::abs(x.mat(r, c)) <= floor) continue;
      for (std::size_t j = 0; j < basis.modes(); ++j) {
        const std::size_t lim = basis.cutoff(j) - 1 - deg[j];
        if (basis.occupation_of(r, j) > lim || basis.occupation_of(c, j) > lim)
          throw std::invalid_argument(
              "moment check: state support violates the degree margin "
              "(cutoff - deg)");
      }
    }
}

}  // namespace

MomentStabilityResult moment_stability_check(
    const Liouvillian& l, const SobolevWeight& w,
    const std::vector<DensityOperator>& states, std::optional<double> omega) {
  if (w.basis() != l.basis())
    throw std::invalid_argument("moment_stability_check: basis mismatch");
  const std::vector<double>& wd = w.weight_diag();

  std::vector<double> lhs(states.size()), rhs(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) {
    const DensityOperator& x = states[s];
    if (x.basis != l.basis())
      throw std::invalid_argument("moment_stability_check: state basis");
    const double scale = std::max(1.0, x.mat.max_abs());
    if (linalg::eigh(x.mat).eigenvalues.front() < -1e-10 * scale)
      throw std::invalid_argument(
          "moment_stability_check: state is not positive semi-definite");
    check_degree_margin(l, x);
    const CMatrix lx = l.apply(x.mat);
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < lx.rows(); ++i) {
      a += wd[i] * wd[i] * lx(i, i).real();
      b += wd[i] * wd[i] * x.mat(i, i).real();
    }
    lhs[s] = a;
    rhs[s] = b;
  }
  MomentStabilityResult res;
  if (omega) {
    res.omega = *omega;
  } else {
    res.omega_fitted = true;
    double best = 0.0;
    for (std::size_t s = 0; s < states.size(); ++s)
      if (rhs[s] > 0.0) best = std::max(best, lhs[s] / rhs[s]);
    res.omega = best;
  }
  res.margins.resize(states.size());
  for (std::size_t s = 0; s < states.size(); ++s)
    res.margins[s] = lhs[s] - res.omega * rhs[s];
  return res;
}

DriftInequalityResult moment_drift_check(
    const Liouvillian& l, double k, unsigned photon_l,
    const std::vector<DensityOperator>& states) {
  if (l.basis().modes() != 1)
    throw std::invalid_argument("moment_drift_check: single-mode form");
  if (states.empty())
    throw std::invalid_argument("moment_drift_check: no states");
  const std::size_t d = l.basis().total_dim();
  std::vector<double> f(d), g(d);
  for (std::size_t i = 0; i < d; ++i) {
    f[i] = std::pow(1.0 + double(i), k / 2.0);
    g[i] = std::pow(1.0 + double(i), k / 2.0 - 1.0 + double(photon_l));
  }
  DriftInequalityResult res;
  res.drifts.resize(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) {
    const DensityOperator& x = states[s];
    check_degree_margin(l, x);
    const CMatrix lx = l.apply(x.mat);
    double a = 0.0, bsum = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      a += f[i] * lx(i, i).real();
      bsum += g[i] * x.mat(i, i).real();
    }
    res.drifts[s] = a + 0.5 * double(photon_l) * bsum;
  }
  res.argmax = 0;
  for (std::size_t s = 0; s < states.size(); ++s)
    if (res.drifts[s] > res.drifts[res.argmax]) res.argmax = s;
  res.c = res.drifts[res.argmax];
  return res;
}

ZenoConditionEstimate zeno_condition_check(const ProjectorSuperOp& p,
                                           const Schedule& v,
                                           const std::vector<double>& grid,
                                           std::size_t dense_limit) {
  if (grid.size() < 2)
    throw std::invalid_argument("zeno_condition_check: degenerate grid");
  std::vector<double> times = grid;
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  if (times.size() < 2)
    throw std::invalid_argument("zeno_condition_check: degenerate grid");
  if (times.front() < 0.0 || times.back() > v.horizon() + 1e-12)
    throw std::invalid_argument("zeno_condition_check: grid outside horizon");
  if (!v.is_autonomous())
    throw std::invalid_argument(
        "zeno_condition_check: only autonomous schedules are supported");

  const Liouvillian& gen = v.autonomous_generator();
  const std::size_t d = gen.basis().total_dim();
  const CMatrix& pm = p.projector().mat;

  ZenoConditionEstimate est;
  for (std::size_t a = 0; a < times.size(); ++a)
    for (std::size_t b = a + 1; b < times.size(); ++b) {
      const double s = times[a], t = times[b];
      const double dt = t - s;

      std::function<CMatrix(const CMatrix&)> fwd, bwd;
      CMatrix u, uadj, eflat, eflat_adj;
      if (gen.pure_commutator()) {
        CMatrix h = gen.hamiltonian()->mat;
        h *= cplx(0.0, -dt);
        u = linalg::expm(h);
        uadj = u.adjoint();
        fwd = [&u, &uadj](const CMatrix& y) { return u * y * uadj; };
        bwd = [&u, &uadj](const CMatrix& y) { return uadj * y * u; };
      } else {
        if (d > dense_limit)
          throw std::invalid_argument(
              "zeno_condition_check: dissipative generator beyond the dense "
              "limit");
        eflat = linalg::expm(flatten(gen, dense_limit).mat, dt);
        eflat_adj = eflat.adjoint();
        fwd = [&eflat, d](const CMatrix& y) {
          return unvec(matvec(eflat, vec(y)), d, d);
        };
        bwd = [&eflat_adj, d](const CMatrix& y) {
          return unvec(matvec(eflat_adj, vec(y)), d, d);
        };
      }
      auto proj = [&pm](const CMatrix& y) { return pm * y * pm; };
      auto comp = [&](const CMatrix& y) {
        CMatrix z = y;
        z -= proj(y);
        return z;
      };
      // sigma(P V Q) via power iteration on the action; adjoint is Q V^+ P.
      auto norm_of = [&](bool p_left) {
        auto apply = [&](const CVector& vin) {
          CMatrix y = unvec(vin, d, d);
          y = p_left ? proj(fwd(comp(y))) : comp(fwd(proj(y)));
          return vec(y);
        };
        auto apply_adj = [&](const CVector& vin) {
          CMatrix y = unvec(vin, d, d);
          y = p_left ? comp(bwd(proj(y))) : proj(bwd(comp(y)));
          return vec(y);
        };
        return linalg::power_sigma_max(apply, apply_adj, d * d);
      };
      est.pairs.push_back(
          {s, t, norm_of(true) / dt, norm_of(false) / dt});
      est.b = std::max({est.b, est.pairs.back().norm_pvq,
                        est.pairs.back().norm_qvp});
    }
  return est;
}

}  // namespace fockbench
