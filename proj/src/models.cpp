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

#include "fockbench/models.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "fockbench/linalg.hpp"

namespace fockbench {

namespace {

// (a^+)^k a^l on a single mode of dimension d: couples |n> to |n - l + k>
// with the square roots of falling factorials.
CMatrix single_mode_monomial(std::size_t d, unsigned k, unsigned l) {
  CMatrix m(d, d);
  for (std::size_t n = l; n < d; ++n) {
    const std::size_t target = n - l + k;
    if (target >= d) continue;
    double amp = 1.0;
    for (unsigned p = 0; p < l; ++p) amp *= double(n - p);
    for (unsigned p = 1; p <= k; ++p) amp *= double(n - l + p);
    m(target, n) = std::sqrt(amp);
  }
  return m;
}

cplx int_pow(cplx base, unsigned p) {
  cplx r = 1.0;
  for (unsigned i = 0; i < p; ++i) r *= base;
  return r;
}

}  // namespace

bool PolynomialSpec::is_hermitian_spec(double tol) const {
  std::map<std::tuple<std::size_t, unsigned, unsigned>, cplx> sums;
  for (const Monomial& m : monomials) sums[{m.mode, m.k, m.l}] += m.coeff;
  for (const auto& [key, c] : sums) {
    const auto [mode, k, l] = key;
    auto it = sums.find({mode, l, k});
    const cplx partner = it == sums.end() ? cplx(0.0) : it->second;
    if (std::abs(c - std::conj(partner)) > tol) return false;
  }
  for (const NumberMonomial& m : number_poly)
    if (!std::isfinite(m.coeff)) return false;
  return true;
}

unsigned PolynomialSpec::degree() const {
  unsigned deg = 0;
  for (const Monomial& m : monomials) deg = std::max(deg, m.k + m.l);
  for (const NumberMonomial& m : number_poly)
    for (unsigned p : m.powers) deg = std::max(deg, 2 * p);
  return deg;
}

bool PolynomialSpec::time_dependent() const {
  for (const Monomial& m : monomials)
    if (m.coeff_t) return true;
  for (const NumberMonomial& m : number_poly)
    if (m.coeff_t) return true;
  return false;
}

HilbertOperator build_operator(const PolynomialSpec& spec,
                               const FockBasis& basis, double t,
                               unsigned max_degree) {
  if (spec.degree() > max_degree)
    throw std::invalid_argument("build_operator: monomial degree " +
                                std::to_string(spec.degree()) +
                                " exceeds the configured bound " +
                                std::to_string(max_degree));
  const std::size_t d = basis.total_dim();
  CMatrix total(d, d);
  for (const Monomial& m : spec.monomials) {
    if (m.mode >= basis.modes())
      throw std::invalid_argument("build_operator: mode out of range");
    const cplx c = m.coeff * (m.coeff_t ? m.coeff_t(t) : cplx(1.0));
    if (c == cplx(0.0)) continue;
    const HilbertOperator emb = embed_single_mode(
        basis, m.mode, single_mode_monomial(basis.cutoff(m.mode), m.k, m.l));
    kernels::axpy(d * d, c, emb.mat.data(), total.data());
  }
  for (const NumberMonomial& m : spec.number_poly) {
    if (m.powers.size() != basis.modes())
      throw std::invalid_argument(
          "build_operator: number monomial needs one power per mode");
    const double c = m.coeff * (m.coeff_t ? m.coeff_t(t) : 1.0);
    if (c == 0.0) continue;
    for (std::size_t i = 0; i < d; ++i) {
      double v = 1.0;
      for (std::size_t j = 0; j < basis.modes(); ++j)
        for (unsigned p = 0; p < m.powers[j]; ++p)
          v *= double(basis.occupation_of(i, j));
      total(i, i) += c * v;
    }
  }
  return {basis, std::move(total)};
}

HilbertOperator build_hamiltonian(const PolynomialSpec& spec,
                                  const FockBasis& basis, double t,
                                  unsigned max_degree) {
  if (!spec.time_dependent() && !spec.is_hermitian_spec())
    throw std::invalid_argument(
        "build_hamiltonian: spec is not Hermitian (coefficients must pair as "
        "lambda_kl = conj(lambda_lk))");
  HilbertOperator h = build_operator(spec, basis, t, max_degree);
  const double scale = std::max(1.0, h.mat.max_abs());
  if (!h.mat.is_hermitian(1e-12 * scale))
    throw std::invalid_argument(
        "build_hamiltonian: assembled matrix is not Hermitian");
  return h;
}

Liouvillian ou_generator(const FockBasis& basis, double lambda, double mu,
                         std::size_t mode) {
  if (lambda < 0.0 || mu < 0.0)
    throw std::invalid_argument("ou_generator: rates must be >= 0");
  std::vector<HilbertOperator> jumps;
  if (lambda > 0.0) {
    HilbertOperator a = annihilation(basis, mode);
    a.mat *= cplx(lambda);
    jumps.push_back(std::move(a));
  }
  if (mu > 0.0) {
    HilbertOperator ad = creation(basis, mode);
    ad.mat *= cplx(mu);
    jumps.push_back(std::move(ad));
  }
  return gksl(basis, std::nullopt, std::move(jumps));
}

Liouvillian l_photon_dissipation(const FockBasis& basis, unsigned photon_l,
                                 cplx alpha, std::size_t mode, double guard) {
  if (photon_l < 1)
    throw std::invalid_argument("l_photon_dissipation: l must be >= 1");
  if (basis.cutoff(mode) < photon_l + 2)
    throw std::invalid_argument(
        "l_photon_dissipation: cutoff must be at least l + 2");
  if (alpha != cplx(0.0)) {
    std::vector<cplx> amp(basis.modes(), cplx(0.0));
    amp[mode] = alpha;
    coherent_state(basis, amp, guard);  // enforce the truncation guard
  }
  HilbertOperator jump = embed_single_mode(
      basis, mode, single_mode_monomial(basis.cutoff(mode), 0, photon_l));
  const cplx shift = int_pow(alpha, photon_l);
  for (std::size_t i = 0; i < basis.total_dim(); ++i)
    jump.mat(i, i) -= shift;
  return dissipator(jump);
}

HilbertOperator cat_projector(const FockBasis& basis, cplx alpha,
                              std::size_t mode, double guard) {
  const Ket plus = cat_state(basis, alpha, CatParity::plus, mode, guard).ket;
  const Ket minus = cat_state(basis, alpha, CatParity::minus, mode, guard).ket;
  CMatrix p = outer(plus.amps, plus.amps);
  p += outer(minus.amps, minus.amps);
  return {basis, std::move(p)};
}

HilbertOperator cat_logical_x(const FockBasis& basis, cplx alpha,
                              std::size_t mode, double guard) {
  const Ket plus = cat_state(basis, alpha, CatParity::plus, mode, guard).ket;
  const Ket minus = cat_state(basis, alpha, CatParity::minus, mode, guard).ket;
  CMatrix x = outer(plus.amps, minus.amps);
  x += outer(minus.amps, plus.amps);
  return {basis, std::move(x)};
}

CMatrix ZenoGateTarget::apply_compressed(const CMatrix& x) const {
  const CMatrix& p = projector.mat;
  return u_compressed * (p * x * p) * u_compressed.adjoint();
}

CMatrix ZenoGateTarget::apply_ideal(const CMatrix& x) const {
  const CMatrix& p = projector.mat;
  return u_ideal * (p * x * p) * u_ideal.adjoint();
}

ZenoGateTarget zeno_gate_target(const FockBasis& basis, cplx alpha, double t,
                                std::size_t mode, double guard) {
  ZenoGateTarget target{t, cat_projector(basis, alpha, mode, guard),
                        {}, {}, {}, {}, 0.0};

  const CMatrix h =
      annihilation(basis, mode).mat + creation(basis, mode).mat;
  const CMatrix& p = target.projector.mat;
  target.h_compressed = p * h * p;
  target.h_ideal = cat_logical_x(basis, alpha, mode, guard).mat;
  target.h_ideal *= cplx(2.0 * alpha.real());

  CMatrix hc = target.h_compressed;
  hc *= cplx(0.0, -t);
  target.u_compressed = linalg::expm(hc);
  CMatrix hi = target.h_ideal;
  hi *= cplx(0.0, -t);
  target.u_ideal = linalg::expm(hi);

  // Flattened 2->2 distance of the two step maps; quantifies the
  // large-|alpha| idealization P H P ~ 2 Re(alpha) X.
  const std::size_t d = basis.total_dim();
  auto apply = [&](const CVector& vin) {
    const CMatrix y = unvec(vin, d, d);
    CMatrix out = target.apply_compressed(y);
    out -= target.apply_ideal(y);
    return vec(out);
  };
  auto apply_adj = [&](const CVector& vin) {
    const CMatrix y = unvec(vin, d, d);
    const CMatrix& uc = target.u_compressed;
    const CMatrix& ui = target.u_ideal;
    CMatrix out = p * (uc.adjoint() * y * uc) * p;
    out -= p * (ui.adjoint() * y * ui) * p;
    return vec(out);
  };
  target.discrepancy = linalg::power_sigma_max(apply, apply_adj, d * d);
  return target;
}

Schedule schedule_from_spec(const PolynomialSpec& spec, const FockBasis& basis,
                            double horizon, unsigned max_degree) {
  if (spec.degree() > max_degree)
    throw std::invalid_argument("schedule_from_spec: degree exceeds bound");
  std::vector<Schedule::HamiltonianTerm> terms;
  for (const Monomial& m : spec.monomials) {
    if (m.mode >= basis.modes())
      throw std::invalid_argument("schedule_from_spec: mode out of range");
    CMatrix op = embed_single_mode(
                     basis, m.mode,
                     single_mode_monomial(basis.cutoff(m.mode), m.k, m.l))
                     .mat;
    const cplx c0 = m.coeff;
    auto ct = m.coeff_t;
    terms.push_back({std::move(op), [c0, ct](double t) {
                       return c0 * (ct ? ct(t) : cplx(1.0));
                     }});
  }
  for (const NumberMonomial& m : spec.number_poly) {
    if (m.powers.size() != basis.modes())
      throw std::invalid_argument(
          "schedule_from_spec: number monomial needs one power per mode");
    const std::size_t d = basis.total_dim();
    CMatrix op(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      double v = 1.0;
      for (std::size_t j = 0; j < basis.modes(); ++j)
        for (unsigned q = 0; q < m.powers[j]; ++q)
          v *= double(basis.occupation_of(i, j));
      op(i, i) = v;
    }
    const double c0 = m.coeff;
    auto ct = m.coeff_t;
    terms.push_back({std::move(op), [c0, ct](double t) {
                       return cplx(c0 * (ct ? ct(t) : 1.0));
                     }});
  }
  return Schedule(basis, horizon, std::move(terms));
}

}  // namespace fockbench
