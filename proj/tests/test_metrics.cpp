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

#include <cmath>
#include <random>

#include "doctest.h"
#include "fockbench/metrics.hpp"
#include "fockbench/models.hpp"

using namespace fockbench;

namespace {

CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  return hermitian_part(std::move(a));
}

CMatrix matrix_unit(std::size_t d, std::size_t i, std::size_t j) {
  CMatrix m(d, d);
  m(i, j) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("trace norm basics") {
  FockBasis basis({4});
  CHECK(trace_norm(DensityOperator::fock_state(basis, {2})) ==
        doctest::Approx(1.0));
  CHECK(trace_norm(DensityOperator::maximally_mixed(basis)) ==
        doctest::Approx(1.0));

  CMatrix pm(2, 2);
  pm(0, 0) = 1.0;
  pm(1, 1) = -1.0;
  CHECK(trace_norm(pm) == doctest::Approx(2.0));

  // Hermitian eigenvalue path agrees with the singular-value path
  std::mt19937_64 rng(3);
  const CMatrix h = random_hermitian(9, rng);
  double sv_sum = 0.0;
  for (double s : linalg::singular_values(h)) sv_sum += s;
  CHECK(std::abs(trace_norm(h) - sv_sum) < 1e-11 * sv_sum);

  // norm axioms on random triples
  for (int rep = 0; rep < 5; ++rep) {
    const CMatrix a = random_hermitian(6, rng);
    const CMatrix b = random_hermitian(6, rng);
    CHECK(trace_norm(a + b) <= trace_norm(a) + trace_norm(b) + 1e-11);
    CHECK(trace_norm(cplx(-2.5) * a) ==
          doctest::Approx(2.5 * trace_norm(a)).epsilon(1e-11));
    if (a.max_abs() > 0) CHECK(trace_norm(a) > 0.0);
  }
}

TEST_CASE("sobolev norm: weights and special cases") {
  FockBasis basis({5});
  const SobolevWeight w0(basis, {0.0});
  const SobolevWeight w4(basis, {4.0});
  std::mt19937_64 rng(5);
  const CMatrix x = random_hermitian(5, rng);

  // k = 0 reduces to the trace norm
  CHECK(sobolev_norm(x, w0) == doctest::Approx(trace_norm(x)).epsilon(1e-12));

  // vacuum is weight-1 for any k
  CHECK(sobolev_norm(matrix_unit(5, 0, 0), w4) == doctest::Approx(1.0));
  // |1><1| at k = 4 weighs (1+1)^2 = 4
  CHECK(sobolev_norm(matrix_unit(5, 1, 1), w4) == doctest::Approx(4.0));

  // monotonicity in k
  const SobolevWeight w2(basis, {2.0});
  CHECK(sobolev_norm(x, w4) >= sobolev_norm(x, w2) - 1e-12);
  CHECK(sobolev_norm(x, w2) >= sobolev_norm(x, w0) - 1e-12);

  CHECK_THROWS_AS(SobolevWeight(basis, {-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SobolevWeight(basis, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("flattened operator norms") {
  FockBasis basis({3});
  const std::size_t d2 = 9;
  SuperOperatorMatrix id{3, CMatrix::identity(d2)};
  CHECK(flattened_operator_norm_22(id) == doctest::Approx(1.0));
  const Norm11 id11 = flattened_operator_norm_11(id);
  CHECK(id11.lower == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(id11.upper >= id11.lower);

  SuperOperatorMatrix half{3, CMatrix::identity(d2)};
  half.mat *= cplx(0.25);
  CHECK(flattened_operator_norm_22(half) == doctest::Approx(0.25));
  CHECK(flattened_operator_norm_11(half).lower ==
        doctest::Approx(0.25).epsilon(1e-9));

  // rank-1 projector superoperator achieves its 1->1 norm at x = P
  HilbertOperator p{basis, matrix_unit(3, 0, 0)};
  const SuperOperatorMatrix ps = projector_superop(p).flattened();
  const Norm11 n11 = flattened_operator_norm_11(ps);
  CHECK(n11.lower == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fit_order recovers planted slopes") {
  // exact power law
  ConvergenceReport r =
      fit_order({10, 100, 1000}, {1e-2, 1e-3, 1e-4}, 1e-13);
  REQUIRE(r.fit_ok);
  CHECK(r.slope == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r.r2 == doctest::Approx(1.0));

  // constant errors fit slope 0
  r = fit_order({4, 8, 16, 32}, {0.5, 0.5, 0.5, 0.5}, 1e-13);
  REQUIRE(r.fit_ok);
  CHECK(r.slope == doctest::Approx(0.0));

  // planted 3/n^2 with 1% multiplicative noise over a decade
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.01, 0.01);
  std::vector<std::size_t> ns;
  std::vector<double> errs;
  for (std::size_t n = 10; n <= 100; n += 10) {
    ns.push_back(n);
    errs.push_back(3.0 / double(n * n) * (1.0 + u(rng)));
  }
  r = fit_order(ns, errs, 1e-13);
  REQUIRE(r.fit_ok);
  CHECK(r.slope == doctest::Approx(-2.0).epsilon(0.025));

  // saturated points are excluded and flagged
  r = fit_order({2, 4, 8, 16}, {1e-2, 1e-3, 1e-12, 0.0}, 1e-12);
  CHECK_FALSE(r.fit_ok);
  CHECK(r.saturated[2]);
  CHECK(r.exact[3]);
  CHECK(!r.message.empty());
}

TEST_CASE("relative bound diagnostic") {
  FockBasis basis({6});
  const SobolevWeight w(basis, {4.0});

  // zero generator
  const RelativeBoundEstimate z =
      relative_bound_diagnostic(zero_liouvillian(basis), w, 3);
  CHECK(z.b == 0.0);

  // single matrix-unit evaluation for the number commutator:
  // |L(E01)|_1 / |E01|_W = 1 / ((1+0)(1+1)) = 1/2 at k = 4
  const Liouvillian ln = commutator_generator(number_operator(basis, 0));
  const CMatrix e01 = matrix_unit(6, 0, 1);
  const double ratio = trace_norm(ln.apply(e01)) / sobolev_norm(e01, w);
  CHECK(ratio == doctest::Approx(0.5).epsilon(1e-12));

  const RelativeBoundEstimate est = relative_bound_diagnostic(ln, w, 5);
  CHECK(est.b >= 0.5 - 1e-12);

  // homogeneity: the ratio is scale invariant
  const CMatrix e01s = cplx(17.0) * matrix_unit(6, 0, 1);
  CHECK(trace_norm(ln.apply(e01s)) / sobolev_norm(e01s, w) ==
        doctest::Approx(ratio).epsilon(1e-12));
}

TEST_CASE("moment stability margins") {
  FockBasis basis({8});
  const SobolevWeight w(basis, {2.0});
  std::vector<DensityOperator> states;
  for (std::size_t i = 0; i < 5; ++i)
    states.push_back(DensityOperator(basis, matrix_unit(8, i, i)));

  // zero generator: all margins vanish with fitted omega = 0
  const MomentStabilityResult z =
      moment_stability_check(zero_liouvillian(basis), w, states);
  CHECK(z.omega == 0.0);
  for (double m : z.margins) CHECK(std::abs(m) < 1e-14);

  // diagonal states are invisible to the number commutator
  const MomentStabilityResult c = moment_stability_check(
      commutator_generator(number_operator(basis, 0)), w, states, 0.0);
  for (double m : c.margins) CHECK(std::abs(m) < 1e-12);

  // state beyond the degree margin is rejected
  const Liouvillian diss = dissipator(annihilation(basis, 0));
  std::vector<DensityOperator> top{DensityOperator(basis, matrix_unit(8, 7, 7))};
  CHECK_THROWS_AS((void)moment_stability_check(diss, w, top),
                  std::invalid_argument);

  // non-PSD state is rejected
  CMatrix neg(8, 8);
  neg(1, 1) = -1.0;
  std::vector<DensityOperator> bad{DensityOperator(basis, neg)};
  CHECK_THROWS_AS((void)moment_stability_check(diss, w, bad),
                  std::invalid_argument);
}

TEST_CASE("zeno condition estimate vanishes for commuting projections") {
  FockBasis basis({8});
  CMatrix pk(8, 8);
  pk(0, 0) = 1.0;
  pk(1, 1) = 1.0;
  const ProjectorSuperOp p = projector_superop(HilbertOperator{basis, pk});
  const Schedule v = Schedule::autonomous(
      commutator_generator(number_operator(basis, 0)), 1.0);
  const ZenoConditionEstimate est =
      zeno_condition_check(p, v, {0.0, 0.25, 0.5, 1.0});
  CHECK(est.b < 1e-12);
  CHECK(est.pairs.size() == 6);  // all ordered pairs from 4 grid points

  CHECK_THROWS_AS((void)zeno_condition_check(p, v, {0.4}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)zeno_condition_check(p, v, {0.4, 0.4}),
                  std::invalid_argument);
}

TEST_CASE("zeno condition estimate is stable under grid refinement") {
  FockBasis basis({16});
  const cplx alpha(1.0, 0.0);
  const HilbertOperator p = cat_projector(basis, alpha);
  const ProjectorSuperOp ps = projector_superop(p);
  const CMatrix a = annihilation(basis, 0).mat;
  const Liouvillian drive =
      commutator_generator(HilbertOperator{basis, a + a.adjoint()});
  const Schedule v = Schedule::autonomous(drive, 1.0);

  const ZenoConditionEstimate coarse =
      zeno_condition_check(ps, v, {0.0, 0.2, 0.4});
  const ZenoConditionEstimate fine =
      zeno_condition_check(ps, v, {0.0, 0.05, 0.1, 0.2});
  CHECK(coarse.b > 0.0);
  // finite b, stable under refinement within the sampling tolerance
  CHECK(fine.b <= coarse.b * 1.2 + 1e-9);
}

TEST_CASE("guarded coherent state keeps the top levels empty under OU flow") {
  FockBasis basis({18});
  const DensityOperator rho0 = DensityOperator::from_ket(
      coherent_state(basis, {cplx(1.0, 0.0)}).ket);
  const Liouvillian ou = ou_generator(basis, 1.0, 0.5);
  const DensityOperator rho1 = semigroup_step(ou, 1.5, rho0);
  const DriftDiagnostics d = drift_diagnostics(rho1);
  CHECK(d.top_level_mass <= 1e-8);
  CHECK(d.trace_drift <= 1e-10);
}

TEST_CASE("drift diagnostics") {
  FockBasis basis({10});
  const DensityOperator fresh = DensityOperator::fock_state(basis, {1});
  const DriftDiagnostics d = drift_diagnostics(fresh);
  CHECK(d.trace_drift < 1e-14);
  CHECK(d.min_eigenvalue >= -1e-12);
  CHECK(d.top_level_mass < 1e-14);

  const DriftDiagnostics mixed =
      drift_diagnostics(DensityOperator::maximally_mixed(basis));
  CHECK(mixed.top_level_mass == doctest::Approx(2.0 / 10.0));
}
