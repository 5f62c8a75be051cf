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

#include "doctest.h"
#include "fockbench/metrics.hpp"
#include "fockbench/models.hpp"
#include "fockbench/schemes.hpp"

using namespace fockbench;

namespace {

double trace_dist(const CMatrix& a, const CMatrix& b) {
  CMatrix d = a;
  d -= b;
  return trace_norm(d);
}

// Small OU split shared by several order fits.
struct OuSplit {
  FockBasis basis{std::vector<std::size_t>{12}};
  Liouvillian a{ou_generator(basis, 1.0, 0.0)};
  Liouvillian b{ou_generator(basis, 0.0, 0.5)};
  Liouvillian sum{a + b};
  DensityOperator x{DensityOperator::fock_state(basis, {1})};
  double t = 0.5;
};

double fitted_slope(const std::vector<std::size_t>& ns,
                    const std::vector<double>& errs) {
  const ConvergenceReport rep = fit_order(ns, errs, 1e-13);
  REQUIRE(rep.fit_ok);
  CHECK(rep.r2 >= 0.98);
  return rep.slope;
}

}  // namespace

TEST_CASE("splitting scheme validation and construction") {
  SplittingScheme::trotter().validate();
  SplittingScheme::strang().validate();
  CHECK_FALSE(SplittingScheme::trotter().reversible_only());

  const SplittingScheme s4 = SplittingScheme::suzuki(4);
  s4.validate();
  CHECK(s4.order_claim == 4);
  CHECK(s4.reversible_only());  // the middle stage is negative
  // suzuki(2) is Strang
  const SplittingScheme s2 = SplittingScheme::suzuki(2);
  CHECK(s2.stages.size() == 3);
  CHECK(s2.order_claim == 2);

  CHECK_THROWS_AS((void)SplittingScheme::suzuki(3), std::invalid_argument);
  SplittingScheme bad{{{GenTag::A, 0.7}, {GenTag::B, 1.0}}, 1};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("partition construction") {
  const Partition p = Partition::uniform(0.0, 1.0, 4);
  CHECK(p.intervals() == 4);
  CHECK(p.points.front() == 0.0);
  CHECK(p.points.back() == 1.0);
  CHECK_THROWS_AS(Partition({0.5}), std::invalid_argument);
  CHECK_THROWS_AS(Partition({0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("trotter is exact on commuting generators") {
  FockBasis basis({3, 3});
  const Liouvillian a = commutator_generator(number_operator(basis, 0));
  const Liouvillian b = commutator_generator(number_operator(basis, 1));
  Ket k0 = fock_ket(basis, {1, 0});
  Ket k1 = fock_ket(basis, {0, 2});
  CVector amps(basis.total_dim(), cplx(0.0));
  for (std::size_t i = 0; i < amps.size(); ++i)
    amps[i] = k0.amps[i] + k1.amps[i];
  normalize(amps);
  const DensityOperator x =
      DensityOperator::from_ket(Ket{basis, std::move(amps)});

  const double t = 0.9;
  const DensityOperator oracle = semigroup_step(a + b, t, x);
  for (std::size_t n : {1, 3, 7}) {
    CHECK(trace_dist(trotter_product(a, b, t, n, x).mat, oracle.mat) < 1e-10);
    CHECK(trace_dist(strang_product(a, b, t, n, x).mat, oracle.mat) < 1e-10);
    CHECK(trace_dist(
              suzuki_product(SplittingScheme::suzuki(4), a, b, t, n, x).mat,
              oracle.mat) < 1e-10);
  }
}

TEST_CASE("trotter with a zero partner reduces to the plain semigroup") {
  OuSplit ou;
  const Liouvillian zero = zero_liouvillian(ou.basis);
  const DensityOperator lhs = trotter_product(ou.a, zero, 0.7, 5, ou.x);
  const DensityOperator rhs = semigroup_step(ou.a, 0.7 / 5.0,
                                             semigroup_step(ou.a, 4.0 * 0.7 / 5.0, ou.x));
  // five factors of e^{(t/5)A} compose to e^{tA}
  CHECK(trace_dist(lhs.mat, semigroup_step(ou.a, 0.7, ou.x).mat) < 1e-12);
  (void)rhs;
}

TEST_CASE("trotter order on the OU split") {
  OuSplit ou;
  const DensityOperator oracle = semigroup_step(ou.sum, ou.t, ou.x);
  std::vector<std::size_t> ns{4, 8, 16, 32};
  std::vector<double> errs;
  for (std::size_t n : ns)
    errs.push_back(
        trace_dist(trotter_product(ou.a, ou.b, ou.t, n, ou.x).mat, oracle.mat));
  const double slope = fitted_slope(ns, errs);
  CHECK(slope == doctest::Approx(-1.0).epsilon(0.25));
}

TEST_CASE("strang order on the OU split") {
  OuSplit ou;
  const DensityOperator oracle = semigroup_step(ou.sum, ou.t, ou.x);
  std::vector<std::size_t> ns{4, 8, 16, 32};
  std::vector<double> errs;
  for (std::size_t n : ns)
    errs.push_back(
        trace_dist(strang_product(ou.a, ou.b, ou.t, n, ou.x).mat, oracle.mat));
  const double slope = fitted_slope(ns, errs);
  CHECK(slope == doctest::Approx(-2.0).epsilon(0.15));

  // n = 1 is the single symmetric step
  const DensityOperator one = strang_product(ou.a, ou.b, ou.t, 1, ou.x);
  const CMatrix manual = prepare_step(ou.b, ou.t / 2.0)
                             .apply(prepare_step(ou.a, ou.t).apply(
                                 prepare_step(ou.b, ou.t / 2.0).apply(ou.x.mat)));
  CHECK(trace_dist(one.mat, manual) < 1e-14);
}

TEST_CASE("suzuki with elementary stage lists reproduces the named products") {
  OuSplit ou;
  const SplittingScheme tro{{{GenTag::A, 1.0}, {GenTag::B, 1.0}}, 1};
  CHECK(suzuki_product(tro, ou.a, ou.b, ou.t, 6, ou.x).mat ==
        trotter_product(ou.a, ou.b, ou.t, 6, ou.x).mat);
  CHECK(suzuki_product(SplittingScheme::strang(), ou.a, ou.b, ou.t, 6, ou.x)
            .mat == strang_product(ou.a, ou.b, ou.t, 6, ou.x).mat);
}

TEST_CASE("negative-coefficient schemes require reversible generators") {
  OuSplit ou;
  CHECK_THROWS_AS((void)suzuki_product(SplittingScheme::suzuki(4), ou.a, ou.b,
                                       ou.t, 2, ou.x),
                  std::invalid_argument);
}

TEST_CASE("fourth-order suzuki on noncommuting commutators") {
  FockBasis basis({10});
  const CMatrix am = annihilation(basis, 0).mat;
  const Liouvillian a =
      commutator_generator(HilbertOperator{basis, am + am.adjoint()});
  const Liouvillian b = commutator_generator(number_operator(basis, 0));
  const DensityOperator x = DensityOperator::fock_state(basis, {1});
  const double t = 1.0;
  const DensityOperator oracle = semigroup_step(a + b, t, x);

  std::vector<std::size_t> ns{2, 3, 4, 6, 8};
  std::vector<double> errs;
  for (std::size_t n : ns)
    errs.push_back(trace_dist(
        suzuki_product(SplittingScheme::suzuki(4), a, b, t, n, x).mat,
        oracle.mat));
  const double slope = fitted_slope(ns, errs);
  CHECK(slope == doctest::Approx(-4.0).epsilon(0.125));
}

TEST_CASE("time-dependent trotter basics") {
  FockBasis basis({8});
  const CMatrix am = annihilation(basis, 0).mat;
  const CMatrix drive = am + am.adjoint();
  const CMatrix num = number_operator(basis, 0).mat;

  const Schedule u(basis, 2.0,
                   {{drive, [](double t) { return cplx(std::cos(t)); }}});
  const Schedule v(basis, 2.0,
                   {{num, [](double t) { return cplx(std::sin(t)); }}});
  const Schedule vzero =
      Schedule::autonomous(zero_liouvillian(basis), 2.0);
  const DensityOperator x = DensityOperator::fock_state(basis, {1});

  // zero partner reduces to the U evolution
  const Partition part = Partition::uniform(0.0, 1.0, 5);
  const DensityOperator lhs = time_dependent_trotter(u, vzero, part, x);
  const DensityOperator rhs = reference_evolution(u, 0.0, 1.0, x, 1e-11);
  CHECK(trace_dist(lhs.mat, rhs.mat) < 1e-8);

  // autonomous schedules reduce to the plain product
  const Liouvillian a = commutator_generator(HilbertOperator{basis, drive});
  const Liouvillian b = commutator_generator(HilbertOperator{basis, num});
  const DensityOperator viat = time_dependent_trotter(
      Schedule::autonomous(a, 2.0), Schedule::autonomous(b, 2.0),
      Partition::uniform(0.0, 1.0, 4), x);
  const DensityOperator direct = trotter_product(a, b, 1.0, 4, x);
  CHECK(trace_dist(viat.mat, direct.mat) < 1e-8);
}

TEST_CASE("time-dependent trotter converges at first order") {
  FockBasis basis({8});
  const CMatrix am = annihilation(basis, 0).mat;
  const CMatrix drive = am + am.adjoint();
  const CMatrix num = number_operator(basis, 0).mat;
  const Schedule u(basis, 1.5,
                   {{drive, [](double t) { return cplx(std::cos(t)); }}});
  const Schedule v(basis, 1.5,
                   {{num, [](double t) { return cplx(std::sin(t)); }}});
  Schedule sum(basis, 1.5,
               {{drive, [](double t) { return cplx(std::cos(t)); }},
                {num, [](double t) { return cplx(std::sin(t)); }}});
  const DensityOperator x = DensityOperator::fock_state(basis, {1});
  const double t = 1.0;
  const DensityOperator oracle = reference_evolution(sum, 0.0, t, x, 1e-11);

  std::vector<std::size_t> ns{4, 8, 16, 32};
  std::vector<double> errs;
  for (std::size_t n : ns)
    errs.push_back(trace_dist(
        time_dependent_trotter(u, v, Partition::uniform(0.0, t, n), x).mat,
        oracle.mat));
  const double slope = fitted_slope(ns, errs);
  CHECK(slope == doctest::Approx(-1.0).epsilon(0.25));
}

TEST_CASE("partition offset invariance for autonomous factors") {
  FockBasis basis({6});
  const CMatrix am = annihilation(basis, 0).mat;
  const Liouvillian a =
      commutator_generator(HilbertOperator{basis, am + am.adjoint()});
  const Liouvillian b = commutator_generator(number_operator(basis, 0));
  const Schedule ua = Schedule::autonomous(a, 3.0);
  const Schedule vb = Schedule::autonomous(b, 3.0);
  const DensityOperator x = DensityOperator::fock_state(basis, {1});

  // dyadic points make the interval lengths bitwise equal across the shift
  const DensityOperator r1 =
      time_dependent_trotter(ua, vb, Partition({0.0, 0.25, 0.5, 0.75, 1.0}), x);
  const DensityOperator r2 = time_dependent_trotter(
      ua, vb, Partition({2.0, 2.25, 2.5, 2.75, 3.0}), x);
  CHECK(r1.mat == r2.mat);
}

TEST_CASE("zeno product structure") {
  FockBasis basis({16});
  const HilbertOperator p = cat_projector(basis, cplx(1.0, 0.0));
  const ProjectorSuperOp ps = projector_superop(p);
  const DensityOperator x = DensityOperator::fock_state(basis, {0});

  // L = 0 collapses to P x P
  const DensityOperator fixed =
      zeno_product(ps, zero_liouvillian(basis), 1.0, 4, x);
  CHECK(trace_dist(fixed.mat, ps.apply(x.mat)) < 1e-13);

  // P = identity is the plain semigroup
  const ProjectorSuperOp pid = projector_superop(identity_operator(basis));
  const Liouvillian l = dissipator(annihilation(basis, 0));
  CHECK(trace_dist(zeno_product(pid, l, 0.6, 4, x).mat,
                   semigroup_step(l, 0.6, x).mat) < 1e-12);
}

TEST_CASE("projective zeno converges to the compressed generator") {
  FockBasis basis({16});
  const cplx alpha(1.0, 0.0);
  const HilbertOperator p = cat_projector(basis, alpha);
  const ProjectorSuperOp ps = projector_superop(p);
  const CMatrix am = annihilation(basis, 0).mat;
  const Liouvillian drive =
      commutator_generator(HilbertOperator{basis, am + am.adjoint()});
  const DensityOperator x = DensityOperator::from_ket(
      cat_state(basis, alpha, CatParity::plus).ket);
  const double t = 0.5;

  // compressed-generator oracle e^{t P L P} P x, equal to conjugation by
  // e^{-it PHP} on the code block
  const CMatrix php = p.mat * (am + am.adjoint()) * p.mat;
  const Liouvillian compressed =
      commutator_generator(HilbertOperator{basis, php});
  const CMatrix oracle = semigroup_step_matrix(compressed, t, ps.apply(x.mat));

  std::vector<std::size_t> ns{4, 8, 16, 32, 64};
  std::vector<double> errs;
  for (std::size_t n : ns)
    errs.push_back(trace_dist(zeno_product(ps, drive, t, n, x).mat, oracle));
  const double slope = fitted_slope(ns, errs);
  CHECK(slope == doctest::Approx(-1.0).epsilon(0.25));
}

TEST_CASE("compressed-generator conjugation equals the flattened route") {
  FockBasis basis({8});
  const HilbertOperator p = cat_projector(basis, cplx(0.8, 0.0), 0, 1e-6);
  const ProjectorSuperOp ps = projector_superop(p);
  const CMatrix am = annihilation(basis, 0).mat;
  const CMatrix php = p.mat * (am + am.adjoint()) * p.mat;
  const Liouvillian compressed =
      commutator_generator(HilbertOperator{basis, php});
  const DensityOperator x = DensityOperator::fock_state(basis, {0});
  const CMatrix px = ps.apply(x.mat);

  // e^{t PLP}(PxP) via the flattened superoperator of the full compression
  const SuperOperatorMatrix lp = flatten(compressed);
  const CMatrix pflat = ps.flattened().mat;
  CMatrix plp = pflat * (lp.mat * pflat);
  const CMatrix e = linalg::expm(plp, 0.7);
  const CMatrix via_flat = unvec(matvec(e, vec(px)), 8, 8);
  const CMatrix via_conj = semigroup_step_matrix(compressed, 0.7, px);
  CHECK(trace_dist(via_flat, via_conj) < 1e-12);
}

TEST_CASE("uniform power contraction hits delta^n exactly") {
  FockBasis basis({6});
  CMatrix pk(6, 6);
  pk(0, 0) = 1.0;
  pk(1, 1) = 1.0;
  const HilbertOperator p{basis, pk};

  // identity-on-the-complement mixer: Q itself
  const CMatrix pflat = projector_superop(p).flattened().mat;
  CMatrix q = CMatrix::identity(36);
  q -= pflat;
  const double delta = 0.5;
  const ZenoSpec zq =
      make_uniform_power_contraction(p, delta, SuperOperatorMatrix{6, q});
  CMatrix mn = CMatrix::identity(36);
  for (int n = 1; n <= 6; ++n) {
    mn = zq.m.mat * mn;
    CMatrix diff = mn;
    diff -= pflat;
    CHECK(flattened_operator_norm_22({6, diff}) ==
          doctest::Approx(std::pow(delta, n)).epsilon(1e-10));
  }

  // Haar mixer on the complement: ratio exactly one
  const SuperOperatorMatrix mixer = haar_complement_mixer(p, 99);
  const ZenoSpec zr = make_uniform_power_contraction(p, delta, mixer);
  mn = CMatrix::identity(36);
  for (int n = 1; n <= 10; ++n) {
    mn = zr.m.mat * mn;
    CMatrix diff = mn;
    diff -= pflat;
    const double ratio =
        flattened_operator_norm_22({6, diff}) / std::pow(delta, n);
    CHECK(std::abs(ratio - 1.0) < 1e-10);
  }

  // delta -> 0 collapses M to P
  const ZenoSpec z0 = make_uniform_power_contraction(p, 0.0, mixer);
  CMatrix d0 = z0.m.mat;
  d0 -= pflat;
  CHECK(d0.max_abs() < 1e-14);

  // a leaking mixer is rejected
  CHECK_THROWS_AS((void)make_uniform_power_contraction(
                      p, delta, SuperOperatorMatrix{6, CMatrix::identity(36)}),
                  std::invalid_argument);
}

TEST_CASE("general zeno with M = P matches the projective product") {
  FockBasis basis({8});
  CMatrix pk(8, 8);
  pk(0, 0) = 1.0;
  pk(1, 1) = 1.0;
  const HilbertOperator p{basis, pk};
  const ProjectorSuperOp ps = projector_superop(p);
  const ZenoSpec z{ps.flattened(), ps, 0.0};

  const CMatrix am = annihilation(basis, 0).mat;
  const Liouvillian drive =
      commutator_generator(HilbertOperator{basis, am + am.adjoint()});
  const Schedule v = Schedule::autonomous(drive, 1.0);

  // code-supported state: the two runs then agree
  CMatrix x0(8, 8);
  x0(0, 0) = 0.5;
  x0(1, 1) = 0.5;
  x0(0, 1) = x0(1, 0) = 0.25;
  const DensityOperator x{basis, x0};

  const double t = 0.5;
  const std::size_t n = 6;
  const CMatrix general =
      zeno_product_general(z, v, Partition::uniform(0.0, t, n), x.mat);
  const DensityOperator projective = zeno_product(ps, drive, t, n, x);
  CHECK(trace_dist(general, projective.mat) < 1e-8);
}

TEST_CASE("non-uniform partitions fit against the largest step") {
  // first-order scheme over partitions whose max step halves each sweep
  OuSplit ou;
  const DensityOperator oracle = semigroup_step(ou.sum, ou.t, ou.x);
  std::vector<double> max_steps, errs;
  for (int level = 1; level <= 4; ++level) {
    const double h = ou.t / std::pow(2.0, level);
    // irregular grid: one double-weight interval at the front
    std::vector<double> pts{0.0, h};
    while (pts.back() + h / 2.0 < ou.t - 1e-12) pts.push_back(pts.back() + h / 2.0);
    pts.push_back(ou.t);
    const Partition part{pts};
    const DensityOperator y = time_dependent_trotter(
        Schedule::autonomous(ou.a, ou.t), Schedule::autonomous(ou.b, ou.t),
        part, ou.x);
    CMatrix d = y.mat;
    d -= oracle.mat;
    max_steps.push_back(h);
    errs.push_back(trace_norm(d));
  }
  const ConvergenceReport rep = fit_order_steps(max_steps, errs, 1e-13);
  REQUIRE(rep.fit_ok);
  CHECK(rep.slope == doctest::Approx(-1.0).epsilon(0.3));
}

TEST_CASE("telescopic defect bound") {
  OuSplit ou;
  PropagatorCache oracle_cache(ou.sum);
  PropagatorCache a_cache(ou.a);
  PropagatorCache b_cache(ou.b);

  const StepMap oracle_map = [&](double s, double t, const CMatrix& y) {
    return oracle_cache.step(t - s).apply(y);
  };
  const StepMap trotter_map = [&](double s, double t, const CMatrix& y) {
    return a_cache.step(t - s).apply(b_cache.step(t - s).apply(y));
  };

  // F = T: all defects vanish
  const TelescopicReport same = telescopic_defect(
      oracle_map, oracle_map, Partition::uniform(0.0, ou.t, 5), ou.x.mat);
  CHECK(same.max_defect < 1e-15);
  CHECK(same.product_error < 1e-15);

  // single interval: bound = defect = error
  const TelescopicReport single = telescopic_defect(
      trotter_map, oracle_map, Partition::uniform(0.0, ou.t, 1), ou.x.mat);
  CHECK(single.defects.size() == 1);
  CHECK(single.bound == doctest::Approx(single.defects[0]));
  CHECK(single.product_error == doctest::Approx(single.defects[0]).epsilon(1e-10));

  // the lemma: true error <= n * max defect on every tested n
  for (std::size_t n : {2, 4, 8, 16}) {
    const TelescopicReport rep = telescopic_defect(
        trotter_map, oracle_map, Partition::uniform(0.0, ou.t, n), ou.x.mat);
    CHECK(rep.product_error <= rep.bound + 1e-12);
  }
}
