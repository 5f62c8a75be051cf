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
#include "fockbench/propagators.hpp"

using namespace fockbench;

namespace {

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  CMatrix d = a;
  d -= b;
  return d.max_abs();
}

}  // namespace

TEST_CASE("semigroup step at t = 0 is the identity") {
  FockBasis basis({4});
  const Liouvillian l = dissipator(annihilation(basis, 0));
  const DensityOperator x = DensityOperator::fock_state(basis, {2});
  const DensityOperator y = semigroup_step(l, 0.0, x);
  CHECK(max_abs_diff(y.mat, x.mat) == 0.0);
}

TEST_CASE("photon loss decays the occupation as e^{-t}") {
  FockBasis basis({2});
  const Liouvillian l = dissipator(annihilation(basis, 0));
  const DensityOperator x = DensityOperator::fock_state(basis, {1});
  for (double t : {0.1, 0.5, 2.0}) {
    const DensityOperator y = semigroup_step(l, t, x);
    CHECK(y.mat(1, 1).real() == doctest::Approx(std::exp(-t)).epsilon(1e-12));
    CHECK(y.mat(0, 0).real() ==
          doctest::Approx(1.0 - std::exp(-t)).epsilon(1e-12));
    CHECK(std::abs(y.mat.trace() - cplx(1.0)) < 1e-13);
  }
}

TEST_CASE("commutator evolution rotates the coherence phase") {
  FockBasis basis({3});
  const Liouvillian l = commutator_generator(number_operator(basis, 0));
  CMatrix unit(3, 3);
  unit(0, 1) = 1.0;
  const double t = 0.7;
  const CMatrix y = semigroup_step_matrix(l, t, unit);
  CHECK(std::abs(y(0, 1) - std::exp(cplx(0.0, t))) < 1e-13);
}

TEST_CASE("unitary fast path matches the flattened exponential") {
  FockBasis basis({5});
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix hm(5, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) hm(i, j) = cplx(g(rng), g(rng));
  const Liouvillian l =
      commutator_generator(HilbertOperator{basis, hermitian_part(hm)});
  const DensityOperator x = DensityOperator::maximally_mixed(basis);

  StepOptions fast, slow;
  slow.use_unitary_fast_path = false;
  const CMatrix a = semigroup_step_matrix(l, 0.9, x.mat, fast);
  const CMatrix b = semigroup_step_matrix(l, 0.9, x.mat, slow);
  CHECK(max_abs_diff(a, b) < 1e-12);
}

TEST_CASE("action-form stepping matches the dense exponential") {
  FockBasis basis({6});
  const Liouvillian l = gksl(basis, number_operator(basis, 0),
                             {annihilation(basis, 0)});
  const DensityOperator x = DensityOperator::fock_state(basis, {3});

  StepOptions dense;
  StepOptions action;
  action.dense_limit = 2;  // force the action path
  const CMatrix a = semigroup_step_matrix(l, 0.8, x.mat, dense);
  const CMatrix b = semigroup_step_matrix(l, 0.8, x.mat, action);
  CHECK(max_abs_diff(a, b) < 1e-10);
}

TEST_CASE("negative time needs a reversible generator") {
  FockBasis basis({3});
  const Liouvillian diss = dissipator(annihilation(basis, 0));
  const DensityOperator x = DensityOperator::fock_state(basis, {1});
  CHECK_THROWS_AS((void)semigroup_step(diss, -0.5, x), std::invalid_argument);
  StepOptions forced;
  forced.allow_negative_dissipative = true;
  CHECK_NOTHROW((void)semigroup_step(diss, -0.5, x, forced));

  const Liouvillian comm = commutator_generator(number_operator(basis, 0));
  const DensityOperator y = semigroup_step(comm, -0.5, x);
  CHECK(max_abs_diff(semigroup_step(comm, 0.5, y).mat, x.mat) < 1e-13);
}

TEST_CASE("propagator cache returns bit-identical steps") {
  FockBasis basis({4});
  const Liouvillian l = dissipator(annihilation(basis, 0));
  PropagatorCache cache(l);
  const DensityOperator x = DensityOperator::fock_state(basis, {2});

  const CMatrix via_cache = cache.step(0.3).apply(x.mat);
  const CMatrix via_cache2 = cache.step(0.3).apply(x.mat);
  const CMatrix fresh = prepare_step(l, 0.3).apply(x.mat);
  CHECK(via_cache == via_cache2);
  CHECK(via_cache == fresh);
}

TEST_CASE("trace norm is contractive along GKSL evolution") {
  FockBasis basis({5});
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix hm(5, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) hm(i, j) = cplx(g(rng), g(rng));
  const Liouvillian l =
      gksl(basis, HilbertOperator{basis, hermitian_part(hm)},
           {annihilation(basis, 0)});
  DensityOperator x = DensityOperator::fock_state(basis, {3});
  double prev = trace_norm(x);
  for (int i = 0; i < 5; ++i) {
    x = semigroup_step(l, 0.4, x);
    const double cur = trace_norm(x);
    CHECK(cur <= prev + 1e-9);
    prev = cur;
  }
}

TEST_CASE("constant schedule reproduces the semigroup step") {
  FockBasis basis({4});
  const Liouvillian l = gksl(basis, number_operator(basis, 0),
                             {annihilation(basis, 0)});
  const Schedule s = Schedule::autonomous(l, 2.0);
  const DensityOperator x = DensityOperator::fock_state(basis, {2});
  const double tol = 1e-9;
  const DensityOperator a = reference_evolution(s, 0.0, 1.3, x, tol);
  const DensityOperator b = semigroup_step(l, 1.3, x);
  CMatrix d = a.mat;
  d -= b.mat;
  CHECK(trace_norm(d) < 2.0 * tol);
}

TEST_CASE("zero generator evolves trivially") {
  FockBasis basis({3});
  const Schedule s = Schedule::autonomous(zero_liouvillian(basis), 1.0);
  const DensityOperator x = DensityOperator::fock_state(basis, {1});
  const DensityOperator y = reference_evolution(s, 0.0, 1.0, x, 1e-10);
  CHECK(max_abs_diff(y.mat, x.mat) < 1e-12);
}

TEST_CASE("cos-modulated number schedule integrates the phase") {
  FockBasis basis({3});
  const CMatrix n = number_operator(basis, 0).mat;
  const Schedule s(basis, 3.0,
                   {{n, [](double t) { return cplx(std::cos(t)); }}});
  CMatrix x(3, 3);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  const double t = 1.9, tol = 1e-11;
  const CMatrix y = reference_evolution_matrix(s, 0.0, t, x, tol);
  // phase of |0><1| is exp(i integral cos) = exp(i sin t)
  CHECK(std::abs(y(0, 1) - std::exp(cplx(0.0, std::sin(t)))) < 100 * tol);
}

TEST_CASE("evolution system satisfies the cocycle identity") {
  FockBasis basis({3});
  const CMatrix n = number_operator(basis, 0).mat;
  const CMatrix a = annihilation(basis, 0).mat;
  Schedule s(basis, 2.0,
             {{n, [](double t) { return cplx(std::cos(t)); }},
              {a + a.adjoint(), [](double t) { return cplx(0.3 * t); }}});
  const DensityOperator x = DensityOperator::fock_state(basis, {1});
  const double tol = 1e-11;

  // U(t, t) = identity
  const DensityOperator idstep = evolution_system_step(s, 0.7, 0.7, x, tol);
  CHECK(max_abs_diff(idstep.mat, x.mat) == 0.0);

  // U(t, r) U(r, s0) = U(t, s0)
  const DensityOperator ur = evolution_system_step(s, 0.9, 0.2, x, tol);
  const DensityOperator utr = evolution_system_step(s, 1.6, 0.9, ur, tol);
  const DensityOperator direct = evolution_system_step(s, 1.6, 0.2, x, tol);
  CMatrix d = utr.mat;
  d -= direct.mat;
  CHECK(trace_norm(d) < 4.0 * tol);
}

TEST_CASE("oracle self-consistency under tolerance refinement") {
  FockBasis basis({4});
  const CMatrix n = number_operator(basis, 0).mat;
  const CMatrix a = annihilation(basis, 0).mat;
  Schedule s(basis, 1.0,
             {{n, [](double t) { return cplx(std::sin(3.0 * t)); }},
              {a + a.adjoint(), [](double t) { return cplx(std::cos(t)); }}});
  const DensityOperator x = DensityOperator::fock_state(basis, {2});
  const double tol = 1e-8;
  const DensityOperator y1 = reference_evolution(s, 0.0, 1.0, x, tol);
  const DensityOperator y2 = reference_evolution(s, 0.0, 1.0, x, tol / 10.0);
  CMatrix d = y1.mat;
  d -= y2.mat;
  CHECK(trace_norm(d) <= 12.0 * tol);
}

TEST_CASE("reference evolution rejects bad tolerances and times") {
  FockBasis basis({3});
  const Schedule s = Schedule::autonomous(zero_liouvillian(basis), 1.0);
  const DensityOperator x = DensityOperator::fock_state(basis, {0});
  CHECK_THROWS_AS((void)reference_evolution(s, 0.0, 0.5, x, 1e-14),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)reference_evolution(s, 0.5, 0.2, x, 1e-10),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)reference_evolution(s, 0.0, 7.0, x, 1e-10),
                  std::invalid_argument);
}

TEST_CASE("schedule validation") {
  FockBasis basis({3});
  const CMatrix n = number_operator(basis, 0).mat;
  // non-finite coefficient
  CHECK_THROWS_AS(Schedule(basis, 1.0,
                           {{n, [](double t) {
                               return cplx(1.0 / (t - 0.5));
                             }}}),
                  std::invalid_argument);
  // non-Hermitian assembled Hamiltonian
  const CMatrix a = annihilation(basis, 0).mat;
  CHECK_THROWS_AS(Schedule(basis, 1.0, {{a, [](double) { return cplx(1.0); }}}),
                  std::invalid_argument);
}
