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

#include "fockbench/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace fockbench {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

cplx parse_complex(const json& j, const char* what) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx(j[0].get<double>(), j[1].get<double>());
  fail(std::string(what) + ": expected a number or [re, im] pair");
}

// {"kind": "const"|"cos"|"sin"|"linear", "scale": s, "freq": w, "phase": p}
std::function<cplx(double)> parse_time_coeff(const json& j) {
  const std::string kind = j.value("kind", "const");
  const double scale = j.value("scale", 1.0);
  const double freq = j.value("freq", 1.0);
  const double phase = j.value("phase", 0.0);
  if (kind == "const") return [scale](double) { return cplx(scale); };
  if (kind == "cos")
    return [scale, freq, phase](double t) {
      return cplx(scale * std::cos(freq * t + phase));
    };
  if (kind == "sin")
    return [scale, freq, phase](double t) {
      return cplx(scale * std::sin(freq * t + phase));
    };
  if (kind == "linear")
    return [scale, phase](double t) { return cplx(scale * t + phase); };
  fail("time coefficient kind must be const|cos|sin|linear");
}

PolynomialSpec parse_poly(const json& j) {
  PolynomialSpec spec;
  if (j.contains("monomials")) {
    for (const json& m : j.at("monomials")) {
      Monomial mono;
      mono.mode = m.value("mode", 0);
      mono.k = m.value("k", 0u);
      mono.l = m.value("l", 0u);
      mono.coeff = m.contains("coeff") ? parse_complex(m["coeff"], "coeff")
                                       : cplx(1.0);
      if (m.contains("time")) mono.coeff_t = parse_time_coeff(m["time"]);
      spec.monomials.push_back(std::move(mono));
    }
  }
  if (j.contains("number")) {
    for (const json& m : j.at("number")) {
      NumberMonomial mono;
      mono.powers = m.at("powers").get<std::vector<unsigned>>();
      mono.coeff = m.value("coeff", 1.0);
      if (m.contains("time")) {
        auto f = parse_time_coeff(m["time"]);
        mono.coeff_t = [f](double t) { return f(t).real(); };
      }
      spec.number_poly.push_back(std::move(mono));
    }
  }
  return spec;
}

Liouvillian parse_generator(const json& j, const FockBasis& basis) {
  const std::string type = j.value("type", "");
  if (type == "zero") return zero_liouvillian(basis);
  if (type == "ou")
    return ou_generator(basis, j.value("lambda", 0.0), j.value("mu", 0.0),
                        j.value("mode", 0));
  if (type == "l-photon")
    return l_photon_dissipation(basis, j.value("l", 1u),
                                parse_complex(j.at("alpha"), "alpha"),
                                j.value("mode", 0));
  if (type == "commutator")
    return commutator_generator(
        build_hamiltonian(parse_poly(j.at("hamiltonian")), basis));
  if (type == "gksl") {
    std::optional<HilbertOperator> h;
    if (j.contains("hamiltonian"))
      h = build_hamiltonian(parse_poly(j["hamiltonian"]), basis);
    std::vector<HilbertOperator> jumps;
    for (const json& jj : j.value("jumps", json::array()))
      jumps.push_back(build_operator(parse_poly(jj), basis));
    return gksl(basis, std::move(h), std::move(jumps));
  }
  fail("generator type must be zero|ou|l-photon|commutator|gksl");
}

DensityOperator parse_initial_state(const json& j, const FockBasis& basis) {
  const std::string kind = j.value("kind", "");
  if (kind == "fock")
    return DensityOperator::fock_state(
        basis, j.at("occupations").get<std::vector<std::size_t>>());
  if (kind == "coherent") {
    std::vector<cplx> alpha;
    for (const json& a : j.at("alpha"))
      alpha.push_back(parse_complex(a, "alpha"));
    return DensityOperator::from_ket(coherent_state(basis, alpha).ket);
  }
  if (kind == "cat") {
    const std::string par = j.value("parity", "plus");
    return DensityOperator::from_ket(
        cat_state(basis, parse_complex(j.at("alpha"), "alpha"),
                  par == "minus" ? CatParity::minus : CatParity::plus,
                  j.value("mode", 0))
            .ket);
  }
  if (kind == "maximally-mixed")
    return DensityOperator::maximally_mixed(basis);
  fail("initial_state kind must be fock|coherent|cat|maximally-mixed");
}

SplittingScheme parse_scheme(const json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "trotter") return SplittingScheme::trotter();
    if (name == "strang") return SplittingScheme::strang();
    fail("scheme must be trotter|strang|{\"suzuki\": order}");
  }
  if (j.is_object() && j.contains("suzuki"))
    return SplittingScheme::suzuki(j["suzuki"].get<int>());
  fail("scheme must be trotter|strang|{\"suzuki\": order}");
}

bool is_sweep_kind(const std::string& kind) {
  return kind == "trotter-sweep" || kind == "suzuki-sweep" ||
         kind == "time-dep-trotter" || kind == "zeno-sweep" ||
         kind == "general-zeno";
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = unsigned(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += threads) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

json diag_json(const DriftDiagnostics& d) {
  return json{{"trace_drift", d.trace_drift},
              {"min_eigenvalue", d.min_eigenvalue},
              {"top_level_mass", d.top_level_mass}};
}

double trace_dist(const CMatrix& a, const CMatrix& b) {
  CMatrix d = a;
  d -= b;
  return trace_norm(d);
}

// ---------------------------------------------------------------------------
// sweep runners
// ---------------------------------------------------------------------------

// Split-generator sweeps (trotter-sweep / suzuki-sweep) with the telescopic
// defect diagnostic at every grid point.
void run_split_sweep(const ExperimentConfig& cfg, const FockBasis& basis,
                     unsigned threads, ExperimentResult& out) {
  const Liouvillian a = parse_generator(cfg.model.at("a"), basis);
  const Liouvillian b = parse_generator(cfg.model.at("b"), basis);
  const Liouvillian sum = a + b;
  const DensityOperator x0 = parse_initial_state(cfg.initial_state, basis);
  SplittingScheme scheme = cfg.kind == "trotter-sweep"
                               ? SplittingScheme::trotter()
                               : parse_scheme(cfg.scheme);
  scheme.validate();

  const DensityOperator oracle = semigroup_step(sum, cfg.time, x0);

  out.rows.resize(cfg.n_grid.size());
  std::vector<json> tele(cfg.n_grid.size());
  parallel_for(cfg.n_grid.size(), threads, [&](std::size_t idx) {
    const std::size_t n = cfg.n_grid[idx];
    const double start = now_ms();

    // One prepared factor per distinct stage; the sweep row and the
    // telescopic diagnostic share them.
    std::map<std::pair<int, double>, PreparedStep> stage_steps;
    for (const Stage& s : scheme.stages) {
      const auto key = std::make_pair(s.tag == GenTag::A ? 0 : 1, s.coeff);
      if (!stage_steps.count(key))
        stage_steps.emplace(key,
                            prepare_step(s.tag == GenTag::A ? a : b,
                                         s.coeff * cfg.time / double(n)));
    }
    const auto apply_stages = [&](CMatrix z) {
      for (auto it = scheme.stages.rbegin(); it != scheme.stages.rend(); ++it)
        z = stage_steps
                .at(std::make_pair(it->tag == GenTag::A ? 0 : 1, it->coeff))
                .apply(std::move(z));
      return z;
    };

    CMatrix ym = x0.mat;
    for (std::size_t rep = 0; rep < n; ++rep) ym = apply_stages(std::move(ym));
    const DensityOperator y(basis, hermitian_part(std::move(ym)));
    SweepRow row;
    row.n = n;
    row.error = trace_dist(y.mat, oracle.mat);
    row.diagnostics = drift_diagnostics(y);
    row.wall_ms = now_ms() - start;
    out.rows[idx] = std::move(row);

    // per-interval telescopic defects against the exact semigroup factor
    const PreparedStep oracle_step = prepare_step(sum, cfg.time / double(n));
    const StepMap f = [&](double, double, const CMatrix& y0) {
      return apply_stages(y0);
    };
    const StepMap t = [&](double, double, const CMatrix& y0) {
      return oracle_step.apply(y0);
    };
    const TelescopicReport rep =
        telescopic_defect(f, t, Partition::uniform(0.0, cfg.time, n), x0.mat);
    tele[idx] = json{{"n", n},
                     {"max_defect", rep.max_defect},
                     {"bound", rep.bound},
                     {"product_error", rep.product_error},
                     {"holds", rep.product_error <= rep.bound + 1e-12}};
  });
  out.extra["telescopic"] = tele;
  out.extra["order_claim"] = scheme.order_claim;
}

void run_time_dep_sweep(const ExperimentConfig& cfg, const FockBasis& basis,
                        unsigned threads, ExperimentResult& out) {
  const PolynomialSpec uspec = parse_poly(cfg.model.at("u").at("hamiltonian"));
  const PolynomialSpec vspec = parse_poly(cfg.model.at("v").at("hamiltonian"));
  const double horizon = cfg.time * (1.0 + 1e-9) + 1e-12;
  const Schedule u = schedule_from_spec(uspec, basis, horizon);
  const Schedule v = schedule_from_spec(vspec, basis, horizon);
  PolynomialSpec sum_spec = uspec;
  sum_spec.monomials.insert(sum_spec.monomials.end(), vspec.monomials.begin(),
                            vspec.monomials.end());
  sum_spec.number_poly.insert(sum_spec.number_poly.end(),
                              vspec.number_poly.begin(),
                              vspec.number_poly.end());
  const Schedule sum = schedule_from_spec(sum_spec, basis, horizon);
  const DensityOperator x0 = parse_initial_state(cfg.initial_state, basis);

  const DensityOperator oracle =
      reference_evolution(sum, 0.0, cfg.time, x0, cfg.oracle_tol);

  out.rows.resize(cfg.n_grid.size());
  std::vector<json> tele(cfg.n_grid.size());
  parallel_for(cfg.n_grid.size(), threads, [&](std::size_t idx) {
    const std::size_t n = cfg.n_grid[idx];
    const Partition part = Partition::uniform(0.0, cfg.time, n);
    const double start = now_ms();
    const DensityOperator y =
        time_dependent_trotter(u, v, part, x0, cfg.oracle_tol);
    SweepRow row;
    row.n = n;
    row.error = trace_dist(y.mat, oracle.mat);
    row.diagnostics = drift_diagnostics(y);
    row.wall_ms = now_ms() - start;
    out.rows[idx] = std::move(row);

    const StepMap f = [&](double s0, double s1, const CMatrix& y0) {
      return evolution_system_step_matrix(
          u, s1, s0,
          evolution_system_step_matrix(v, s1, s0, y0, cfg.oracle_tol),
          cfg.oracle_tol);
    };
    const StepMap t = [&](double s0, double s1, const CMatrix& y0) {
      return evolution_system_step_matrix(sum, s1, s0, y0, cfg.oracle_tol);
    };
    const TelescopicReport rep = telescopic_defect(f, t, part, x0.mat);
    tele[idx] = json{{"n", n},
                     {"max_defect", rep.max_defect},
                     {"bound", rep.bound},
                     {"product_error", rep.product_error},
                     {"holds", rep.product_error <= rep.bound + 1e-12}};
  });
  out.extra["telescopic"] = tele;
  out.extra["order_claim"] = 1;
}

void run_zeno_sweep(const ExperimentConfig& cfg, const FockBasis& basis,
                    unsigned threads, ExperimentResult& out) {
  const cplx alpha = parse_complex(cfg.model.at("alpha"), "alpha");
  const HilbertOperator p = cat_projector(basis, alpha);
  const ProjectorSuperOp ps = projector_superop(p);

  HilbertOperator drive{
      basis, annihilation(basis, 0).mat + creation(basis, 0).mat};
  if (cfg.model.contains("drive"))
    drive = build_hamiltonian(parse_poly(cfg.model["drive"]), basis);
  const Liouvillian l = commutator_generator(drive);
  const DensityOperator x0 = parse_initial_state(cfg.initial_state, basis);

  // compressed-generator oracle e^{t PLP} P x
  const Liouvillian compressed =
      commutator_generator(HilbertOperator{basis, p.mat * drive.mat * p.mat});
  const CMatrix oracle =
      semigroup_step_matrix(compressed, cfg.time, ps.apply(x0.mat));

  out.rows.resize(cfg.n_grid.size());
  parallel_for(cfg.n_grid.size(), threads, [&](std::size_t idx) {
    const std::size_t n = cfg.n_grid[idx];
    const double start = now_ms();
    const DensityOperator y = zeno_product(ps, l, cfg.time, n, x0);
    SweepRow row;
    row.n = n;
    row.error = trace_dist(y.mat, oracle);
    row.diagnostics = drift_diagnostics(y);
    row.wall_ms = now_ms() - start;
    out.rows[idx] = std::move(row);
  });

  const ZenoGateTarget gate = zeno_gate_target(basis, alpha, cfg.time);
  out.extra["gate"] = {
      {"discrepancy", gate.discrepancy},
      {"idealization_scale", std::exp(-2.0 * std::norm(alpha))}};
}

void run_general_zeno(const ExperimentConfig& cfg, const FockBasis& basis,
                      unsigned threads, ExperimentResult& out) {
  const json& m = cfg.model;
  const double delta = m.at("delta").get<double>();
  HilbertOperator p{basis, CMatrix(basis.total_dim(), basis.total_dim())};
  const json& pj = m.at("projector");
  if (pj.value("kind", "") == "fock-levels") {
    const std::size_t levels = pj.at("levels").get<std::size_t>();
    if (levels == 0 || levels >= basis.total_dim())
      fail("projector levels must lie strictly inside the basis");
    for (std::size_t i = 0; i < levels; ++i) p.mat(i, i) = 1.0;
  } else if (pj.value("kind", "") == "cat") {
    p = cat_projector(basis, parse_complex(pj.at("alpha"), "alpha"));
  } else {
    fail("projector kind must be fock-levels|cat");
  }

  const int n_check = m.value("n_check", 10);
  const SuperOperatorMatrix mixer = haar_complement_mixer(p, cfg.seed);
  const ZenoSpec z = make_uniform_power_contraction(p, delta, mixer, n_check);
  const ProjectorSuperOp ps = projector_superop(p);
  const ZenoSpec zp{ps.flattened(), ps, 0.0};  // the M -> P reference run

  const HilbertOperator h =
      build_hamiltonian(parse_poly(m.at("hamiltonian")), basis);
  const Liouvillian gen = commutator_generator(h);
  const Schedule v =
      Schedule::autonomous(gen, cfg.time * (1.0 + 1e-9) + 1e-12);
  const DensityOperator x0 = parse_initial_state(cfg.initial_state, basis);
  const double x0_trace_norm = trace_norm(x0);

  // measured uniform power convergence |M^n - P| / delta^n
  const CMatrix pflat = ps.flattened().mat;
  std::vector<json> ratios;
  CMatrix mn = CMatrix::identity(pflat.rows());
  for (int k = 1; k <= n_check; ++k) {
    mn = z.m.mat * mn;
    CMatrix diff = mn;
    diff -= pflat;
    const double nrm = flattened_operator_norm_22({basis.total_dim(), diff});
    ratios.push_back(json{{"n", k},
                          {"norm", nrm},
                          {"delta_pow", std::pow(delta, k)},
                          {"ratio", nrm / std::pow(delta, k)}});
  }
  out.extra["power_ratios"] = ratios;

  // compressed oracle T(t,0) P x (pure commutator compression)
  const Liouvillian compressed =
      commutator_generator(HilbertOperator{basis, p.mat * h.mat * p.mat});
  const CMatrix oracle =
      semigroup_step_matrix(compressed, cfg.time, ps.apply(x0.mat));

  out.rows.resize(cfg.n_grid.size());
  std::vector<json> diffs(cfg.n_grid.size());
  parallel_for(cfg.n_grid.size(), threads, [&](std::size_t idx) {
    const std::size_t n = cfg.n_grid[idx];
    const Partition part = Partition::uniform(0.0, cfg.time, n);
    const double start = now_ms();
    const CMatrix ym = zeno_product_general(z, v, part, x0.mat, cfg.oracle_tol);
    const CMatrix yp =
        zeno_product_general(zp, v, part, x0.mat, cfg.oracle_tol);
    SweepRow row;
    row.n = n;
    row.error = trace_dist(ym, oracle);
    row.diagnostics =
        drift_diagnostics(DensityOperator(basis, hermitian_part(ym)));
    row.wall_ms = now_ms() - start;
    out.rows[idx] = std::move(row);

    CMatrix d = ym;
    d -= yp;
    const double hs = d.frobenius_norm();
    const double bound = std::pow(delta, n) * x0_trace_norm + 1e-10;
    diffs[idx] = json{{"n", n},
                      {"difference_hs", hs},
                      {"bound", bound},
                      {"holds", hs <= bound}};
  });
  out.extra["m_vs_p_difference"] = diffs;
  out.extra["delta"] = delta;
}

void run_gate_fidelity(const ExperimentConfig& cfg, const FockBasis& basis,
                       unsigned threads, ExperimentResult& out) {
  const cplx alpha = parse_complex(cfg.model.at("alpha"), "alpha");
  const ZenoGateTarget gate = zeno_gate_target(basis, alpha, cfg.time);
  const ProjectorSuperOp ps = projector_superop(gate.projector);
  const Liouvillian l = commutator_generator(HilbertOperator{
      basis, annihilation(basis, 0).mat + creation(basis, 0).mat});
  const DensityOperator x0 = parse_initial_state(cfg.initial_state, basis);

  const CMatrix target_c = gate.apply_compressed(x0.mat);
  const CMatrix target_i = gate.apply_ideal(x0.mat);

  out.rows.resize(cfg.n_grid.size());
  std::vector<json> vs_ideal(cfg.n_grid.size());
  parallel_for(cfg.n_grid.size(), threads, [&](std::size_t idx) {
    const std::size_t n = cfg.n_grid[idx];
    const double start = now_ms();
    const DensityOperator y = zeno_product(ps, l, cfg.time, n, x0);
    SweepRow row;
    row.n = n;
    row.error = trace_dist(y.mat, target_c);
    row.diagnostics = drift_diagnostics(y);
    row.wall_ms = now_ms() - start;
    out.rows[idx] = std::move(row);
    vs_ideal[idx] = json{{"n", n}, {"error", trace_dist(y.mat, target_i)}};
  });

  const Ket plus = cat_state(basis, alpha, CatParity::plus).ket;
  const Ket minus = cat_state(basis, alpha, CatParity::minus).ket;
  const cplx elem = inner(minus.amps, matvec(gate.h_compressed, plus.amps));
  out.extra["gate"] = {
      {"discrepancy", gate.discrepancy},
      {"idealization_scale", std::exp(-2.0 * std::norm(alpha))},
      {"code_matrix_element", {elem.real(), elem.imag()}},
      {"code_matrix_element_target", 2.0 * alpha.real()}};
  out.extra["error_vs_ideal_target"] = vs_ideal;
}

void run_diagnostics(const ExperimentConfig& cfg, const FockBasis& basis,
                     ExperimentResult& out) {
  const json& m = cfg.model;
  const Liouvillian gen = parse_generator(m.at("generator"), basis);
  const std::vector<std::string> checks =
      m.at("checks").get<std::vector<std::string>>();
  const std::size_t d = basis.total_dim();

  for (const std::string& check : checks) {
    if (check == "moment-stability" || check == "moment-drift") {
      const double k = m.value("sobolev_k", 2.0);
      const std::vector<std::size_t> margin = gen.degree_margin();
      std::size_t deg = 0;
      for (std::size_t s : margin) deg = std::max(deg, s);
      std::vector<DensityOperator> states;
      for (std::size_t i = 0; i + deg + 1 < d; ++i) {
        CMatrix unit(d, d);
        unit(i, i) = 1.0;
        states.push_back(DensityOperator(basis, unit));
      }
      if (check == "moment-stability") {
        const SobolevWeight w(basis, std::vector<double>(basis.modes(), k));
        const MomentStabilityResult res =
            moment_stability_check(gen, w, states);
        json margins = json::array();
        for (std::size_t i = 0; i < res.margins.size(); ++i)
          margins.push_back(json{{"level", i}, {"margin", res.margins[i]}});
        out.extra["moment_stability"] = {{"omega", res.omega},
                                         {"margins", margins}};
      } else {
        const unsigned pl = m.value("photon_l", 2u);
        const DriftInequalityResult res = moment_drift_check(gen, k, pl, states);
        json drifts = json::array();
        for (std::size_t i = 0; i < res.drifts.size(); ++i)
          drifts.push_back(json{{"level", i}, {"drift", res.drifts[i]}});
        out.extra["moment_drift"] = {{"c", res.c},
                                     {"argmax_level", res.argmax},
                                     {"drifts", drifts}};
        for (std::size_t i = 0; i < res.drifts.size(); ++i)
          out.rows.push_back({i, res.drifts[i], DriftDiagnostics{}, 0.0});
      }
    } else if (check == "relative-bound") {
      const double k = m.value("sobolev_k", 4.0);
      const SobolevWeight w(basis, std::vector<double>(basis.modes(), k));
      const RelativeBoundEstimate est =
          relative_bound_diagnostic(gen, w, m.value("samples", 16), cfg.seed);
      out.extra["relative_bound"] = {{"b", est.b},
                                     {"samples", est.samples},
                                     {"description", est.description}};
    } else if (check == "stationary") {
      const SuperOperatorMatrix s = flatten(gen);
      const CVector start = vec(DensityOperator::maximally_mixed(basis).mat);
      CMatrix rho =
          hermitian_part(unvec(linalg::null_vector(s.mat, start), d, d));
      rho *= cplx(1.0 / rho.trace().real());
      out.extra["stationary"] = {
          {"residual_trace_norm", trace_norm(gen.apply(rho))},
          {"diagnostics",
           diag_json(drift_diagnostics(DensityOperator(basis, rho)))}};
    } else if (check == "code-convergence") {
      if (gen.jumps().size() != 1)
        fail("code-convergence expects a single-jump generator");
      const CMatrix& jump = gen.jumps()[0].mat;
      const CMatrix jadj = jump.adjoint();
      const int samples = m.value("samples", 21);
      if (samples < 3 || cfg.time <= 0.0)
        fail("code-convergence needs time > 0 and at least 3 samples");
      const double dt = cfg.time / double(samples - 1);
      const PreparedStep step = prepare_step(gen, dt);
      DensityOperator rho = parse_initial_state(cfg.initial_state, basis);
      std::vector<double> ts, vals;
      json series = json::array();
      for (int i = 0; i < samples; ++i) {
        const double val = (jump * rho.mat * jadj).trace().real();
        ts.push_back(dt * double(i));
        vals.push_back(val);
        series.push_back(json{{"t", ts.back()}, {"value", val}});
        if (i + 1 < samples)
          rho = DensityOperator(basis, hermitian_part(step.apply(rho.mat)));
      }
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < ts.size(); ++i) {
        sx += ts[i];
        sy += std::log(vals[i]);
        sxx += ts[i] * ts[i];
        sxy += ts[i] * std::log(vals[i]);
      }
      const double nn = double(ts.size());
      const double rate = -(nn * sxy - sx * sy) / (nn * sxx - sx * sx);
      out.extra["code_convergence"] = {{"fitted_rate", rate},
                                       {"series", series}};
      out.extra["final_state_diagnostics"] = diag_json(drift_diagnostics(rho));
    } else {
      fail("unknown diagnostics check: " + check);
    }
  }
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) fail("config must be a JSON object");
  ExperimentConfig cfg;
  cfg.kind = j.value("kind", "");
  const bool sweep = is_sweep_kind(cfg.kind);
  const bool needs_grid = sweep || cfg.kind == "gate-fidelity";
  if (!sweep && cfg.kind != "gate-fidelity" && cfg.kind != "diagnostics")
    fail(
        "kind must be trotter-sweep|suzuki-sweep|time-dep-trotter|"
        "zeno-sweep|general-zeno|gate-fidelity|diagnostics");

  if (!j.contains("basis") || !j["basis"].contains("cutoffs"))
    fail("basis.cutoffs is required");
  cfg.cutoffs = j["basis"]["cutoffs"].get<std::vector<std::size_t>>();
  for (std::size_t c : cfg.cutoffs)
    if (c < 2) fail("basis cutoffs must be >= 2");

  cfg.time = j.value("time", 0.0);
  if (cfg.time < 0.0 || !std::isfinite(cfg.time))
    fail("time must be a finite nonnegative number");

  if (needs_grid) {
    if (!j.contains("n_grid")) fail("n_grid is required for sweep kinds");
    cfg.n_grid = j["n_grid"].get<std::vector<std::size_t>>();
    if (cfg.n_grid.size() < 3)
      fail("n_grid must contain at least 3 entries for order fitting");
    for (std::size_t i = 0; i + 1 < cfg.n_grid.size(); ++i)
      if (cfg.n_grid[i] >= cfg.n_grid[i + 1])
        fail("n_grid must be strictly increasing");
    if (cfg.n_grid.front() == 0) fail("n_grid entries must be positive");
  }

  cfg.oracle_tol = j.value("oracle_tol", 1e-11);
  if (cfg.oracle_tol < 1e-13) fail("oracle_tol must be at least 1e-13");
  cfg.seed = j.value("seed", 1u);
  cfg.scheme = j.value("scheme", json("trotter"));
  if (cfg.kind == "suzuki-sweep") (void)parse_scheme(cfg.scheme);
  cfg.model = j.value("model", json::object());
  cfg.initial_state = j.value("initial_state", json::object());
  if (needs_grid && cfg.initial_state.empty())
    fail("initial_state is required for sweep kinds");

  cfg.resolved = j;
  cfg.resolved["oracle_tol"] = cfg.oracle_tol;
  cfg.resolved["seed"] = cfg.seed;
  return cfg;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads) {
  ExperimentResult out;
  out.config = cfg;
  const FockBasis basis(cfg.cutoffs);

  if (cfg.kind == "trotter-sweep" || cfg.kind == "suzuki-sweep")
    run_split_sweep(cfg, basis, threads, out);
  else if (cfg.kind == "time-dep-trotter")
    run_time_dep_sweep(cfg, basis, threads, out);
  else if (cfg.kind == "zeno-sweep")
    run_zeno_sweep(cfg, basis, threads, out);
  else if (cfg.kind == "general-zeno")
    run_general_zeno(cfg, basis, threads, out);
  else if (cfg.kind == "gate-fidelity")
    run_gate_fidelity(cfg, basis, threads, out);
  else if (cfg.kind == "diagnostics")
    run_diagnostics(cfg, basis, out);
  else
    fail("unknown experiment kind: " + cfg.kind);

  if (!out.rows.empty() && cfg.kind != "diagnostics") {
    std::vector<std::size_t> ns;
    std::vector<double> errs;
    for (const SweepRow& r : out.rows) {
      ns.push_back(r.n);
      errs.push_back(r.error);
    }
    out.report = fit_order(ns, errs, cfg.oracle_tol);
    for (const SweepRow& r : out.rows)
      out.report.diagnostics.push_back(r.diagnostics);
  }
  return out;
}

void write_csv(const ExperimentResult& res, std::ostream& os) {
  os << "n,error_trace_norm,trace_drift,min_eig,top_level_mass,wall_time_ms\n";
  char buf[256];
  for (const SweepRow& r : res.rows) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,%.3f\n", r.n,
                  r.error, r.diagnostics.trace_drift,
                  r.diagnostics.min_eigenvalue, r.diagnostics.top_level_mass,
                  r.wall_ms);
    os << buf;
  }
}

json summary_json(const ExperimentResult& res) {
  json fit;
  const ConvergenceReport& rep = res.report;
  fit["fit_ok"] = rep.fit_ok;
  if (rep.fit_ok) {
    fit["slope"] = rep.slope;
    fit["intercept"] = rep.intercept;
    fit["r2"] = rep.r2;
  }
  if (!rep.message.empty()) fit["message"] = rep.message;
  fit["oracle_tol"] = rep.oracle_tol;
  fit["saturated"] = rep.saturated;
  fit["exact"] = rep.exact;

  json rows = json::array();
  for (const SweepRow& r : res.rows)
    rows.push_back(json{{"n", r.n},
                        {"error_trace_norm", r.error},
                        {"diagnostics", diag_json(r.diagnostics)}});

  return json{{"kind", res.config.kind},
              {"config", res.config.resolved},
              {"report", fit},
              {"rows", rows},
              {"extra", res.extra},
              {"versions", json{{"fockbench", "1.0.0"},
                                {"kernels", kernels::active().name}}}};
}

namespace {

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> cat;
  const json fock1 = {{"kind", "fock"}, {"occupations", {1}}};
  const json ou_split = {
      {"a", {{"type", "ou"}, {"lambda", 1.0}, {"mu", 0.0}}},
      {"b", {{"type", "ou"}, {"lambda", 0.0}, {"mu", 0.5}}}};

  cat.push_back(
      {"trotter-ou",
       "first-order splitting of the quantum OU generator, slope -1; also "
       "exercises the telescopic bound (criteria 1 and 6)",
       json{{"kind", "trotter-sweep"},
            {"basis", {{"cutoffs", {30}}}},
            {"time", 0.5},
            {"n_grid", {4, 8, 16, 32, 64}},
            {"oracle_tol", 1e-11},
            {"seed", 1},
            {"model", ou_split},
            {"initial_state", fock1}}});

  cat.push_back(
      {"strang-ou",
       "symmetrized splitting of the same OU instance, slope -2 (criterion 2)",
       json{{"kind", "suzuki-sweep"},
            {"scheme", "strang"},
            {"basis", {{"cutoffs", {30}}}},
            {"time", 0.5},
            {"n_grid", {4, 8, 16, 32, 64}},
            {"oracle_tol", 1e-11},
            {"seed", 1},
            {"model", ou_split},
            {"initial_state", fock1}}});

  const json drive_poly = {
      {"monomials",
       {{{"mode", 0}, {"k", 1}, {"l", 0}, {"coeff", 1.0}},
        {{"mode", 0}, {"k", 0}, {"l", 1}, {"coeff", 1.0}}}}};
  const json number_poly = {{"number", {{{"powers", {1}}, {"coeff", 1.0}}}}};

  cat.push_back(
      {"suzuki4-reversible",
       "fourth-order scheme on two noncommuting commutator generators, "
       "slope -4 (criterion 3)",
       json{{"kind", "suzuki-sweep"},
            {"scheme", {{"suzuki", 4}}},
            {"basis", {{"cutoffs", {20}}}},
            {"time", 1.0},
            {"n_grid", {2, 3, 4, 6, 8}},
            {"oracle_tol", 1e-11},
            {"seed", 1},
            {"model",
             {{"a", {{"type", "commutator"}, {"hamiltonian", drive_poly}}},
              {"b", {{"type", "commutator"}, {"hamiltonian", number_poly}}}}},
            {"initial_state", fock1}}});

  json cosdrive = drive_poly;
  for (auto& mono : cosdrive["monomials"]) mono["time"] = {{"kind", "cos"}};
  json sinnum = number_poly;
  sinnum["number"][0]["time"] = {{"kind", "sin"}};
  cat.push_back(
      {"tdep-trotter",
       "time-dependent product of cos/sin modulated commutator schedules, "
       "slope -1 (criterion 4)",
       json{{"kind", "time-dep-trotter"},
            {"basis", {{"cutoffs", {16}}}},
            {"time", 1.0},
            {"n_grid", {4, 8, 16, 32, 64}},
            {"oracle_tol", 1e-11},
            {"seed", 1},
            {"model",
             {{"u", {{"hamiltonian", cosdrive}}},
              {"v", {{"hamiltonian", sinnum}}}}},
            {"initial_state", fock1}}});

  const json num0 = {{"number", {{{"powers", {1, 0}}, {"coeff", 1.0}}}}};
  const json num1 = {{"number", {{{"powers", {0, 1}}, {"coeff", 1.0}}}}};
  const json coherent2 = {{"kind", "coherent"},
                          {"alpha", {{0.3, 0.0}, {0.0, 0.2}}}};
  for (const char* scheme : {"trotter", "strang", "suzuki4"}) {
    const json scheme_json = std::string(scheme) == "suzuki4"
                                 ? json{{"suzuki", 4}}
                                 : json(scheme);
    cat.push_back(
        {std::string("commuting-exact-") + scheme,
         "number-operator generators on disjoint modes; every error sits at "
         "the rounding floor (criterion 5)",
         json{{"kind", "suzuki-sweep"},
              {"scheme", scheme_json},
              {"basis", {{"cutoffs", {8, 8}}}},
              {"time", 0.9},
              {"n_grid", {1, 2, 4, 8}},
              {"oracle_tol", 1e-11},
              {"seed", 1},
              {"model",
               {{"a", {{"type", "commutator"}, {"hamiltonian", num0}}},
                {"b", {{"type", "commutator"}, {"hamiltonian", num1}}}}},
              {"initial_state", coherent2}}});
  }
  cat.push_back(
      {"commuting-exact-tdep",
       "the commuting pair through the time-dependent product path "
       "(criterion 5)",
       json{{"kind", "time-dep-trotter"},
            {"basis", {{"cutoffs", {8, 8}}}},
            {"time", 0.9},
            {"n_grid", {1, 2, 4, 8}},
            {"oracle_tol", 1e-11},
            {"seed", 1},
            {"model",
             {{"u", {{"hamiltonian", num0}}}, {"v", {{"hamiltonian", num1}}}}},
            {"initial_state", coherent2}}});

  cat.push_back(
      {"zeno-cat",
       "projective Zeno gate on the CAT code space with drive a + a^+, "
       "slope -1 against the compressed-generator oracle (criterion 7)",
       json{{"kind", "zeno-sweep"},
            {"basis", {{"cutoffs", {40}}}},
            {"time", 0.5},
            {"n_grid", {4, 8, 16, 32, 64}},
            {"oracle_tol", 1e-11},
            {"seed", 1},
            {"model", {{"alpha", 2.0}}},
            {"initial_state",
             {{"kind", "cat"}, {"alpha", 2.0}, {"parity", "plus"}}}}});

  cat.push_back(
      {"general-zeno-uniform",
       "uniform-power contraction M = P + delta Q W Q with a Haar complement "
       "isometry; |M^n - P| = delta^n and the M-vs-P run difference obeys "
       "the delta^n bound (criterion 8)",
       json{{"kind", "general-zeno"},
            {"basis", {{"cutoffs", {12}}}},
            {"time", 0.5},
            {"n_grid", {4, 8, 12, 16, 20}},
            {"oracle_tol", 1e-11},
            {"seed", 7},
            {"model",
             {{"projector", {{"kind", "fock-levels"}, {"levels", 2}}},
              {"delta", 0.5},
              {"n_check", 20},
              {"hamiltonian",
               {{"number",
                 {{{"powers", {1}}, {"coeff", 1.0}},
                  {{"powers", {2}}, {"coeff", 0.3}}}}}}}},
            {"initial_state", {{"kind", "coherent"}, {"alpha", {0.6}}}}}});

  cat.push_back(
      {"general-zeno-slope",
       "general Zeno with a noncommuting drive: the delta^n + c/n error "
       "profile, fitted once the contraction floor is passed",
       json{{"kind", "general-zeno"},
            {"basis", {{"cutoffs", {16}}}},
            {"time", 0.5},
            {"n_grid", {16, 24, 32, 48, 64}},
            {"oracle_tol", 1e-11},
            {"seed", 11},
            {"model",
             {{"projector", {{"kind", "cat"}, {"alpha", 1.0}}},
              {"delta", 0.5},
              {"n_check", 10},
              {"hamiltonian", drive_poly}}},
            {"initial_state",
             {{"kind", "cat"}, {"alpha", 1.0}, {"parity", "plus"}}}}});

  cat.push_back(
      {"gate-discrepancy",
       "idealized vs compressed Zeno gate targets on the CAT code "
       "(supports criterion 7)",
       json{{"kind", "gate-fidelity"},
            {"basis", {{"cutoffs", {40}}}},
            {"time", 0.5},
            {"n_grid", {8, 16, 32}},
            {"oracle_tol", 1e-11},
            {"seed", 1},
            {"model", {{"alpha", 2.0}}},
            {"initial_state",
             {{"kind", "cat"}, {"alpha", 2.0}, {"parity", "plus"}}}}});

  cat.push_back(
      {"lphoton-convergence",
       "two-photon driven dissipation: the code observable decays at the "
       "l! rate (criterion 9)",
       json{{"kind", "diagnostics"},
            {"basis", {{"cutoffs", {40}}}},
            {"time", 2.0},
            {"seed", 1},
            {"model",
             {{"generator",
               {{"type", "l-photon"}, {"l", 2}, {"alpha", {2.0, 0.0}}}},
              {"checks", {"code-convergence"}},
              {"samples", 21}}},
            {"initial_state", {{"kind", "fock"}, {"occupations", {0}}}}}});

  cat.push_back(
      {"lphoton-moment",
       "moment drift inequality of the two-photon generator at k = 2 "
       "(criterion 10)",
       json{{"kind", "diagnostics"},
            {"basis", {{"cutoffs", {40}}}},
            {"time", 0.0},
            {"seed", 1},
            {"model",
             {{"generator",
               {{"type", "l-photon"}, {"l", 2}, {"alpha", {2.0, 0.0}}}},
              {"checks", {"moment-drift"}},
              {"sobolev_k", 2.0},
              {"photon_l", 2}}}}});

  cat.push_back(
      {"ou-diagnostics",
       "OU generator diagnostics: moment stability, relative bound, and the "
       "stationary state from the flattened null space",
       json{{"kind", "diagnostics"},
            {"basis", {{"cutoffs", {14}}}},
            {"time", 0.0},
            {"seed", 5},
            {"model",
             {{"generator", {{"type", "ou"}, {"lambda", 1.0}, {"mu", 0.5}}},
              {"checks", {"moment-stability", "relative-bound", "stationary"}},
              {"sobolev_k", 2.0},
              {"samples", 12}}}}});

  return cat;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> cat = build_catalog();
  return cat;
}

const CatalogEntry* find_catalog_entry(const std::string& name) {
  for (const CatalogEntry& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace fockbench
