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

#ifndef FOCKBENCH_EXPERIMENT_HPP
#define FOCKBENCH_EXPERIMENT_HPP

#include <iosfwd>

#include "fockbench/metrics.hpp"
#include "fockbench/models.hpp"
#include "fockbench/schemes.hpp"
#include "json.hpp"

namespace fockbench {

// Declarative experiment description. The JSON schema is documented in the
// README; annotated examples ship in the built-in catalog.
struct ExperimentConfig {
  std::string kind;  // trotter-sweep | suzuki-sweep | time-dep-trotter |
                     // zeno-sweep | general-zeno | gate-fidelity | diagnostics
  std::vector<std::size_t> cutoffs;
  double time = 0.0;
  std::vector<std::size_t> n_grid;
  double oracle_tol = 1e-11;
  std::uint64_t seed = 1;
  nlohmann::json scheme;         // sweep kinds
  nlohmann::json model;          // kind specific
  nlohmann::json initial_state;  // fock | coherent | cat | maximally-mixed
  nlohmann::json resolved;       // full config with defaults applied
};

// Schema violations raise ConfigError (CLI exit 2); numerical trouble keeps
// the usual runtime_error (CLI exit 3).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

ExperimentConfig parse_config(const nlohmann::json& j);

struct SweepRow {
  std::size_t n = 0;
  double error = 0.0;
  DriftDiagnostics diagnostics;
  double wall_ms = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<SweepRow> rows;
  ConvergenceReport report;   // fit of rows when applicable
  nlohmann::json extra;       // kind-specific measurements
};

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                unsigned threads = 0);

// CSV columns: n,error_trace_norm,trace_drift,min_eig,top_level_mass,
// wall_time_ms. All data columns are deterministic for fixed config+seed;
// wall_time_ms is the one measurement that cannot be.
void write_csv(const ExperimentResult& res, std::ostream& os);
nlohmann::json summary_json(const ExperimentResult& res);

struct CatalogEntry {
  std::string name;
  std::string description;
  nlohmann::json config;
};

// Built-in reproduction configs; each maps onto an acceptance criterion.
const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_catalog_entry(const std::string& name);

}  // namespace fockbench

#endif  // FOCKBENCH_EXPERIMENT_HPP
