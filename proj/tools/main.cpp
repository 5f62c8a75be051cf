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

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "fockbench/experiment.hpp"

namespace {

using fockbench::CatalogEntry;
using nlohmann::json;

// --config accepts a catalog name or a path to a JSON file.
json load_config(const std::string& spec) {
  if (const CatalogEntry* entry = fockbench::find_catalog_entry(spec))
    return entry->config;
  std::ifstream in(spec);
  if (!in)
    throw fockbench::ConfigError("config '" + spec +
                                 "' is neither a catalog entry nor a readable "
                                 "file (see list-experiments)");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw fockbench::ConfigError("config '" + spec +
                                 "' is not valid JSON: " + e.what());
  }
  return j;
}

std::string stem_of(const std::string& spec) {
  if (fockbench::find_catalog_entry(spec)) return spec;
  return std::filesystem::path(spec).stem().string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fockbench - product-formula and Zeno convergence experiments "
               "on truncated bosonic Fock spaces"};
  app.require_subcommand(1);

  std::string config_spec, out_dir = ".";
  unsigned threads = 0;
  std::optional<std::uint64_t> seed_override;
  std::optional<double> tol_override;

  CLI::App* run = app.add_subcommand("run", "execute an experiment config");
  run->add_option("--config", config_spec,
                  "catalog entry name or path to a JSON config")
      ->required();
  run->add_option("--out-dir", out_dir, "directory for result files");
  run->add_option("--seed", seed_override, "override the config seed");
  run->add_option("--threads", threads,
                  "workers for the n-grid sweep (0 = hardware)");
  run->add_option("--oracle-tol", tol_override,
                  "override the oracle tolerance");

  CLI::App* validate =
      app.add_subcommand("validate", "parse and validate a config, then exit");
  validate
      ->add_option("--config", config_spec,
                   "catalog entry name or path to a JSON config")
      ->required();

  CLI::App* list = app.add_subcommand(
      "list-experiments", "print the built-in reproduction catalog");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const CatalogEntry& e : fockbench::catalog())
        std::cout << e.name << "\n    " << e.description << "\n";
      return 0;
    }

    json j = load_config(config_spec);
    if (seed_override) j["seed"] = *seed_override;
    if (tol_override) j["oracle_tol"] = *tol_override;
    fockbench::ExperimentConfig cfg;
    try {
      cfg = fockbench::parse_config(j);
    } catch (const json::exception& e) {
      throw fockbench::ConfigError(std::string("malformed config: ") +
                                   e.what());
    }

    if (validate->parsed()) {
      std::cout << "config ok: kind=" << cfg.kind << "\n";
      return 0;
    }

    fockbench::ExperimentResult res;
    try {
      res = fockbench::run_experiment(cfg, threads);
    } catch (const json::exception& e) {
      throw fockbench::ConfigError(std::string("malformed config: ") +
                                   e.what());
    }

    std::filesystem::create_directories(out_dir);
    const std::string stem = stem_of(config_spec);
    const auto csv_path = std::filesystem::path(out_dir) / (stem + ".csv");
    const auto json_path =
        std::filesystem::path(out_dir) / (stem + "_summary.json");
    {
      std::ofstream csv(csv_path);
      fockbench::write_csv(res, csv);
    }
    {
      std::ofstream js(json_path);
      js << fockbench::summary_json(res).dump(2) << "\n";
    }

    std::cout << "wrote " << csv_path.string() << " and " << json_path.string()
              << "\n";
    if (res.report.fit_ok)
      std::cout << "fitted slope " << res.report.slope << " (R^2 "
                << res.report.r2 << ")\n";
    else if (!res.report.message.empty())
      std::cout << "no order fit: " << res.report.message << "\n";
    return 0;
  } catch (const fockbench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
