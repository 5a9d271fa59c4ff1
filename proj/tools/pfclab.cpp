// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pfclab/ensembles.hpp"
#include "pfclab/report.hpp"
#include "pfclab/rng.hpp"
#include "pfclab/symgroup.hpp"
#include "pfclab/tensor.hpp"
#include "pfclab/verify.hpp"

namespace {

using pfclab::verify::ExperimentParams;
using pfclab::verify::ExperimentReport;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const ExperimentReport& rep, const std::string& out_path) {
  std::cout << rep.full_text();
  if (!out_path.empty()) {
    std::ofstream os(out_path);
    os << rep.body();
  }
}

void emit_csv(const std::vector<ExperimentReport>& reps, const std::string& path) {
  std::ofstream os(path);
  os << "experiment,key,value\n";
  for (const auto& r : reps)
    for (const auto& [k, v] : r.values) os << r.experiment << ',' << k << ',' << v << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pfclab: numerical experiments on permutation-phase-Clifford "
               "random unitary ensembles and pseudorandom isometries"};
  app.require_subcommand(1);

  // run <name> [--n --t --d --s --samples --seed --out]
  auto* run = app.add_subcommand("run", "run a single named experiment");
  std::string name, out_path;
  ExperimentParams params;
  long long seed_arg = 1;
  run->add_option("name", name, "experiment name")->required();
  run->add_option("--n", params.n, "qubit count");
  run->add_option("--d", params.d, "dimension");
  run->add_option("--t", params.t, "number of parallel queries / moment order");
  run->add_option("--s", params.s, "ancilla qubits");
  run->add_option("--m", params.m, "composition power");
  run->add_option("--k", params.k, "independence order");
  run->add_option("--trials", params.trials, "number of trials");
  run->add_option("--samples", params.samples, "Monte-Carlo samples");
  run->add_option("--seed", seed_arg, "run seed");
  run->add_option("--out", out_path, "write the report body to this file");

  auto* suite = app.add_subcommand("suite", "run an experiment suite");
  std::string level = "smoke", csv_path;
  suite->add_option("--level", level, "smoke or full")
      ->check(CLI::IsMember({"smoke", "full"}));
  bool parallel = false;
  suite->add_flag("--parallel", parallel, "run independent experiments concurrently");
  suite->add_option("--seed", seed_arg, "suite seed");
  suite->add_option("--out", out_path, "write the aggregate report to this file");
  suite->add_option("--csv", csv_path, "write measured values as CSV");

  auto* dump = app.add_subcommand("dump-ensemble", "print sampled ensemble members");
  std::string ens_name = "pf";
  int ens_d = 4, ens_n = 2, ens_s = 1, count = 1;
  dump->add_option("--name", ens_name,
                   "one of haar, perm, phase, pf, pfc, clifford, pri, haar-isometry");
  dump->add_option("--d", ens_d, "dimension (haar, perm, phase, pf)");
  dump->add_option("--n", ens_n, "qubits (pfc, clifford, pri)");
  dump->add_option("--s", ens_s, "ancilla qubits (pri)");
  dump->add_option("--count", count, "number of samples");
  dump->add_option("--seed", seed_arg, "sampling seed");

  auto* chart = app.add_subcommand("char-table", "print a symmetric-group character table");
  int table_t = 3;
  chart->add_option("--t", table_t, "group degree")->required();

  CLI11_PARSE(app, argc, argv);
  const uint64_t seed = static_cast<uint64_t>(seed_arg);

  try {
    if (run->parsed()) {
      params.seed = seed;
      auto t0 = std::chrono::steady_clock::now();
      ExperimentReport rep = pfclab::verify::run_experiment(name, params);
      rep.wall_seconds = seconds_since(t0);
      emit(rep, out_path);
      return rep.pass ? 0 : 1;
    }
    if (suite->parsed()) {
      auto t0 = std::chrono::steady_clock::now();
      auto reps = pfclab::verify::run_suite(level, seed, parallel);
      bool all_pass = true;
      std::string aggregate;
      for (const auto& r : reps) {
        aggregate += r.body();
        aggregate += "\n";
        all_pass = all_pass && r.pass;
      }
      std::cout << aggregate;
      std::cout << "suite " << level << ": " << (all_pass ? "PASS" : "FAIL") << " ("
                << pfclab::report::format_g17(seconds_since(t0)) << " s)\n";
      if (!out_path.empty()) {
        std::ofstream os(out_path);
        os << aggregate;
      }
      if (!csv_path.empty()) emit_csv(reps, csv_path);
      return all_pass ? 0 : 1;
    }
    if (dump->parsed()) {
      pfclab::ensembles::UnitaryEnsemble e;
      if (ens_name == "haar")
        e = pfclab::ensembles::haar_ensemble(ens_d);
      else if (ens_name == "perm")
        e = pfclab::ensembles::perm_ensemble(ens_d);
      else if (ens_name == "phase")
        e = pfclab::ensembles::phase_ensemble(ens_d);
      else if (ens_name == "pf")
        e = pfclab::ensembles::pf_ensemble(ens_d);
      else if (ens_name == "pfc")
        e = pfclab::ensembles::pfc_ensemble(ens_n);
      else if (ens_name == "clifford")
        e = pfclab::ensembles::clifford_ensemble(ens_n);
      else if (ens_name == "pri")
        e = pfclab::ensembles::pri_ensemble(ens_n, ens_s);
      else if (ens_name == "haar-isometry")
        e = pfclab::ensembles::haar_isometry_ensemble(1 << ens_n, 1 << (ens_n - ens_s));
      else {
        std::cerr << "unknown ensemble: " << ens_name << "\n";
        return 2;
      }
      std::cout << "ensemble " << e.descriptor() << "\n";
      for (int i = 0; i < count; ++i) {
        pfclab::ComplexOperator op(e.sampler(pfclab::split_seed(seed, i)),
                                   {e.dim_out}, {e.dim_in});
        pfclab::dump_operator(std::cout, op);
      }
      return 0;
    }
    if (chart->parsed()) {
      auto tab = pfclab::symgroup::character_table(table_t);
      std::cout << tab.to_text();
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
