#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "cmrf/error.hpp"
#include "cmrf/experiments.hpp"
#include "commands.hpp"

namespace cmrf::cli {

namespace {

struct BenchOptions {
  BenchSpec spec;
  std::string csv;
  std::string summary;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out.precision(17);
  return out;
}

int run_bench(const BenchOptions& o) {
  const auto rows = run_grid_bench(o.spec);
  const auto summary = summarize(rows, o.spec.algorithms);

  if (!o.csv.empty()) {
    auto out = open_out(o.csv);
    out << "seed,algorithm,energy,hamming,seconds,iterations,minconv_per_iteration\n";
    for (const auto& r : rows)
      out << r.seed << ',' << r.algorithm << ',' << r.energy << ',' << r.hamming << ',' << r.seconds << ','
          << r.iterations << ',' << r.minconv_per_iteration << '\n';
  }
  if (!o.summary.empty()) {
    auto out = open_out(o.summary);
    out << "algorithm,energy_mean,energy_sd,hamming_mean,hamming_sd,seconds_mean\n";
    for (const auto& s : summary)
      out << s.algorithm << ',' << s.energy_mean << ',' << s.energy_sd << ',' << s.hamming_mean << ','
          << s.hamming_sd << ',' << s.seconds_mean << '\n';
  }

  std::printf("K=%d lambda=%g seeds=%d iterations=%d p=%g\n", o.spec.size, o.spec.coupling, o.spec.seeds,
              o.spec.iterations, o.spec.p);
  std::printf("%-8s %14s %10s %10s %8s %10s\n", "method", "energy", "sd", "distance", "sd", "seconds");
  for (const auto& s : summary)
    std::printf("%-8s %14.2f %10.2f %10.2f %8.2f %10.4f\n", s.algorithm.c_str(), s.energy_mean, s.energy_sd,
                s.hamming_mean, s.hamming_sd, s.seconds_mean);
  return kExitOk;
}

}  // namespace

void register_bench(CLI::App& app, int& status) {
  auto o = std::make_shared<BenchOptions>();
  auto* cmd = app.add_subcommand("bench", "Compare solvers on random binary grids against the exact optimum");
  auto& s = o->spec;
  cmd->add_option("--K", s.size, "Grid side (at most 16)")->capture_default_str()->check(CLI::Range(2, 16));
  cmd->add_option("--lambda", s.coupling, "Coupling strength")->capture_default_str();
  cmd->add_option("--seeds", s.seeds, "Number of instances")->capture_default_str();
  cmd->add_option("--first-seed", s.first_seed, "Seed of the first instance")->capture_default_str();
  cmd->add_option("--iterations", s.iterations, "Iterations for T, S and BP")->capture_default_str();
  cmd->add_option("--p", s.p, "Damping parameter for T and S")->capture_default_str();
  cmd->add_option("--damping", s.damping, "BP message damping")->capture_default_str();
  cmd->add_option("--threads", s.threads, "Worker threads for T and S")->capture_default_str();
  cmd->add_option("--algorithms", s.algorithms, "Subset of DP,ICM,S,S+ICM,T,T+ICM,BP,BP+ICM")
      ->delimiter(',')
      ->check(CLI::IsMember(kBenchAlgorithms));
  cmd->add_option("--csv", o->csv, "Per-seed CSV output");
  cmd->add_option("--summary", o->summary, "Per-algorithm summary CSV output");
  cmd->callback([o, &status] { status = run_bench(*o); });
}

}  // namespace cmrf::cli
