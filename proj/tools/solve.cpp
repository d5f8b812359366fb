#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "cmrf/error.hpp"
#include "cmrf/maps.hpp"
#include "cmrf/model_io.hpp"
#include "commands.hpp"

namespace cmrf::cli {

namespace {

struct SolveOptions {
  std::string model_path;
  std::string map = "T";
  double p = 0.1;
  double tol = 1e-9;
  int max_iter = 100000;
  int threads = 1;
  int label_base = 0;
  std::string labeling_out;
};

int run_solve(const SolveOptions& o) {
  const NormalizedModel nm = normalize_nonnegative(read_model_file(o.model_path));
  const Model& model = nm.model;
  const MapKind kind = parse_map_kind(o.map);

  SolveParams params;
  params.p = o.p;
  params.tol = o.tol;
  params.max_iter = o.max_iter;
  params.threads = o.threads;
  const FixedPointReport rep = solve(model, kind, params);
  const Labeling x = decode(rep.field);

  std::cout << "map " << to_string(kind) << '\n'
            << "p " << o.p << '\n'
            << "iterations " << rep.iterations << '\n'
            << "converged " << (rep.converged ? "yes" : "no") << '\n'
            << "residual " << rep.residual << '\n'
            << "certified_distance " << rep.certified_distance << '\n'
            << "labeling " << format_labeling(x, o.label_base) << '\n'
            << "energy " << energy(model, x) + nm.offset << '\n';
  if (kind == MapKind::Diffusion) {
    const Bracket b = bracket(model, rep);
    std::cout << "lower_bound " << b.lower + nm.offset << '\n' << "upper_bound " << b.upper + nm.offset << '\n';
  }
  if (!o.labeling_out.empty()) {
    std::ofstream out(o.labeling_out);
    if (!out) fail(ErrorKind::Io, "cannot open '" + o.labeling_out + "' for writing");
    write_labeling(out, x, o.label_base);
  }
  if (!rep.converged) {
    std::cerr << "cmrf: residual " << rep.residual << " above tolerance after " << rep.iterations << " iterations\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

void register_solve(CLI::App& app, int& status) {
  auto o = std::make_shared<SolveOptions>();
  auto* cmd = app.add_subcommand("solve", "Iterate T or S on a model file and report bounds");
  cmd->add_option("--model", o->model_path, "Model file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--map", o->map, "T (diffusion) or S (control)")->capture_default_str();
  cmd->add_option("--p", o->p, "Damping parameter in (0,1)")->capture_default_str();
  cmd->add_option("--tol", o->tol, "Residual tolerance")->capture_default_str();
  cmd->add_option("--max-iter", o->max_iter, "Iteration cap")->capture_default_str();
  cmd->add_option("--threads", o->threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--label-base", o->label_base, "Display labels from this base (1 for 1-based)")
      ->capture_default_str();
  cmd->add_option("--labeling-out", o->labeling_out, "Write the decoded labeling here");
  cmd->callback([o, &status] { status = run_solve(*o); });
}

}  // namespace cmrf::cli
