#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "cmrf/error.hpp"
#include "cmrf/experiments.hpp"
#include "cmrf/image.hpp"
#include "cmrf/problems.hpp"
#include "commands.hpp"

namespace cmrf::cli {

namespace {

struct RestoreOptions {
  std::string input, output, clean;
  std::string map = "T";
  RestoreParams params;
};

int run_restore(const RestoreOptions& o) {
  RestoreParams params = o.params;
  params.kind = parse_map_kind(o.map);
  const GrayImage noisy = read_pgm_file(o.input);
  const RestoreResult r = restore_image(noisy, params);
  write_pgm_file(o.output, r.restored);
  std::cout << "iterations " << r.iterations << '\n' << "residual " << r.residual << '\n' << "energy " << r.energy << '\n';
  if (!o.clean.empty()) {
    const GrayImage clean = read_pgm_file(o.clean);
    std::cout << "rmse_input " << rmse(clean, noisy) << '\n' << "rmse_output " << rmse(clean, r.restored) << '\n';
  }
  return kExitOk;
}

struct StereoOptions {
  std::string left, right, output, labels;
  StereoRunParams params;
};

int run_stereo(const StereoOptions& o) {
  const ColorImage left = read_ppm_file(o.left);
  const ColorImage right = read_ppm_file(o.right);
  const StereoResult r = match_stereo(left, right, o.params);
  const int scale = o.params.max_disparity > 0 ? 255 / o.params.max_disparity : 1;
  write_pgm_file(o.output, labeling_to_image(r.disparity, left.width, left.height, scale));
  if (!o.labels.empty()) {
    std::ofstream out(o.labels);
    if (!out) fail(ErrorKind::Io, "cannot open '" + o.labels + "' for writing");
    out << left.width << ' ' << left.height << '\n';
    for (int y = 0; y < left.height; ++y) {
      for (int x = 0; x < left.width; ++x) {
        out << (x ? " " : "") << r.disparity[static_cast<std::size_t>(y) * left.width + x];
      }
      out << '\n';
    }
  }
  std::cout << "iterations " << r.iterations << '\n' << "residual " << r.residual << '\n' << "energy " << r.energy << '\n';
  return kExitOk;
}

struct SynthOptions {
  std::string clean, noisy, left, right, truth;
  int width = 64, height = 64;
  double sigma = 20.0;
  int shift = 4;
  std::uint64_t seed = 1;
};

}  // namespace

void register_restore(CLI::App& app, int& status) {
  auto o = std::make_shared<RestoreOptions>();
  auto& p = o->params;
  auto* cmd = app.add_subcommand("restore", "Denoise a grayscale PGM with a truncated quadratic prior");
  cmd->add_option("--input", o->input, "Noisy PGM")->required()->check(CLI::ExistingFile);
  cmd->add_option("--output", o->output, "Restored PGM")->required();
  cmd->add_option("--clean", o->clean, "Clean reference PGM for RMSE")->check(CLI::ExistingFile);
  cmd->add_option("--lambda", p.lambda, "Smoothness weight")->capture_default_str();
  cmd->add_option("--tau", p.cap, "Truncation of the squared difference")->capture_default_str();
  cmd->add_option("--p", p.p, "Damping parameter")->capture_default_str();
  cmd->add_option("--iterations", p.iterations, "Map iterations")->capture_default_str();
  cmd->add_option("--map", o->map, "T or S")->capture_default_str();
  cmd->add_option("--threads", p.threads, "Worker threads")->capture_default_str();
  cmd->callback([o, &status] { status = run_restore(*o); });
}

void register_stereo(CLI::App& app, int& status) {
  auto o = std::make_shared<StereoOptions>();
  auto& p = o->params;
  auto* cmd = app.add_subcommand("stereo", "Disparity from a rectified PPM pair with the S map");
  cmd->add_option("--left", o->left, "Left PPM")->required()->check(CLI::ExistingFile);
  cmd->add_option("--right", o->right, "Right PPM")->required()->check(CLI::ExistingFile);
  cmd->add_option("--output", o->output, "Disparity PGM, labels scaled by floor(255/D)")->required();
  cmd->add_option("--labels", o->labels, "Raw disparity labels as text");
  cmd->add_option("--D", p.max_disparity, "Maximum disparity")->capture_default_str();
  cmd->add_option("--alpha", p.step, "Cost of a one-level disparity change")->capture_default_str();
  cmd->add_option("--beta", p.jump, "Cost of a larger disparity change")->capture_default_str();
  cmd->add_option("--gamma", p.truncation, "Truncation of the matching cost")->capture_default_str();
  cmd->add_option("--p", p.p, "Damping parameter")->capture_default_str();
  cmd->add_option("--iterations", p.iterations, "Map iterations")->capture_default_str();
  cmd->add_option("--threads", p.threads, "Worker threads")->capture_default_str();
  cmd->callback([o, &status] { status = run_stereo(*o); });
}

void register_synth(CLI::App& app, int& status) {
  auto o = std::make_shared<SynthOptions>();
  auto* cmd = app.add_subcommand("synth", "Write synthetic inputs for restore and stereo");
  cmd->require_subcommand(1);

  auto* img = cmd->add_subcommand("restore", "Piecewise-constant image and a noisy copy");
  img->add_option("--clean", o->clean, "Clean PGM output")->required();
  img->add_option("--noisy", o->noisy, "Noisy PGM output")->required();
  img->add_option("--width", o->width)->capture_default_str();
  img->add_option("--height", o->height)->capture_default_str();
  img->add_option("--sigma", o->sigma, "Noise standard deviation")->capture_default_str();
  img->add_option("--seed", o->seed)->capture_default_str();
  img->callback([o, &status] {
    const GrayImage clean = piecewise_constant_image(o->width, o->height);
    write_pgm_file(o->clean, clean);
    write_pgm_file(o->noisy, add_gaussian_noise(clean, o->sigma, o->seed));
    status = kExitOk;
  });

  auto* st = cmd->add_subcommand("stereo", "Random-texture pair with a square shifted by a known disparity");
  st->add_option("--left", o->left, "Left PPM output")->required();
  st->add_option("--right", o->right, "Right PPM output")->required();
  st->add_option("--truth", o->truth, "True disparity PGM output (raw labels)");
  st->add_option("--width", o->width)->capture_default_str();
  st->add_option("--height", o->height)->capture_default_str();
  st->add_option("--shift", o->shift, "Disparity of the square")->capture_default_str();
  st->add_option("--seed", o->seed)->capture_default_str();
  st->callback([o, &status] {
    const int side = std::min(o->width, o->height) / 2;
    const auto pair = shifted_square_pair(o->width, o->height, (o->width - side) / 2, (o->height - side) / 2, side,
                                          o->shift, o->seed);
    write_ppm_file(o->left, pair.left);
    write_ppm_file(o->right, pair.right);
    if (!o->truth.empty()) write_pgm_file(o->truth, labeling_to_image(pair.disparity, o->width, o->height));
    status = kExitOk;
  });
}

}  // namespace cmrf::cli
