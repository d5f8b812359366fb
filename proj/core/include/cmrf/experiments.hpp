#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cmrf/image.hpp"
#include "cmrf/maps.hpp"
#include "cmrf/model.hpp"

namespace cmrf {

// Random binary grid comparison -------------------------------------------

/// Algorithms understood by run_grid_bench, in reporting order.
inline const std::vector<std::string> kBenchAlgorithms = {"DP", "ICM", "S", "S+ICM", "T", "T+ICM", "BP", "BP+ICM"};

struct BenchSpec {
  int size = 10;
  double coupling = 10.0;
  int seeds = 20;
  std::uint64_t first_seed = 1;
  int iterations = 1000;
  double p = 0.01;
  double damping = 0.5;
  int threads = 1;
  std::vector<std::string> algorithms = kBenchAlgorithms;
};

struct BenchRow {
  std::uint64_t seed = 0;
  std::string algorithm;
  /// Spin energy of the labeling, in the units of the generated alpha/beta.
  double energy = 0.0;
  int hamming = 0;
  double seconds = 0.0;
  /// Map or message-passing iterations performed (ICM sweeps for ICM alone).
  int iterations = 0;
  /// Inner min-convolutions per iteration; 0 for DP and ICM.
  int minconv_per_iteration = 0;
};

struct BenchSummary {
  std::string algorithm;
  double energy_mean = 0.0;
  double energy_sd = 0.0;
  double hamming_mean = 0.0;
  double hamming_sd = 0.0;
  double seconds_mean = 0.0;
};

/// Runs every algorithm on every seed. DP gives the reference labeling x*
/// used for Hamming distances and always runs, even when not requested.
std::vector<BenchRow> run_grid_bench(const BenchSpec& spec);

/// Mean and sample standard deviation per algorithm, in `algorithms` order.
std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows, const std::vector<std::string>& algorithms);

// Restoration ---------------------------------------------------------------

struct RestoreParams {
  double lambda = 0.05;
  double cap = 100.0;
  double p = 0.001;
  int iterations = 100;
  MapKind kind = MapKind::Diffusion;
  int num_labels = 256;
  int threads = 1;
};

struct RestoreResult {
  GrayImage restored;
  double energy = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

/// Runs `iterations` map steps from zero on the restoration model of `noisy`
/// and decodes. With fewer than 256 labels the noisy values must fit.
RestoreResult restore_image(const GrayImage& noisy, const RestoreParams& params);

// Stereo --------------------------------------------------------------------

struct StereoRunParams {
  int max_disparity = 15;
  double step = 500.0;
  double jump = 1000.0;
  double truncation = 20.0;
  double p = 1e-4;
  int iterations = 1000;
  int threads = 1;
};

struct StereoResult {
  Labeling disparity;
  double energy = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

StereoResult match_stereo(const ColorImage& left, const ColorImage& right, const StereoRunParams& params);

}  // namespace cmrf
