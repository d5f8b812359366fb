#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cmrf/image.hpp"
#include "cmrf/model.hpp"

namespace cmrf {

// ---------------------------------------------------------------------------
// Binary classification on a grid

/// Model for F(s) = sum_i alpha_i s_i + sum_{ij} beta_ij s_i s_j with spins
/// s in {-1,+1} encoded as labels {0,1}, on a width x height 4-connected grid.
/// `beta` is indexed by the grid's canonical edge order. The returned model is
/// normalized: F_model(x) = F_spin(x) - offset.
NormalizedModel ising_to_model(std::span<const double> alpha, std::span<const double> beta, int width,
                               int height);

/// Spin energy evaluated directly, labels {0,1} read as spins {-1,+1}.
double ising_energy(const Graph& graph, std::span<const double> alpha, std::span<const double> beta,
                    const Labeling& x);

struct GridSpec {
  int size = 10;
  double coupling = 10.0;
  std::uint64_t seed = 0;
};

struct IsingInstance {
  int width = 0;
  int height = 0;
  std::vector<double> alpha;
  std::vector<double> beta;
  Model model;
  double offset = 0.0;
};

/// alpha_i ~ U[-1,1] for every vertex in order, then beta_ij ~ U[-c,c] for every
/// canonical edge in order, all from one Rng(seed) stream.
IsingInstance random_grid(const GridSpec& spec);

// ---------------------------------------------------------------------------
// Image restoration and stereo

/// g_i(a) = (y_i - a)^2, h = scale * min((a-b)^2, cap), uniform weights.
Model restoration_model(const GrayImage& noisy, double lambda, double cap, int num_labels = 256);

struct StereoParams {
  int max_disparity = 15;
  double step = 500.0;
  double jump = 1000.0;
  double truncation = 20.0;
};

/// Labels are disparities 0..D. g_i(a) = min(trunc, |I_l(x,y) - I_r(x-a,y)|_1)
/// and trunc where x - a falls outside the image. Weights proportional to
/// 0.01 + exp(-0.2 |I_l(i) - I_l(j)|_1).
Model stereo_model(const ColorImage& left, const ColorImage& right, const StereoParams& params);

/// Relative stereo weight between two colors.
double color_affinity(const Rgb& a, const Rgb& b);

/// Adds N(0, sigma^2) per pixel, rounds half away from zero, clamps to 0..255.
GrayImage add_gaussian_noise(const GrayImage& clean, double sigma, std::uint64_t seed);

double rmse(const GrayImage& a, const GrayImage& b);
int hamming(const Labeling& x, const Labeling& y);

/// Labels clamped to 0..255, one pixel per vertex.
GrayImage labeling_to_image(const Labeling& x, int width, int height, int scale = 1);
Labeling image_to_labeling(const GrayImage& image);

// ---------------------------------------------------------------------------
// Synthetic inputs

/// Piecewise-constant test image: background, a rectangle, a disc and a band.
GrayImage piecewise_constant_image(int width, int height);

struct StereoPair {
  ColorImage left;
  ColorImage right;
  /// Ground-truth disparity per left pixel.
  Labeling disparity;
};

/// Random-texture background at disparity 0 and a random-texture square at
/// disparity `shift` covering [x0, x0+side) x [y0, y0+side).
StereoPair shifted_square_pair(int width, int height, int x0, int y0, int side, int shift, std::uint64_t seed);

}  // namespace cmrf
