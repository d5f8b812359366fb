#include "cmrf/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "cmrf/error.hpp"
#include "cmrf/rng.hpp"

namespace cmrf {

static_assert(sizeof(Rgb) == 3, "Rgb must be tightly packed for PPM I/O");

NormalizedModel ising_to_model(std::span<const double> alpha, std::span<const double> beta, int width,
                               int height) {
  Graph graph = Graph::grid(width, height);
  require(alpha.size() == static_cast<std::size_t>(graph.num_vertices()),
          "alpha needs one entry per grid vertex");
  require(beta.size() == static_cast<std::size_t>(graph.num_edges()), "beta needs one entry per grid edge");
  std::vector<double> unary;
  unary.reserve(alpha.size() * 2);
  for (double a : alpha) {
    unary.push_back(-a);
    unary.push_back(a);
  }
  std::vector<PairwiseCost> pairwise;
  pairwise.reserve(beta.size());
  for (double b : beta) pairwise.emplace_back(DenseTable{2, {b, -b, -b, b}});
  WalkWeights weights = WalkWeights::uniform(graph);
  return normalize_nonnegative(Model(std::move(graph), 2, std::move(unary), std::move(pairwise), std::move(weights)));
}

double ising_energy(const Graph& graph, std::span<const double> alpha, std::span<const double> beta,
                    const Labeling& x) {
  require(x.size() == alpha.size() && beta.size() == static_cast<std::size_t>(graph.num_edges()),
          "spin arrays do not match the graph");
  auto spin = [&](int v) { return x[v] == 0 ? -1.0 : 1.0; };
  double total = 0.0;
  for (int i = 0; i < graph.num_vertices(); ++i) total += alpha[i] * spin(i);
  for (int e = 0; e < graph.num_edges(); ++e) total += beta[e] * spin(graph.edge(e).lo) * spin(graph.edge(e).hi);
  return total;
}

IsingInstance random_grid(const GridSpec& spec) {
  require(spec.size >= 2, "grid side must be at least 2");
  require(spec.coupling >= 0.0, "coupling strength must be nonnegative");
  IsingInstance inst;
  inst.width = inst.height = spec.size;
  const int n = spec.size * spec.size;
  const int m = 2 * spec.size * (spec.size - 1);
  Rng rng(spec.seed);
  inst.alpha.resize(static_cast<std::size_t>(n));
  for (double& a : inst.alpha) a = rng.uniform(-1.0, 1.0);
  inst.beta.resize(static_cast<std::size_t>(m));
  for (double& b : inst.beta) b = rng.uniform(-spec.coupling, spec.coupling);
  auto normalized = ising_to_model(inst.alpha, inst.beta, spec.size, spec.size);
  inst.model = std::move(normalized.model);
  inst.offset = normalized.offset;
  return inst;
}

// ---------------------------------------------------------------------------

Model restoration_model(const GrayImage& noisy, double lambda, double cap, int num_labels) {
  require(num_labels >= 1, "need at least one label");
  Graph graph = Graph::grid(noisy.width, noisy.height);
  const int k = num_labels;
  std::vector<double> unary(noisy.size() * static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < noisy.size(); ++i) {
    const double y = noisy.pixels[i];
    for (int a = 0; a < k; ++a) {
      const double d = y - a;
      unary[i * k + a] = d * d;
    }
  }
  std::vector<PairwiseCost> pairwise(static_cast<std::size_t>(graph.num_edges()), TruncatedQuadratic{lambda, cap});
  WalkWeights weights = WalkWeights::uniform(graph);
  return Model(std::move(graph), k, std::move(unary), std::move(pairwise), std::move(weights));
}

namespace {

int l1(const Rgb& a, const Rgb& b) {
  return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) + std::abs(a[2] - b[2]);
}

}  // namespace

double color_affinity(const Rgb& a, const Rgb& b) { return 0.01 + std::exp(-0.2 * l1(a, b)); }

Model stereo_model(const ColorImage& left, const ColorImage& right, const StereoParams& params) {
  require(left.width == right.width && left.height == right.height, "stereo images differ in size");
  require(params.max_disparity >= 0, "maximum disparity must be nonnegative");
  const int w = left.width;
  const int h = left.height;
  const int k = params.max_disparity + 1;
  Graph graph = Graph::grid(w, h);
  std::vector<double> unary(static_cast<std::size_t>(w) * h * k);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      for (int a = 0; a < k; ++a) {
        unary[i * k + a] = x - a < 0 ? params.truncation
                                     : std::min(params.truncation, static_cast<double>(l1(left.at(x, y), right.at(x - a, y))));
      }
    }
  }
  const StereoTwoStep cost{params.step, params.jump};
  validate_pairwise(cost, k);
  std::vector<PairwiseCost> pairwise(static_cast<std::size_t>(graph.num_edges()), cost);
  std::vector<double> relative(static_cast<std::size_t>(graph.num_darts()));
  for (int d = 0; d < graph.num_darts(); ++d) {
    relative[d] = color_affinity(left.pixels[graph.dart_tail(d)], left.pixels[graph.dart_head(d)]);
  }
  WalkWeights weights = WalkWeights::normalized(graph, std::move(relative));
  return Model(std::move(graph), k, std::move(unary), std::move(pairwise), std::move(weights));
}

GrayImage add_gaussian_noise(const GrayImage& clean, double sigma, std::uint64_t seed) {
  require(sigma >= 0.0, "noise standard deviation must be nonnegative");
  GrayImage out = clean;
  if (sigma == 0.0) return out;
  Rng rng(seed);
  for (auto& px : out.pixels) {
    const double v = std::round(px + sigma * rng.normal());
    px = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
  }
  return out;
}

double rmse(const GrayImage& a, const GrayImage& b) {
  require(a.width == b.width && a.height == b.height, "images differ in size");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a.pixels[i]) - b.pixels[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(a.size()));
}

int hamming(const Labeling& x, const Labeling& y) {
  require(x.size() == y.size(), "labelings differ in length");
  int count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) count += x[i] != y[i];
  return count;
}

GrayImage labeling_to_image(const Labeling& x, int width, int height, int scale) {
  require(x.size() == static_cast<std::size_t>(width) * height, "labeling does not match image size");
  GrayImage img(width, height);
  for (std::size_t i = 0; i < x.size(); ++i) img.pixels[i] = static_cast<std::uint8_t>(std::clamp(x[i] * scale, 0, 255));
  return img;
}

Labeling image_to_labeling(const GrayImage& image) {
  return Labeling(image.pixels.begin(), image.pixels.end());
}

// ---------------------------------------------------------------------------

GrayImage piecewise_constant_image(int width, int height) {
  GrayImage img(width, height, 50);
  const double r = 0.2 * std::min(width, height);
  const double cx = 0.68 * width, cy = 0.62 * height;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      std::uint8_t v = 50;
      if (x >= width / 8 && x < width / 2 && y >= height / 8 && y < height / 2) v = 200;
      const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
      if (dx * dx + dy * dy < r * r) v = 120;
      if (y >= (8 * height) / 10 && y < (9 * height) / 10) v = 170;
      img.at(x, y) = v;
    }
  }
  return img;
}

StereoPair shifted_square_pair(int width, int height, int x0, int y0, int side, int shift, std::uint64_t seed) {
  require(shift >= 0, "shift must be nonnegative");
  require(x0 >= 0 && y0 >= 0 && side >= 1 && x0 + side <= width && y0 + side <= height,
          "square must lie inside the image");
  Rng rng(seed);
  auto texture = [&](int w, int h) {
    ColorImage t(w, h);
    for (auto& px : t.pixels)
      for (auto& ch : px) ch = static_cast<std::uint8_t>(rng.below(256));
    return t;
  };
  const ColorImage background = texture(width, height);
  const ColorImage square = texture(width, height);
  auto in_square = [&](int x, int y) { return x >= x0 && x < x0 + side && y >= y0 && y < y0 + side; };

  StereoPair pair{ColorImage(width, height), ColorImage(width, height),
                  Labeling(static_cast<std::size_t>(width) * height, 0)};
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const bool inside = in_square(x, y);
      pair.left.at(x, y) = inside ? square.at(x, y) : background.at(x, y);
      pair.right.at(x, y) = in_square(x + shift, y) ? square.at(x + shift, y) : background.at(x, y);
      if (inside) pair.disparity[static_cast<std::size_t>(y) * width + x] = shift;
    }
  }
  return pair;
}

}  // namespace cmrf
