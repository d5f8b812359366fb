#include "cmrf/fastmin.hpp"

#include <algorithm>
#include <limits>

#include "cmrf/error.hpp"

namespace cmrf {

namespace {

void check_shape(const MessageProblem& problem, std::span<double> out) {
  require(problem.form != nullptr, "message problem has no pairwise form");
  require(out.size() == problem.base.size(), "output length must equal label count");
}

double min_of(std::span<const double> v) { return *std::min_element(v.begin(), v.end()); }

}  // namespace

void dense_minconv(const MessageProblem& problem, std::span<double> out) {
  check_shape(problem, out);
  const int k = static_cast<int>(problem.base.size());
  for (Label t = 0; t < k; ++t) {
    double best = std::numeric_limits<double>::infinity();
    for (Label u = 0; u < k; ++u) {
      const double v = problem.scale * pairwise_value(*problem.form, problem.orientation, t, u) + problem.base[u];
      best = std::min(best, v);
    }
    out[t] = best;
  }
}

void potts_like_minconv(const MessageProblem& problem, std::span<double> out) {
  check_shape(problem, out);
  const auto& c = problem.base;
  const std::size_t k = c.size();
  if (const auto* potts = std::get_if<Potts>(problem.form)) {
    const double far = min_of(c) + problem.scale * potts->penalty;
    for (std::size_t t = 0; t < k; ++t) out[t] = std::min(c[t], far);
    return;
  }
  const auto* stereo = std::get_if<StereoTwoStep>(problem.form);
  require(stereo != nullptr, "potts_like_minconv needs a Potts or StereoTwoStep cost");
  const double step = problem.scale * stereo->step;
  const double far = min_of(c) + problem.scale * stereo->jump;
  for (std::size_t t = 0; t < k; ++t) {
    double best = std::min(c[t], far);
    if (t > 0) best = std::min(best, c[t - 1] + step);
    if (t + 1 < k) best = std::min(best, c[t + 1] + step);
    out[t] = best;
  }
}

void trunc_quad_minconv(const MessageProblem& problem, std::span<double> out, MinConvWorkspace& ws) {
  check_shape(problem, out);
  const auto* form = std::get_if<TruncatedQuadratic>(problem.form);
  require(form != nullptr, "trunc_quad_minconv needs a TruncatedQuadratic cost");
  const auto& c = problem.base;
  const int k = static_cast<int>(c.size());
  const double a = problem.scale * form->scale;
  const double floor = min_of(c);
  const double far = floor + a * form->cap;
  if (a == 0.0 || form->cap == 0.0) {
    std::fill(out.begin(), out.end(), floor);
    return;
  }

  // Lower envelope of the parabolas a*(t-u)^2 + c(u) over integer u.
  ws.vertices.resize(static_cast<std::size_t>(k));
  ws.bounds.resize(static_cast<std::size_t>(k) + 1);
  auto& v = ws.vertices;
  auto& z = ws.bounds;
  constexpr double inf = std::numeric_limits<double>::infinity();
  auto intersect = [&](int q, int r) {
    return ((c[q] + a * q * q) - (c[r] + a * r * r)) / (2.0 * a * (q - r));
  };
  int top = 0;
  v[0] = 0;
  z[0] = -inf;
  z[1] = inf;
  for (int q = 1; q < k; ++q) {
    double s = intersect(q, v[top]);
    while (s <= z[top]) {
      if (top == 0) break;
      --top;
      s = intersect(q, v[top]);
    }
    if (top == 0 && s <= z[0]) {
      v[0] = q;
      z[1] = inf;
      continue;
    }
    ++top;
    v[top] = q;
    z[top] = s;
    z[top + 1] = inf;
  }
  int j = 0;
  for (int t = 0; t < k; ++t) {
    while (z[j + 1] < t) ++j;
    const double d = t - v[j];
    out[t] = std::min(a * d * d + c[v[j]], far);
  }
}

void trunc_linear_minconv(const MessageProblem& problem, std::span<double> out) {
  check_shape(problem, out);
  const auto* form = std::get_if<TruncatedLinear>(problem.form);
  require(form != nullptr, "trunc_linear_minconv needs a TruncatedLinear cost");
  const auto& c = problem.base;
  const std::size_t k = c.size();
  const double a = problem.scale * form->scale;
  const double far = min_of(c) + a * form->cap;
  std::copy(c.begin(), c.end(), out.begin());
  for (std::size_t t = 1; t < k; ++t) out[t] = std::min(out[t], out[t - 1] + a);
  for (std::size_t t = k - 1; t-- > 0;) out[t] = std::min(out[t], out[t + 1] + a);
  for (std::size_t t = 0; t < k; ++t) out[t] = std::min(out[t], far);
}

void minconv(const MessageProblem& problem, std::span<double> out, MinConvWorkspace& ws) {
  require(problem.form != nullptr, "message problem has no pairwise form");
  switch (problem.form->index()) {
    case 1: trunc_quad_minconv(problem, out, ws); return;
    case 2: trunc_linear_minconv(problem, out); return;
    case 3:
    case 4: potts_like_minconv(problem, out); return;
    default: dense_minconv(problem, out); return;
  }
}

}  // namespace cmrf
