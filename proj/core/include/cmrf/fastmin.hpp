#pragma once

#include <span>
#include <vector>

#include "cmrf/model.hpp"

namespace cmrf {

/// One inner minimization m(t) = min_u [ scale * h(t, u) + base(u) ] where t is
/// the label of the receiving vertex and u the label of the sending one.
struct MessageProblem {
  std::span<const double> base;
  double scale = 1.0;
  const PairwiseCost* form = nullptr;
  /// Orientation of `form` with the receiving label as first argument.
  Orientation orientation = Orientation::Forward;
};

/// Scratch space for the envelope kernels. One per thread.
struct MinConvWorkspace {
  std::vector<int> vertices;
  std::vector<double> bounds;
};

/// O(k^2) reference by full enumeration. Works for every form.
void dense_minconv(const MessageProblem& problem, std::span<double> out);

/// O(k) for Potts and StereoTwoStep.
void potts_like_minconv(const MessageProblem& problem, std::span<double> out);

/// O(k) lower envelope of parabolas, capped.
void trunc_quad_minconv(const MessageProblem& problem, std::span<double> out, MinConvWorkspace& ws);

/// O(k) forward/backward distance propagation, capped.
void trunc_linear_minconv(const MessageProblem& problem, std::span<double> out);

/// Dispatches to the fastest kernel for the form.
void minconv(const MessageProblem& problem, std::span<double> out, MinConvWorkspace& ws);

inline std::vector<double> dense_minconv(const MessageProblem& problem) {
  std::vector<double> out(problem.base.size());
  dense_minconv(problem, out);
  return out;
}

inline std::vector<double> minconv(const MessageProblem& problem) {
  std::vector<double> out(problem.base.size());
  MinConvWorkspace ws;
  minconv(problem, out, ws);
  return out;
}

}  // namespace cmrf
