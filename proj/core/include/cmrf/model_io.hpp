#pragma once

#include <iosfwd>
#include <string>

#include "cmrf/model.hpp"

namespace cmrf {

// Line-oriented text format, vertices numbered 1..n:
//
//   mrf <n> <k> <m>
//   g <i> <k values>                       unary costs (missing vertices: zero)
//   hd <i> <j> <k*k values>                dense table, row = label of i
//   hq <i> <j> <scale> <cap>               truncated quadratic
//   hl <i> <j> <scale> <cap>               truncated linear
//   hs <i> <j> <step> <jump>               stereo two-step
//   hp <i> <j> <penalty>                   Potts
//   w <i> <j> <weight>                     relative walk weight (default uniform)
//
// '#' starts a comment. Errors are reported as ErrorKind::Parse with the line number.

Model read_model(std::istream& in, const std::string& source = "<input>");
Model read_model_file(const std::string& path);

/// Canonical form: every vertex, every edge in canonical orientation, explicit weights
/// only when they differ from uniform.
void write_model(std::ostream& out, const Model& model);
void write_model_file(const std::string& path, const Model& model);

/// Whitespace-separated labels, shifted by `base` (0 or 1) for display.
void write_labeling(std::ostream& out, const Labeling& x, int base = 0);
std::string format_labeling(const Labeling& x, int base = 0);

}  // namespace cmrf
