#include "cmrf/model_io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "cmrf/error.hpp"

namespace cmrf {

namespace {

class LineParser {
 public:
  LineParser(const std::string& source, int line_no, std::istringstream& tokens)
      : source_(source), line_no_(line_no), tokens_(tokens) {}

  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::Parse, source_ + ":" + std::to_string(line_no_) + ": " + msg);
  }

  double real(const char* what) {
    std::string tok;
    if (!(tokens_ >> tok)) error(std::string("missing ") + what);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) error("bad number '" + tok + "' for " + what);
    return v;
  }

  long integer(const char* what) {
    std::string tok;
    if (!(tokens_ >> tok)) error(std::string("missing ") + what);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) error("bad integer '" + tok + "' for " + what);
    return v;
  }

  int vertex(int n) {
    const long v = integer("vertex");
    if (v < 1 || v > n) error("vertex " + std::to_string(v) + " out of range 1.." + std::to_string(n));
    return static_cast<int>(v - 1);
  }

  void end() {
    std::string extra;
    if (tokens_ >> extra) error("unexpected trailing token '" + extra + "'");
  }

 private:
  const std::string& source_;
  int line_no_;
  std::istringstream& tokens_;
};

}  // namespace

Model read_model(std::istream& in, const std::string& source) {
  std::optional<ModelBuilder> builder;
  int n = 0, k = 0;
  long m_declared = 0, m_seen = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tag;
    if (!(tokens >> tag)) continue;
    LineParser p(source, line_no, tokens);

    if (tag == "mrf") {
      if (builder) p.error("duplicate header");
      const long nn = p.integer("n"), kk = p.integer("k");
      m_declared = p.integer("m");
      p.end();
      if (nn < 2) p.error("need n >= 2");
      if (kk < 1) p.error("need k >= 1");
      if (m_declared < 0) p.error("need m >= 0");
      n = static_cast<int>(nn);
      k = static_cast<int>(kk);
      builder.emplace(n, k);
      continue;
    }
    if (!builder) p.error("expected header 'mrf <n> <k> <m>' before '" + tag + "'");

    try {
      if (tag == "g") {
        const int i = p.vertex(n);
        std::vector<double> g(static_cast<std::size_t>(k));
        for (double& v : g) v = p.real("unary cost");
        p.end();
        builder->set_unary(i, g);
      } else if (tag == "hd" || tag == "hq" || tag == "hl" || tag == "hs" || tag == "hp") {
        const int i = p.vertex(n), j = p.vertex(n);
        PairwiseCost cost;
        if (tag == "hd") {
          DenseTable t{k, std::vector<double>(static_cast<std::size_t>(k) * k)};
          for (double& v : t.values) v = p.real("table entry");
          cost = std::move(t);
        } else if (tag == "hq") {
          const double s = p.real("scale");
          cost = TruncatedQuadratic{s, p.real("cap")};
        } else if (tag == "hl") {
          const double s = p.real("scale");
          cost = TruncatedLinear{s, p.real("cap")};
        } else if (tag == "hs") {
          const double a = p.real("step cost");
          cost = StereoTwoStep{a, p.real("jump cost")};
        } else {
          cost = Potts{p.real("penalty")};
        }
        p.end();
        builder->add_edge(i, j, std::move(cost));
        ++m_seen;
      } else if (tag == "w") {
        const int i = p.vertex(n), j = p.vertex(n);
        const double w = p.real("weight");
        p.end();
        builder->set_weight(i, j, w);
      } else {
        p.error("unknown record '" + tag + "'");
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Parse) throw;
      p.error(e.what());
    }
  }
  if (!builder) fail(ErrorKind::Parse, source + ": missing header 'mrf <n> <k> <m>'");
  if (m_seen != m_declared) {
    fail(ErrorKind::Parse, source + ": header declares " + std::to_string(m_declared) + " edges, found " +
                               std::to_string(m_seen));
  }
  try {
    return builder->build();
  } catch (const Error& e) {
    fail(ErrorKind::Parse, source + ": " + e.what());
  }
}

Model read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open model file '" + path + "'");
  return read_model(in, path);
}

void write_model(std::ostream& out, const Model& model) {
  const Graph& g = model.graph();
  const int k = model.num_labels();
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "mrf " << g.num_vertices() << ' ' << k << ' ' << g.num_edges() << '\n';
  for (int i = 0; i < g.num_vertices(); ++i) {
    out << "g " << i + 1;
    for (double v : model.unary(i)) out << ' ' << v;
    out << '\n';
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    const std::string ends = std::to_string(edge.lo + 1) + ' ' + std::to_string(edge.hi + 1);
    std::visit(
        [&](const auto& c) {
          using C = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<C, DenseTable>) {
            out << "hd " << ends;
            for (double v : c.values) out << ' ' << v;
          } else if constexpr (std::is_same_v<C, TruncatedQuadratic>) {
            out << "hq " << ends << ' ' << c.scale << ' ' << c.cap;
          } else if constexpr (std::is_same_v<C, TruncatedLinear>) {
            out << "hl " << ends << ' ' << c.scale << ' ' << c.cap;
          } else if constexpr (std::is_same_v<C, StereoTwoStep>) {
            out << "hs " << ends << ' ' << c.step << ' ' << c.jump;
          } else {
            out << "hp " << ends << ' ' << c.penalty;
          }
        },
        model.pairwise(e));
    out << '\n';
  }
  const WalkWeights uniform = WalkWeights::uniform(g);
  for (int i = 0; i < g.num_vertices(); ++i) {
    bool differs = false;
    for (int d = g.dart_begin(i); d < g.dart_end(i); ++d) differs |= model.weights()[d] != uniform[d];
    if (!differs) continue;
    for (int d = g.dart_begin(i); d < g.dart_end(i); ++d)
      out << "w " << i + 1 << ' ' << g.dart_head(d) + 1 << ' ' << model.weights()[d] << '\n';
  }
  out.precision(old_precision);
}

void write_model_file(const std::string& path, const Model& model) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write model file '" + path + "'");
  write_model(out, model);
}

void write_labeling(std::ostream& out, const Labeling& x, int base) {
  for (std::size_t i = 0; i < x.size(); ++i) out << x[i] + base << '\n';
}

std::string format_labeling(const Labeling& x, int base) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(x[i] + base);
  }
  return s + ")";
}

}  // namespace cmrf
