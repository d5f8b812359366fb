#include <doctest.h>

#include <sstream>
#include <string>

#include "cmrf/error.hpp"
#include "cmrf/model_io.hpp"
#include "cmrf/random_models.hpp"
#include "fixtures.hpp"

using namespace cmrf;

namespace {

Model parse(const std::string& text) {
  std::istringstream in(text);
  return read_model(in, "test");
}

std::string parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    return e.what();
  }
  FAIL("expected a parse error");
  return {};
}

}  // namespace

TEST_CASE("reading the text format") {
  const Model m = parse(
      "# comment line\n"
      "mrf 3 2 2   # trailing comment\n"
      "g 1 1.5 0\n"
      "g 3 0 2\n"
      "hd 2 1 0 3 2 5\n"
      "hq 2 3 0.5 4\n"
      "w 2 1 3\n"
      "w 2 3 1\n");
  CHECK(m.num_vertices() == 3);
  CHECK(m.num_labels() == 2);
  CHECK(m.unary(0, 0) == 1.5);
  CHECK(m.unary(1, 0) == 0.0);  // missing g line
  CHECK(m.unary(2, 1) == 2.0);
  // the table was given with vertex 2 indexing rows
  CHECK(energy(m, {0, 1, 0}) == 1.5 + 2.0 + 0.5);
  const Graph& g = m.graph();
  CHECK(m.weights()[g.find_dart(1, 0)] == doctest::Approx(0.75));
  CHECK(m.weights()[g.find_dart(1, 2)] == doctest::Approx(0.25));
  CHECK(m.weights()[g.find_dart(0, 1)] == 1.0);
}

TEST_CASE("all edge records") {
  const Model m = parse("mrf 5 3 4\nhp 1 2 2\nhs 2 3 1 4\nhl 3 4 0.5 1\nhq 4 5 1 3\n");
  CHECK(std::holds_alternative<Potts>(m.pairwise(0)));
  CHECK(std::holds_alternative<StereoTwoStep>(m.pairwise(1)));
  CHECK(std::holds_alternative<TruncatedLinear>(m.pairwise(2)));
  CHECK(std::holds_alternative<TruncatedQuadratic>(m.pairwise(3)));
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error("mrf 3 2 2\ng 1 0 0\nhd 1 2 0 0 0 zero\nhd 2 3 0 0 0 0\n").find("test:3:") == 0);
  CHECK(parse_error("g 1 0 0\n").find("test:1:") == 0);
  CHECK(parse_error("mrf 2 2 1\nhp 1 3 1\n").find("test:2:") == 0);
  CHECK(parse_error("mrf 2 2 1\nhp 1 2 1 7\n").find("test:2:") == 0);
  CHECK(parse_error("mrf 2 2 1\nhx 1 2 1\n").find("test:2:") == 0);
  CHECK(parse_error("mrf 2 2 1\nhs 1 2 3 3\n").find("test:2:") == 0);
  CHECK(parse_error("mrf 2 2 1\ng 1 0\nhp 1 2 1\n").find("test:2:") == 0);
  CHECK(parse_error("mrf 3 2 1\nhp 1 2 1\n").find("test") == 0);  // disconnected
  CHECK(parse_error("mrf 2 2 2\nhp 1 2 1\n").find("declares 2") != std::string::npos);
  CHECK(parse_error("").find("missing header") != std::string::npos);
}

TEST_CASE("write and read round trip") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const Model m = random_model(rng, {});
    std::stringstream buf;
    write_model(buf, m);
    const Model back = read_model(buf, "roundtrip");
    REQUIRE(back.num_vertices() == m.num_vertices());
    CHECK(back.graph().edges() == m.graph().edges());
    for (std::size_t d = 0; d < m.weights().size(); ++d)
      CHECK(back.weights()[static_cast<int>(d)] == doctest::Approx(m.weights()[static_cast<int>(d)]).epsilon(1e-15));
    for (int r = 0; r < 5; ++r) {
      const Labeling x = random_labeling(rng, m);
      CHECK(energy(back, x) == energy(m, x));
    }
  }
  const Model cyc = fixtures::five_cycle(true);
  std::stringstream buf;
  write_model(buf, cyc);
  CHECK(buf.str().find("\nw ") == std::string::npos);
}

TEST_CASE("labeling output") {
  CHECK(format_labeling({1, 1, 0}, 1) == "(2,2,1)");
  CHECK(format_labeling({1, 1, 0}) == "(1,1,0)");
  std::ostringstream out;
  write_labeling(out, {0, 2}, 1);
  CHECK(out.str() == "1\n3\n");
}
