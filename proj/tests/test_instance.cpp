#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ppcenter/errors.hpp"
#include "ppcenter/instance.hpp"

using ppc::Instance;

namespace {

std::string write_text(const Instance& inst) {
  std::ostringstream out;
  ppc::write_instance(out, inst);
  return out.str();
}

std::vector<double> line_matrix(int n) {
  std::vector<double> d(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) d[i * n + j] = std::abs(i - j);
  }
  return d;
}

}  // namespace

TEST_CASE("euclidean distances of the ten-site instance") {
  const Instance inst = fixtures::cac_example();
  CHECK(std::fabs(inst.d(9, 2) - 16.64) <= 0.005);
  CHECK(std::fabs(inst.d(9, 6) - 38.47) <= 0.005);
  CHECK(inst.symmetric());
  CHECK_FALSE(inst.homogeneous());
  CHECK(inst.first_position() == 8);
}

TEST_CASE("constructor rejects invalid data") {
  const auto d = line_matrix(4);
  const std::vector<double> q(4, 0.5);
  CHECK_NOTHROW(Instance(2, 2, d, q));
  CHECK_THROWS_AS(Instance(1, 2, d, q), std::invalid_argument);
  CHECK_THROWS_AS(Instance(5, 1, d, q), std::invalid_argument);
  CHECK_THROWS_AS(Instance(2, 3, d, q), std::invalid_argument);
  CHECK_THROWS_AS(Instance(2, 0, d, q), std::invalid_argument);
  CHECK_THROWS_AS(Instance(2, 2, d, {0.5, 0.5, 0.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(Instance(2, 2, d, {0.5, 0.5, 1.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(Instance(2, 2, d, {0.5, 0.5, 0.5}), std::invalid_argument);
  auto bad = d;
  bad[5] = 1.0;  // diagonal of site 2
  CHECK_THROWS_AS(Instance(2, 2, bad, q), std::invalid_argument);
  bad = d;
  bad[1] = 0.0;
  CHECK_THROWS_AS(Instance(2, 2, bad, q), std::invalid_argument);
  bad = d;
  bad[1] = std::nan("");
  CHECK_THROWS_AS(Instance(2, 2, bad, q), std::invalid_argument);
  CHECK_THROWS_AS(Instance(2, 2, std::vector<double>(15, 1.0), q), std::invalid_argument);
}

TEST_CASE("coincident coordinates are rejected") {
  std::vector<ppc::Point> pts{{0, 0}, {1, 1}, {0, 0}, {2, 2}};
  CHECK_THROWS_AS(ppc::from_coordinates(pts, {0.1, 0.2, 0.3, 0.4}, 2, 1), std::invalid_argument);
}

TEST_CASE("derived instances keep the data") {
  const Instance inst = fixtures::cac_example();
  const Instance t = inst.with_truncation(7);
  CHECK(t.K() == 7);
  CHECK(t.p() == 3);
  CHECK(t.d(3, 4) == inst.d(3, 4));
  CHECK(inst.with_centers(4).p() == 4);
  CHECK_THROWS(inst.with_truncation(8));
  const Instance h = inst.with_probabilities(std::vector<double>(10, 0.3));
  CHECK(h.homogeneous());
}

TEST_CASE("native format round trip is bit exact") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    fixtures::RandomSpec spec;
    spec.grid = seed % 2 == 0;
    spec.asymmetric = seed % 3 == 0;
    const Instance inst = fixtures::random_instance(seed, spec);
    const std::string text = write_text(inst);
    std::istringstream in(text);
    const Instance back = ppc::read_instance(in);
    CHECK(write_text(back) == text);
    REQUIRE(back.n() == inst.n());
    for (int i = 0; i < inst.n(); ++i) {
      CHECK(back.q(i) == inst.q(i));
      for (int j = 0; j < inst.n(); ++j) CHECK(back.d(i, j) == inst.d(i, j));
    }
  }
}

TEST_CASE("native reader reports the failing line") {
  auto parse_message = [](const std::string& text) {
    std::istringstream in(text);
    try {
      ppc::read_instance(in);
    } catch (const ppc::ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(parse_message("") != "no error");
  CHECK(parse_message("2 1 1\n0 1\n1 0\n0.5 0.5\n").find("invalid instance") != std::string::npos);
  const std::string bad = parse_message("3 2 1\n0 1 2\n1 0 x\n2 1 0\n0.5 0.5 0.5\n");
  CHECK(bad.find("line 3") != std::string::npos);
  CHECK(parse_message("3 2 1\n0 1 2\n1 0 1\n0.5 0.5 0.5\n") != "no error");
  std::istringstream ok("# comment\n3 2 1\n0 1 2\n1 0 1\n2 1 0\n0.5 0.5 0.5\n");
  CHECK(ppc::read_instance(ok).n() == 3);
}

TEST_CASE("ORLIB parser and shortest paths") {
  std::istringstream in(" 4 4 2\n1 2 5\n2 3 1\n3 4 2\n1 4 10\n");
  const ppc::OrlibGraph g = ppc::parse_orlib(in);
  CHECK(g.n == 4);
  CHECK(g.p == 2);
  const auto d = ppc::all_pairs_shortest(g);
  CHECK(d[0 * 4 + 3] == 8);
  CHECK(d[3 * 4 + 0] == 8);
  CHECK(d[1 * 4 + 3] == 3);

  std::istringstream shortHeader("4 5 2\n1 2 5\n");
  CHECK_THROWS_AS(ppc::parse_orlib(shortHeader), ppc::ParseError);
  std::istringstream badEdge("3 2 1\n1 2 5\n2 9 1\n");
  CHECK_THROWS_AS(ppc::parse_orlib(badEdge), ppc::ParseError);
  std::istringstream split("4 2 1\n1 2 5\n3 4 1\n");
  const auto parts = ppc::parse_orlib(split);
  CHECK_THROWS_AS(ppc::all_pairs_shortest(parts), std::invalid_argument);
}

TEST_CASE("shortest paths on the synthetic pmed file match Floyd-Warshall") {
  std::ifstream in(PPC_TEST_DATA "/pmed_synth.txt");
  REQUIRE(in);
  const ppc::OrlibGraph g = ppc::parse_orlib(in);
  CHECK(g.n == 100);
  CHECK(g.edges.size() == 200);
  CHECK(ppc::all_pairs_shortest(g) == oracle::floyd_warshall(g));
}

TEST_CASE("submatrix extraction") {
  std::ifstream in(PPC_TEST_DATA "/pmed_synth.txt");
  const auto g = ppc::parse_orlib(in);
  const auto full = ppc::all_pairs_shortest(g);
  const std::vector<int> sites{4, 17, 33, 50, 51, 80, 99};
  const Instance a = ppc::extract_submatrix(full, g.n, sites, 3, 2, 11);
  const Instance b = ppc::extract_submatrix(full, g.n, sites, 3, 2, 11);
  CHECK(write_text(a) == write_text(b));
  CHECK(a.d(1, 5) == full[17 * 100 + 80]);
  const Instance c = ppc::extract_submatrix(full, g.n, sites, 3, 2, 12);
  CHECK(write_text(a) != write_text(c));

  const std::vector<int> outOfRange{1, 2, 100};
  try {
    ppc::extract_submatrix(full, g.n, outOfRange, 2, 1, 1);
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("101") != std::string::npos);
  }
  const std::vector<int> dup{1, 2, 2, 3};
  CHECK_THROWS_AS(ppc::extract_submatrix(full, g.n, dup, 2, 1, 1), std::invalid_argument);
}

TEST_CASE("generated probabilities lie on the hundredths grid") {
  const auto q = ppc::gen_probabilities(500, 42);
  CHECK(q == ppc::gen_probabilities(500, 42));
  CHECK(q != ppc::gen_probabilities(500, 43));
  bool sawSmall = false, sawLarge = false;
  for (double v : q) {
    const double scaled = v * 100.0;
    CHECK(std::fabs(scaled - std::round(scaled)) < 1e-9);
    CHECK(v >= 0.01);
    CHECK(v <= 1.0);
    sawSmall = sawSmall || v < 0.1;
    sawLarge = sawLarge || v > 0.9;
  }
  CHECK(sawSmall);
  CHECK(sawLarge);
}

TEST_CASE("coordinate file reader") {
  std::ifstream in(PPC_TEST_DATA "/cac_example.coords");
  REQUIRE(in);
  const auto c = ppc::read_coordinates(in);
  CHECK(c.p == 3);
  CHECK(c.K == 3);
  REQUIRE(c.points.size() == 10);
  CHECK(c.points[9].x == 23);
  CHECK(c.q[0] == 0.97);
  std::istringstream bad("2 1 1\n0 0 0.5\n");
  CHECK_THROWS_AS(ppc::read_coordinates(bad), ppc::ParseError);
}

TEST_CASE("load_instance reports missing files as I/O errors") {
  CHECK_THROWS_AS(ppc::load_instance("/nonexistent/dir/instance.txt"), ppc::IoError);
}

TEST_CASE("order key and center preference") {
  const Instance inst = fixtures::toy5({0.5, 0.9, 0.5, 0.5, 0.5});
  // Sites 0 and 2 are both at distance 1 from site 1; the likelier customer
  // ranks lower.
  CHECK(ppc::order_key(inst, 1, 0) < ppc::order_key(inst, 0, 1));
  CHECK(ppc::order_key(inst, 0, 1) < ppc::order_key(inst, 2, 1));
  CHECK(ppc::prefers(inst, 1, 0, 2));
  CHECK_FALSE(ppc::prefers(inst, 1, 2, 0));
  CHECK(ppc::prefers(inst, 1, 2, 3));
  CHECK(ppc::prefers(inst, 1, 1, 0));
}
