#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "branchdec/errors.hpp"
#include "branchdec/instances.hpp"
#include "branchdec/oracle.hpp"
#include "testkit.hpp"

using namespace branchdec;

namespace {

Graph cycle(int n) {
  Graph g;
  g.vertexCount = n;
  for (int v = 0; v < n; ++v) g.edges.push_back({std::min(v, (v + 1) % n), std::max(v, (v + 1) % n)});
  return g;
}

Graph complete(int n) {
  Graph g;
  g.vertexCount = n;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.edges.push_back({u, v});
  return g;
}

}  // namespace

TEST_CASE("graph parser accepts the documented format") {
  std::istringstream in(
      "c a four-cycle\n"
      "p graph 4 4\n"
      "e 1 2\n"
      "e 2 3\n"
      "e 3 4\n"
      "c trailing comment\n"
      "e 4 1\n");
  const Graph g = parseGraph(in);
  CHECK(g.vertexCount == 4);
  REQUIRE(g.edges.size() == 4);
  CHECK(g.edges[0] == std::vector<int>{0, 1});
  CHECK(g.edges[3] == std::vector<int>{0, 3});
}

TEST_CASE("graph parser reports errors with line numbers") {
  auto expectFailure = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    try {
      parseGraph(in);
      FAIL("expected a parse failure for: " << text);
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expectFailure("e 1 2\n", "line 1: expected 'p graph'");
  expectFailure("p graph 3 1\ne 1 4\n", "line 2: endpoint out of range");
  expectFailure("p graph 3 2\ne 1 2\n", "edge count does not match");
  expectFailure("p graph 3 1\nq 1 2\n", "unknown line tag");
  expectFailure("p graph 3 1\ne 1 x\n", "endpoints must be integers");
  expectFailure("p graph 3 1\ne\n", "edge with no endpoints");
}

TEST_CASE("hyperedges and loops collapse to sorted distinct endpoints") {
  std::istringstream in("p graph 5 2\ne 3 1 4 3\ne 2 2\n");
  const Graph g = parseGraph(in);
  CHECK(g.edges[0] == std::vector<int>{0, 2, 3});
  CHECK(g.edges[1] == std::vector<int>{1});
}

TEST_CASE("carving oracle counts crossing edges") {
  CarvingOracle f(cycle(4));
  CHECK(f.evaluate(ElementSet::singleton(4, 0)) == 2);
  CHECK(f.evaluate(ElementSet::of(4, {0, 1})) == 2);
  CHECK(f.evaluate(ElementSet::of(4, {0, 2})) == 4);
  CHECK(f.evaluate(ElementSet(4)) == 0);
  CHECK(!checkConnectivityAxioms(f, 7).has_value());

  // Loops and hyperedges stay consistent with the crossing rule.
  Graph weird;
  weird.vertexCount = 3;
  weird.edges = {{0}, {0, 1, 2}};
  CarvingOracle h(weird);
  CHECK(h.evaluate(ElementSet::singleton(3, 0)) == 1);
  CHECK(h.evaluate(ElementSet::of(3, {0, 1})) == 1);
  CHECK(!checkConnectivityAxioms(h, 7).has_value());
}

TEST_CASE("branchwidth oracle counts boundary vertices") {
  // Path a-b-c: two edges sharing vertex b.
  Graph path;
  path.vertexCount = 3;
  path.edges = {{0, 1}, {1, 2}};
  GraphBranchwidthOracle f(path);
  CHECK(f.universeSize() == 2);
  CHECK(f.evaluate(ElementSet::singleton(2, 0)) == 1);

  GraphBranchwidthOracle k4(complete(4));
  CHECK(k4.universeSize() == 6);
  // Star at one vertex against the opposite triangle.
  ElementSet star(6);
  Graph g = complete(4);
  for (int e = 0; e < 6; ++e)
    if (g.edges[static_cast<std::size_t>(e)][0] == 0) star.add(e);
  CHECK(star.count() == 3);
  CHECK(k4.evaluate(star) == 3);
  CHECK(!checkConnectivityAxioms(k4, 7).has_value());
}

TEST_CASE("cut-rank oracle matches the dense reference") {
  const Graph c5 = cycle(5);
  CutRankOracle f(c5);
  CHECK(f.evaluate(ElementSet::of(5, {0, 1})) == 2);
  CHECK(f.evaluate(ElementSet::singleton(5, 2)) == 1);
  CHECK(!checkConnectivityAxioms(f, 7).has_value());

  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph g = testkit::randomGraph(8, seed);
    CutRankOracle oracle(g);
    std::mt19937_64 rng(seed + 100);
    for (int it = 0; it < 50; ++it) {
      ElementSet x(8);
      for (int v = 0; v < 8; ++v)
        if (rng() & 1) x.add(v);
      CHECK(oracle.evaluateNoCache(x) == testkit::naiveCutRank(g, x));
    }
  }

  Graph hyper;
  hyper.vertexCount = 3;
  hyper.edges = {{0, 1, 2}};
  CHECK_THROWS_AS(CutRankOracle{hyper}, ValidationError);
}

TEST_CASE("matrix parser round-trips bits") {
  std::istringstream in("p matrix 2 3\nc rows follow\n101\n010\n");
  const BitMatrix m = parseMatrix(in);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(m.get(0, 0));
  CHECK(!m.get(0, 1));
  CHECK(m.get(1, 1));

  auto expectFailure = [](const std::string& text, const std::string& needle) {
    std::istringstream bad(text);
    try {
      parseMatrix(bad);
      FAIL("expected a parse failure for: " << text);
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expectFailure("p matrix 2 3\n101\n", "missing matrix row");
  expectFailure("p matrix 1 3\n10\n", "row has the wrong length");
  expectFailure("p matrix 1 3\n1x0\n", "rows must be 0/1");
  expectFailure("p matrix 1 2\n10\n11\n", "unexpected content");
}

TEST_CASE("bit matrix subrank agrees with hand values") {
  BitMatrix m(3, 3);
  // Identity plus an extra dependent row.
  m.set(0, 0, true);
  m.set(1, 1, true);
  m.set(2, 0, true);
  m.set(2, 1, true);
  CHECK(m.subrank({0, 1, 2}, ElementSet::full(3)) == 2);
  CHECK(m.subrank({2}, ElementSet::full(3)) == 1);
  CHECK(m.subrank({0, 1, 2}, ElementSet::singleton(3, 2)) == 0);
  CHECK(m.subrank({}, ElementSet::full(3)) == 0);
}

TEST_CASE("table parser and oracle validate the axioms") {
  std::istringstream in("p table 2\n0 1 1 0\n");
  int n = 0;
  const auto values = parseTable(in, &n);
  REQUIRE(n == 2);
  TableOracle f(n, values);
  CHECK(f.evaluate(ElementSet::singleton(2, 0)) == 1);
  CHECK(f.evaluate(ElementSet::full(2)) == 0);

  auto expectInvalid = [](int size, std::vector<std::int64_t> table, const std::string& needle) {
    try {
      TableOracle oracle(size, std::move(table));
      FAIL("expected an axiom violation: " << needle);
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expectInvalid(2, {1, 1, 1, 1}, "f(empty)");
  expectInvalid(2, {0, 1, 2, 0}, "not symmetric");
  expectInvalid(2, {0, -1, -1, 0}, "negative");
  // f(X) = 1 only on the two middle sets of a 3-cube violates submodularity.
  expectInvalid(3, {0, 0, 0, 1, 1, 0, 0, 0}, "not submodular");
  expectInvalid(2, {0, 1, 1, 0, 0}, "one value per subset");

  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    TableOracle randomized(6, testkit::randomCutTable(6, seed));
    CHECK(!checkConnectivityAxioms(randomized, seed).has_value());
  }
}

TEST_CASE("table parser rejects malformed input") {
  auto expectFailure = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    int n = 0;
    try {
      parseTable(in, &n);
      FAIL("expected a parse failure for: " << text);
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expectFailure("p table 17\n", "table size must be 0..16");
  expectFailure("p table 2\n0 1 1\n", "one value per subset");
  expectFailure("p table 2\n0 1 1 0 9\n", "too many values");
  expectFailure("p table 2\n0 a 1 0\n", "values must be integers");
}
