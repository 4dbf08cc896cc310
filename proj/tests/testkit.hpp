#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "branchdec/decomposition.hpp"
#include "branchdec/instances.hpp"
#include "branchdec/oracle.hpp"

namespace branchdec::testkit {

// Cut function of the complete graph with unit weights; the simplest
// nontrivial connectivity function.
struct CompleteGraphCut final : ConnectivityOracle {
  explicit CompleteGraphCut(int n) : ConnectivityOracle(n) {}
  std::int64_t evaluateUncached(const ElementSet& x) const override {
    return static_cast<std::int64_t>(x.count()) *
           static_cast<std::int64_t>(universeSize() - x.count());
  }
};

// Reference width by unpruned enumeration of every leaf-insertion tree.
// Ground sets up to 9 elements.
std::int64_t bruteBranchWidth(const ConnectivityOracle& f);

// Reference titanic test: checks every tripartition of `a`, empty parts
// included.  |a| up to 10.
bool bruteTitanic(const ConnectivityOracle& f, const ElementSet& a);

// Reference constrained minimum of f over forcedIn <= z <= V - forcedOut.
// Ties break to the lexicographically smallest bit-vector.
ConstrainedMinimum bruteConstrainedMin(const ConnectivityOracle& f,
                                       const ElementSet& forcedIn,
                                       const ElementSet& forcedOut);

// Largest set independent in both matroids, by subset enumeration.
int bruteCommonIndependent(const std::function<std::int64_t(const ElementSet&)>& rank1,
                           const std::function<std::int64_t(const ElementSet&)>& rank2,
                           int groundSize);

// Reference cut-rank by dense boolean elimination, no bit packing.
int naiveCutRank(const Graph& graph, const ElementSet& x);

// Every generator consumes mt19937_64 words directly (modulo reduction), so
// outputs are identical across platforms for a fixed seed.
Graph randomGraph(int n, std::uint64_t seed);
Graph randomCubicGraph(int n, std::uint64_t seed);
BitMatrix randomGf2Matrix(int rows, int cols, std::uint64_t seed);

// Cut function of a random weighted complete graph, tabulated over all
// subsets in mask order.  Satisfies the connectivity axioms by construction.
std::vector<std::int64_t> randomCutTable(int n, std::uint64_t seed);

BranchDecomposition randomDecomposition(int groundSize, std::uint64_t seed);

}  // namespace branchdec::testkit
