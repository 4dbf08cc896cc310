#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>

#include "branchdec/oracle.hpp"
#include "branchdec/sfm.hpp"

namespace branchdec {

// Rank queries against a polymatroid over subsets of a fixed carrier.
using RankFn = std::function<std::int64_t(const ElementSet&)>;

// Restriction of a connectivity function to subsets of a carrier A:
// g(X) = min f(Z) over X <= Z <= A.  Monotone and submodular with
// g(empty) = 0 and g(A) = f(A).  Ranks are memoized; each miss costs one
// constrained minimization of f.
class InducedPolymatroid {
 public:
  InducedPolymatroid(const ConnectivityOracle& f, const ElementSet& carrier,
                     sfm::SfmOptions options = {});

  std::int64_t rank(const ElementSet& x) const;
  const ElementSet& carrier() const { return carrier_; }

  // View of rank() for the search routines below.  Valid only while this
  // object is alive.
  RankFn fn() const;

 private:
  const ConnectivityOracle& f_;
  ElementSet carrier_;
  ElementSet outside_;
  sfm::SfmOptions options_;
  mutable std::unordered_map<ElementSet, std::int64_t, ElementSetHash> memo_;
};

// Maximal superset of x inside the carrier with the same rank.  One
// ascending pass over carrier - x suffices: by submodularity a zero
// marginal stays zero as the set grows.
ElementSet polymatroidClosure(const ElementSet& carrier, const RankFn& g,
                              const ElementSet& x);

struct CoverOptions {
  // Skip closure triples that were already expanded.  The depth bound does
  // not rely on this, so it stays off unless a caller asks.
  bool visitedPruning = false;
  // Abort with UnresolvedMinimization past this many search nodes; 0 means
  // no limit.
  std::uint64_t nodeLimit = 0;
};

// Three flats, each of rank < g(carrier), whose union is the carrier.
struct FlatTriple {
  std::array<ElementSet, 3> parts;
};

// Searches for a cover of the carrier by three proper flats, branching on
// the uncovered element of smallest id and trying the parts in fixed order.
// Returns nullopt when the exhausted search proves no cover exists.
std::optional<FlatTriple> coverByThreeFlats(const ElementSet& carrier, const RankFn& g,
                                            const CoverOptions& options = {});

// Pairwise disjoint split into three parts; parts may be empty.
struct Tripartition {
  std::array<ElementSet, 3> parts;
};

// Turns a cover of a by three parts of f-value < f(a) into a tripartition
// of a with the same guarantee, spending at most three oracle evaluations
// beyond f on the inputs themselves.
Tripartition uncrossCover(const ConnectivityOracle& f, const ElementSet& a,
                          const FlatTriple& cover);

struct TitanicResult {
  bool titanic = true;
  // Parts of f-value < f(a) covering a; meaningful only when not titanic.
  Tripartition witness;
};

// Decides whether every tripartition of a has a part of f-value >= f(a),
// returning a witness tripartition otherwise.
TitanicResult titanicTest(const ConnectivityOracle& f, const ElementSet& a,
                          const sfm::SfmOptions& sfmOptions = {},
                          const CoverOptions& coverOptions = {});

}  // namespace branchdec
