#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "branchdec/element_set.hpp"

namespace branchdec {

// Result of a constrained minimization: a feasible set and its value.
struct ConstrainedMinimum {
  ElementSet minimizer;
  std::int64_t value = 0;
};

// Evaluation oracle for a symmetric submodular function f with f(empty) = 0.
// Evaluations are cached under the side of the bipartition that contains
// element 0, so a set and its complement share one cache entry and at most
// one underlying evaluation.
class ConnectivityOracle {
 public:
  explicit ConnectivityOracle(int universeSize);
  virtual ~ConnectivityOracle() = default;

  ConnectivityOracle(const ConnectivityOracle&) = delete;
  ConnectivityOracle& operator=(const ConnectivityOracle&) = delete;

  int universeSize() const { return n_; }

  std::int64_t evaluate(const ElementSet& x) const;

  // Bypasses the memo.  The cache identifies complementary sets, which bakes
  // in symmetry; validators must not read f through it.
  std::int64_t evaluateNoCache(const ElementSet& x) const;

  // Number of cache misses, i.e. genuine evaluations of the underlying
  // function.  The unit all cost accounting is expressed in.
  std::uint64_t underlyingCalls() const { return calls_; }
  std::size_t cacheSize() const { return memo_.size(); }

  // True when every oracle under this one can answer constrained
  // minimization through a special-purpose routine (matroid chains).
  virtual bool chainMatroidBacked() const { return false; }

  // Optional fast constrained minimization over this oracle's universe:
  // min f(z) over forcedIn <= z <= universe - forcedOut.  Layered oracles
  // use this to route minimization past interpolation and merging.
  virtual std::optional<ConstrainedMinimum> tryFastConstrainedMin(
      const ElementSet& forcedIn, const ElementSet& forcedOut) const {
    (void)forcedIn;
    (void)forcedOut;
    return std::nullopt;
  }

 protected:
  virtual std::int64_t evaluateUncached(const ElementSet& x) const = 0;

 private:
  int n_;
  mutable std::unordered_map<ElementSet, std::int64_t, ElementSetHash> memo_;
  mutable std::uint64_t calls_ = 0;
};

// Samples symmetry, submodularity, non-negativity and f(empty) = 0 on random
// set pairs.  Returns a description of the first violation, if any.
std::optional<std::string> checkConnectivityAxioms(const ConnectivityOracle& oracle,
                                                   std::uint64_t seed,
                                                   int samples = 1000);

}  // namespace branchdec
