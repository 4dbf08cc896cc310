#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "branchdec/decomposition.hpp"
#include "branchdec/element_set.hpp"
#include "branchdec/oracle.hpp"
#include "branchdec/sfm.hpp"

namespace branchdec {

struct SolverConfig {
  int baseThreshold = 8;  // >= 4; ground sets this small are solved exactly
  sfm::SfmOptions sfm;
  // Re-validate and re-evaluate every decomposition the solver hands on.
  bool debugChecks = true;
  // Element insertion order: input order, or a seeded shuffle when set.
  std::optional<std::uint64_t> shuffleSeed;
};

// Decision result: a width <= k decomposition, or proof that none exists.
struct SolveOutcome {
  std::optional<BranchDecomposition> decomposition;
  bool exceeded() const { return !decomposition.has_value(); }
};

struct ExactBaseResult {
  std::int64_t width = 0;
  std::optional<BranchDecomposition> decomposition;  // absent when n <= 1
};

// Optimal decomposition by leaf-insertion enumeration over all (2n-5)!!
// subcubic trees, pruned by the interpolated lower bound max_e
// f_min(W_e, prefix - W_e) on partial trees.  Complete trees are never
// pruned, so the first optimum in insertion order is returned.
ExactBaseResult exactBase(const ConnectivityOracle& f,
                          const SolverConfig& config = {});

// Width-k compression of a wider decomposition: splits on a cut with both
// sides titanic, converts the input onto each merged ground set, recurses,
// and glues the two results at the cut edge.
SolveOutcome compress(const ConnectivityOracle& f,
                      const BranchDecomposition& dec, std::int64_t k,
                      const SolverConfig& config = {});

// Adds elements one at a time, keeping a width <= k decomposition of the
// interpolation f_i(W) = min{f(Z) : Z cap V_i = W} and re-compressing after
// each insertion.  A stage verdict > k proves bw(f) > k.
SolveOutcome iterativeCompression(const ConnectivityOracle& f, std::int64_t k,
                                  const SolverConfig& config = {});

struct SearchResult {
  std::int64_t width = 0;
  BranchDecomposition decomposition;
};

// First k >= max_v f({v}) accepted by iterativeCompression.
SearchResult searchMinWidth(const ConnectivityOracle& f,
                            const SolverConfig& config = {});

// Interpolation of f onto a prefix of the ground set: universe position j
// stands for elements[j], and evaluation minimizes f over the suffix.
// Constrained minimization reduces to the same constraints on f, so the
// fast path is always available and matroid backing is inherited.
class PrefixOracle final : public ConnectivityOracle {
 public:
  PrefixOracle(const ConnectivityOracle& base, std::vector<int> elements,
               sfm::SfmOptions options = {});

  bool chainMatroidBacked() const override {
    return base_.chainMatroidBacked();
  }
  std::optional<ConstrainedMinimum> tryFastConstrainedMin(
      const ElementSet& forcedIn, const ElementSet& forcedOut) const override;

 protected:
  std::int64_t evaluateUncached(const ElementSet& x) const override;

 private:
  ElementSet lift(const ElementSet& x) const;

  const ConnectivityOracle& base_;
  std::vector<int> elements_;
  sfm::SfmOptions options_;
};

}  // namespace branchdec
