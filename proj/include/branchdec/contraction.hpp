#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "branchdec/decomposition.hpp"
#include "branchdec/oracle.hpp"

namespace branchdec {

class MergedGroundSet;
struct MergeOutcome;

// Replaces the listed blocks by their union.  Merging a single block is the
// identity and leaves the history untouched.
MergeOutcome mergeBlock(const MergedGroundSet& ground, const ElementSet& blockIds);

// Partition of an original ground set into blocks after nested merges.
// Block ids stay sorted by smallest original element, so the id order of
// surviving blocks never changes across a merge.
class MergedGroundSet {
 public:
  explicit MergedGroundSet(int originalSize);

  int originalSize() const { return originalSize_; }
  int blockCount() const { return static_cast<int>(blocks_.size()); }
  const ElementSet& block(int id) const;
  int blockOf(int originalElement) const;

  // Union of the given blocks as a set of original elements.
  ElementSet expand(const ElementSet& blockIds) const;

  // Every union a merge ever formed, in creation order.  Laminar.
  const std::vector<ElementSet>& history() const { return history_; }

 private:
  friend MergeOutcome mergeBlock(const MergedGroundSet&, const ElementSet&);

  int originalSize_ = 0;
  std::vector<ElementSet> blocks_;
  std::vector<int> blockOf_;
  std::vector<ElementSet> history_;
};

struct MergeOutcome {
  MergedGroundSet ground;
  // Old block id -> new block id; every merged block maps to mergedId.
  std::vector<int> oldToNew;
  int mergedId = 0;
};

// Per-block leaf sets over the original universe, for gluing and for width
// checks against the base oracle.
std::vector<ElementSet> expandBlocks(const MergedGroundSet& ground);

// The base function with ground elements merged along a block partition:
// evaluates a set of block ids as f on the union of those blocks.  Inherits
// symmetry, submodularity and f(empty) = 0 from the base.
class MergedOracle final : public ConnectivityOracle {
 public:
  // Constrained minimization over original elements that promises a
  // minimizer aligned with the current blocks.
  using BlockConstrainedMin = std::function<std::optional<ConstrainedMinimum>(
      const ConnectivityOracle& base, const MergedGroundSet& ground,
      const ElementSet& forcedIn, const ElementSet& forcedOut)>;

  MergedOracle(const ConnectivityOracle& base, MergedGroundSet ground);

  const MergedGroundSet& ground() const { return ground_; }
  const ConnectivityOracle& base() const { return base_; }

  // Installed by solvers whose base oracle supports block-aligned
  // minimization; consulted by tryFastConstrainedMin.
  void setFastMin(BlockConstrainedMin fastMin) { fastMin_ = std::move(fastMin); }

  bool chainMatroidBacked() const override { return static_cast<bool>(fastMin_); }
  std::optional<ConstrainedMinimum> tryFastConstrainedMin(
      const ElementSet& forcedIn, const ElementSet& forcedOut) const override;

 protected:
  std::int64_t evaluateUncached(const ElementSet& x) const override;

 private:
  const ConnectivityOracle& base_;
  MergedGroundSet ground_;
  BlockConstrainedMin fastMin_;
};

enum class ConvertMode {
  // Claims f(a) <= k; the output width is at most max(width(dec), f(a)).
  aTitanicAndSmallCut,
  // Claims the complement of a is titanic too; the output width never
  // exceeds the input width.
  bothTitanic,
};

// Rebuilds a decomposition of f with the titanic set `a` merged into one
// element, over the universe mergeBlock would produce.  The titanic claims
// behind `mode` are trusted; violating them surfaces as an internal error
// from the orientation or sink invariants.
BranchDecomposition convertDecomposition(const ConnectivityOracle& f,
                                         const BranchDecomposition& dec,
                                         const ElementSet& a, ConvertMode mode,
                                         std::int64_t k, bool debugChecks = true);

}  // namespace branchdec
