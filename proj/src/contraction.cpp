#include "branchdec/contraction.hpp"

#include <algorithm>

#include "branchdec/errors.hpp"

namespace branchdec {

MergedGroundSet::MergedGroundSet(int originalSize) : originalSize_(originalSize) {
  BD_USAGE(originalSize >= 0, "negative ground size");
  blocks_.reserve(static_cast<std::size_t>(originalSize));
  blockOf_.resize(static_cast<std::size_t>(originalSize));
  for (int v = 0; v < originalSize; ++v) {
    blocks_.push_back(ElementSet::singleton(originalSize, v));
    blockOf_[static_cast<std::size_t>(v)] = v;
  }
}

const ElementSet& MergedGroundSet::block(int id) const {
  BD_USAGE(id >= 0 && id < blockCount(), "block id out of range");
  return blocks_[static_cast<std::size_t>(id)];
}

int MergedGroundSet::blockOf(int originalElement) const {
  BD_USAGE(originalElement >= 0 && originalElement < originalSize_, "element out of range");
  return blockOf_[static_cast<std::size_t>(originalElement)];
}

ElementSet MergedGroundSet::expand(const ElementSet& blockIds) const {
  BD_USAGE(blockIds.universeSize() == blockCount(), "block ids over the wrong universe");
  ElementSet result(originalSize_);
  blockIds.forEach([&](int id) { result = result | blocks_[static_cast<std::size_t>(id)]; });
  return result;
}

MergeOutcome mergeBlock(const MergedGroundSet& ground, const ElementSet& blockIds) {
  BD_USAGE(blockIds.universeSize() == ground.blockCount(), "block ids over the wrong universe");
  BD_USAGE(!blockIds.isEmpty(), "nothing to merge");
  BD_USAGE(!blockIds.isFull(), "cannot merge every block");

  std::vector<int> oldToNew(static_cast<std::size_t>(ground.blockCount()));
  if (blockIds.count() == 1) {
    for (int b = 0; b < ground.blockCount(); ++b) oldToNew[static_cast<std::size_t>(b)] = b;
    return {ground, std::move(oldToNew), blockIds.first()};
  }

  ElementSet unionBlock(ground.originalSize());
  blockIds.forEach([&](int b) { unionBlock = unionBlock | ground.block(b); });

  MergedGroundSet next = ground;
  next.blocks_.clear();
  int mergedId = -1;
  for (int b = 0; b < ground.blockCount(); ++b) {
    if (b == blockIds.first()) {
      mergedId = static_cast<int>(next.blocks_.size());
      next.blocks_.push_back(unionBlock);
      oldToNew[static_cast<std::size_t>(b)] = mergedId;
    } else if (blockIds.contains(b)) {
      oldToNew[static_cast<std::size_t>(b)] = mergedId;
    } else {
      oldToNew[static_cast<std::size_t>(b)] = static_cast<int>(next.blocks_.size());
      next.blocks_.push_back(ground.block(b));
    }
  }
  for (int id = 0; id < next.blockCount(); ++id)
    next.blocks_[static_cast<std::size_t>(id)].forEach(
        [&](int v) { next.blockOf_[static_cast<std::size_t>(v)] = id; });
  next.history_.push_back(unionBlock);
  return {std::move(next), std::move(oldToNew), mergedId};
}

std::vector<ElementSet> expandBlocks(const MergedGroundSet& ground) {
  std::vector<ElementSet> sets;
  sets.reserve(static_cast<std::size_t>(ground.blockCount()));
  for (int id = 0; id < ground.blockCount(); ++id) sets.push_back(ground.block(id));
  return sets;
}

MergedOracle::MergedOracle(const ConnectivityOracle& base, MergedGroundSet ground)
    : ConnectivityOracle(ground.blockCount()), base_(base), ground_(std::move(ground)) {
  BD_USAGE(ground_.originalSize() == base.universeSize(),
           "merged ground does not partition the base universe");
}

std::int64_t MergedOracle::evaluateUncached(const ElementSet& x) const {
  return base_.evaluate(ground_.expand(x));
}

std::optional<ConstrainedMinimum> MergedOracle::tryFastConstrainedMin(
    const ElementSet& forcedIn, const ElementSet& forcedOut) const {
  if (!fastMin_) return std::nullopt;
  auto raw = fastMin_(base_, ground_, ground_.expand(forcedIn), ground_.expand(forcedOut));
  if (!raw) return std::nullopt;
  ElementSet blockSet(universeSize());
  for (int id = 0; id < ground_.blockCount(); ++id)
    if (ground_.block(id).isSubsetOf(raw->minimizer)) blockSet.add(id);
  BD_REQUIRE(ground_.expand(blockSet) == raw->minimizer,
             "fast minimizer is not a union of blocks");
  return ConstrainedMinimum{blockSet, raw->value};
}

namespace {

// Smallest internal node of the sink component of the orientation digraph,
// after contracting bidirected edges.  Arcs point along nonincreasing f once
// the merged set is removed, so the sink hosts the attachment point.
int locateSink(const BranchDecomposition& dec, const std::vector<std::pair<int, int>>& edges,
               const std::vector<bool>& towardU, const std::vector<bool>& towardV) {
  const int nodes = dec.nodeCount();
  std::vector<int> comp(static_cast<std::size_t>(nodes), -1);
  std::vector<std::vector<int>> bidirected(static_cast<std::size_t>(nodes));
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (towardU[i] && towardV[i]) {
      bidirected[static_cast<std::size_t>(edges[i].first)].push_back(edges[i].second);
      bidirected[static_cast<std::size_t>(edges[i].second)].push_back(edges[i].first);
    }
  int componentCount = 0;
  for (int start = 0; start < nodes; ++start) {
    if (comp[static_cast<std::size_t>(start)] >= 0) continue;
    std::vector<int> stack{start};
    comp[static_cast<std::size_t>(start)] = componentCount;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : bidirected[static_cast<std::size_t>(v)])
        if (comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = componentCount;
          stack.push_back(w);
        }
    }
    ++componentCount;
  }

  std::vector<bool> hasOutgoing(static_cast<std::size_t>(componentCount), false);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (towardU[i] == towardV[i]) continue;
    const int source = towardV[i] ? edges[i].first : edges[i].second;
    hasOutgoing[static_cast<std::size_t>(comp[static_cast<std::size_t>(source)])] = true;
  }
  int sink = -1;
  for (int c = 0; c < componentCount; ++c)
    if (!hasOutgoing[static_cast<std::size_t>(c)]) {
      BD_REQUIRE(sink < 0, "orientation produced two sink components");
      sink = c;
    }
  BD_REQUIRE(sink >= 0, "orientation produced no sink component");

  int chosen = -1;
  for (int v = 0; v < nodes; ++v) {
    if (comp[static_cast<std::size_t>(v)] != sink) continue;
    BD_REQUIRE(dec.leafLabel[static_cast<std::size_t>(v)] < 0, "orientation sank into a leaf");
    if (chosen < 0) chosen = v;
  }
  BD_REQUIRE(chosen >= 0 && dec.degree(chosen) == 3, "sink component has no internal node");
  return chosen;
}

}  // namespace

BranchDecomposition convertDecomposition(const ConnectivityOracle& f,
                                         const BranchDecomposition& dec,
                                         const ElementSet& a, ConvertMode mode,
                                         std::int64_t k, bool debugChecks) {
  const int n = f.universeSize();
  BD_USAGE(a.universeSize() == n && dec.groundSize == n, "set or decomposition universe mismatch");
  BD_USAGE(!a.isEmpty() && !a.isFull(), "merged set must be a proper nonempty subset");
  const ValidationReport report = validateDecomposition(dec);
  BD_USAGE(report.ok, "conversion input: " + report.message);

  const std::int64_t fA = f.evaluate(a);
  if (mode == ConvertMode::aTitanicAndSmallCut)
    BD_USAGE(fA <= k, "f of the merged set exceeds the width bound");

  const MergeOutcome merge = mergeBlock(MergedGroundSet(n), a);
  const int mergedSize = merge.ground.blockCount();
  const auto outputBound = [&](std::int64_t inputWidth) {
    return mode == ConvertMode::bothTitanic ? inputWidth : std::max(inputWidth, fA);
  };
  const auto checkOutput = [&](const BranchDecomposition& result, std::int64_t inputWidth) {
    if (!debugChecks) return;
    const ValidationReport outReport = validateDecomposition(result);
    BD_REQUIRE(outReport.ok, "conversion output: " + outReport.message);
    MergedOracle mergedOracle(f, merge.ground);
    BD_REQUIRE(decompositionWidth(mergedOracle, result).width <= outputBound(inputWidth),
               "conversion raised the width");
  };

  // Merging one element relabels nothing.
  if (a.count() == 1) return dec;

  // Two merged elements admit a unique tree.
  if (mergedSize == 2) {
    BranchDecomposition result = BranchDecomposition::singleEdge(2, 0, 1);
    if (debugChecks) checkOutput(result, decompositionWidth(f, dec).width);
    return result;
  }

  const auto edges = dec.edges();
  std::vector<ElementSet> sideToSecond(edges.size());
  std::vector<bool> towardU(edges.size(), false);
  std::vector<bool> towardV(edges.size(), false);
  std::int64_t inputWidth = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    const ElementSet side = leafSideAcross(dec, u, v);
    sideToSecond[i] = side;
    const std::int64_t cut = f.evaluate(side);
    inputWidth = std::max(inputWidth, cut);
    // The far side from an endpoint is the component of the other one.
    towardV[i] = f.evaluate(side.complement() - a) <= cut;
    towardU[i] = f.evaluate(side - a) <= cut;
    if (dec.leafLabel[static_cast<std::size_t>(v)] >= 0) towardV[i] = false;
    if (dec.leafLabel[static_cast<std::size_t>(u)] >= 0) towardU[i] = false;
    BD_REQUIRE(towardU[i] || towardV[i], "conversion found an unoriented edge");
  }
  BD_USAGE(inputWidth <= k, "input decomposition exceeds the width bound");

  const int s = locateSink(dec, edges, towardU, towardV);

  // The three far sides from s tripartition the ground set; the merged set
  // being titanic guarantees one of them captures f(a) worth of it.
  int attachIndex = -1;
  for (std::size_t i = 0; i < edges.size() && attachIndex < 0; ++i) {
    if (edges[i].first != s && edges[i].second != s) continue;
    const ElementSet farSide =
        edges[i].first == s ? sideToSecond[i] : sideToSecond[i].complement();
    if (f.evaluate(farSide & a) >= fA) attachIndex = static_cast<int>(i);
  }
  BD_REQUIRE(attachIndex >= 0, "no edge at the sink captures the merged set");

  // Subdivide, hang the block leaf under a temporary label, drop the merged
  // leaves, then renumber into the merged universe.
  const int temporary = n;
  BranchDecomposition grown =
      insertLeafOnEdge(dec, edges[static_cast<std::size_t>(attachIndex)].first,
                       edges[static_cast<std::size_t>(attachIndex)].second, temporary);
  ElementSet dropped(n + 1);
  a.forEach([&](int v) { dropped.add(v); });
  std::vector<int> labelMap = merge.oldToNew;
  labelMap.push_back(merge.mergedId);
  BranchDecomposition result =
      relabelLeaves(removeLeavesByLabel(grown, dropped), labelMap, mergedSize);
  checkOutput(result, inputWidth);
  return result;
}

}  // namespace branchdec
