#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "branchdec/oracle.hpp"

namespace branchdec {

// Unrooted tree with every node of degree 1 or 3 and the degree-1 nodes in
// bijection with a ground set of size >= 2.  Ground sets of size <= 1 have no
// decomposition and width 0 by convention.
struct BranchDecomposition {
  int groundSize = 0;
  std::vector<std::vector<int>> adj;  // node -> neighbours
  std::vector<int> leafLabel;         // node -> element id, -1 on internal nodes

  int nodeCount() const { return static_cast<int>(adj.size()); }
  int degree(int v) const { return static_cast<int>(adj[static_cast<std::size_t>(v)].size()); }

  // Edges as (min,max) pairs in ascending order.  Deterministic.
  std::vector<std::pair<int, int>> edges() const;

  static BranchDecomposition singleEdge(int groundSize, int label0, int label1);
  static BranchDecomposition star3(int groundSize, int label0, int label1, int label2);
  // Spine tree whose leaves appear in the given order.  order.size() >= 2.
  static BranchDecomposition caterpillar(int groundSize, const std::vector<int>& order);
};

struct ValidationReport {
  bool ok = true;
  std::string message;
};

// Checks tree shape, degrees and the leaf bijection.  Returns the first
// violation instead of throwing.
ValidationReport validateDecomposition(const BranchDecomposition& dec);

// Leaf labels in the component of `towards` after removing edge (from, towards).
ElementSet leafSideAcross(const BranchDecomposition& dec, int from, int towards);

struct WidthReport {
  std::int64_t width = 0;
  // Aligned with dec.edges(); value of the cut induced by each edge.
  std::vector<std::int64_t> edgeWidths;
};

// Validates, then evaluates every edge cut.  Throws ValidationError on an
// invalid decomposition.
WidthReport decompositionWidth(const ConnectivityOracle& oracle,
                               const BranchDecomposition& dec);

// Splices out all degree-2 nodes and compacts node ids (ascending old id).
BranchDecomposition smoothen(const BranchDecomposition& dec);

// Subdivides edge (u,v) and hangs a new leaf with the given label off the
// subdivision node.
BranchDecomposition insertLeafOnEdge(const BranchDecomposition& dec, int u, int v,
                                     int label);

// Drops the leaves whose labels lie in `labels`, prunes the dangling unlabeled
// nodes and smoothens.  At least two labeled leaves must survive.
BranchDecomposition removeLeavesByLabel(const BranchDecomposition& dec,
                                        const ElementSet& labels);

// Replaces every leaf label l by map[l].
BranchDecomposition relabelLeaves(const BranchDecomposition& dec,
                                  const std::vector<int>& map, int newGroundSize);

// Joins two decompositions of complementary merged ground sets.  leafSets*
// give, per element id of the respective child universe, the subset of the
// parent universe it stands for; mergedLabel* name the single merged element
// on each side.  The merged leaves are removed and their neighbours joined.
BranchDecomposition glueDecompositions(const BranchDecomposition& dec1,
                                       const std::vector<ElementSet>& leafSets1,
                                       int mergedLabel1,
                                       const BranchDecomposition& dec2,
                                       const std::vector<ElementSet>& leafSets2,
                                       int mergedLabel2, int parentUniverse);

}  // namespace branchdec
