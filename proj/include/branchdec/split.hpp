#pragma once

#include <cstdint>

#include "branchdec/decomposition.hpp"
#include "branchdec/element_set.hpp"
#include "branchdec/oracle.hpp"
#include "branchdec/polymatroid.hpp"
#include "branchdec/sfm.hpp"

namespace branchdec {

// A bipartition of the ground set, stored as the side containing element 0.
struct Cut {
  ElementSet side;
  std::int64_t value = -1;  // f(side); -1 when no oracle was consulted
};

// Edge cut of the tree maximizing min(|A|, |B|), ties to the smallest edge
// index. Subcubic trees always admit one with at least n/3 leaves per side.
Cut balancedStartCut(const BranchDecomposition& dec);

// Refines the balanced start cut until both sides are titanic. Each
// refinement replaces the cut by the largest witness part, so the cut value
// strictly decreases and both sides keep at least n/3^(width+1) elements.
Cut titanicSplit(const ConnectivityOracle& f, const BranchDecomposition& dec,
                 const sfm::SfmOptions& sfmOptions = {},
                 const CoverOptions& coverOptions = {});

}  // namespace branchdec
