#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "branchdec/decomposition.hpp"

namespace branchdec {

struct DecompositionFile {
  BranchDecomposition dec;
  std::optional<std::int64_t> width;
};

// Renumbers nodes by DFS preorder from the leaf with the smallest label,
// visiting neighbors in ascending current id. Equal trees serialize equally.
BranchDecomposition canonicalize(const BranchDecomposition& dec);

void writeDecomposition(std::ostream& out, const BranchDecomposition& dec,
                        std::optional<std::int64_t> width);

DecompositionFile readDecomposition(std::istream& in);

}  // namespace branchdec
