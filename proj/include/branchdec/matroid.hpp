#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "branchdec/element_set.hpp"
#include "branchdec/instances.hpp"
#include "branchdec/oracle.hpp"
#include "branchdec/solver.hpp"

namespace branchdec {

// Matroid rank oracle with the same memoization contract as
// ConnectivityOracle.  Ranks are not symmetric, so every set is its own key.
class MatroidRankOracle {
 public:
  explicit MatroidRankOracle(int groundSize);
  virtual ~MatroidRankOracle() = default;

  int groundSize() const { return groundSize_; }
  std::int64_t rank(const ElementSet& x) const;
  std::int64_t underlyingCalls() const { return calls_; }

 protected:
  virtual std::int64_t rankUncached(const ElementSet& x) const = 0;

 private:
  int groundSize_ = 0;
  mutable std::unordered_map<ElementSet, std::int64_t, ElementSetHash> memo_;
  mutable std::int64_t calls_ = 0;
};

// Samples normalization, unit increase, and submodularity.  Returns a
// description of the first violation found, if any.
std::optional<std::string> checkRankAxioms(const MatroidRankOracle& oracle,
                                           std::uint64_t seed,
                                           int samples = 1000);

// Ground set: matrix columns.  Rank by GF(2) elimination per query.
class Gf2Matroid final : public MatroidRankOracle {
 public:
  explicit Gf2Matroid(BitMatrix matrix);

 protected:
  std::int64_t rankUncached(const ElementSet& x) const override;

 private:
  BitMatrix matrix_;
  std::vector<int> allRows_;
};

// Ground set: edges.  Rank counts edges joining distinct components.
class GraphicMatroid final : public MatroidRankOracle {
 public:
  explicit GraphicMatroid(const Graph& graph);

 protected:
  std::int64_t rankUncached(const ElementSet& x) const override;

 private:
  int vertexCount_ = 0;
  std::vector<std::array<int, 2>> endpoints_;
};

class UniformMatroid final : public MatroidRankOracle {
 public:
  UniformMatroid(int groundSize, int rank);

 protected:
  std::int64_t rankUncached(const ElementSet& x) const override;

 private:
  std::int64_t rank_ = 0;
};

// Explicit rank table over at most 16 elements.  The constructor checks the
// rank axioms exhaustively and rejects violations.
class TableMatroid final : public MatroidRankOracle {
 public:
  TableMatroid(int groundSize, std::vector<std::int64_t> values);

 protected:
  std::int64_t rankUncached(const ElementSet& x) const override;

 private:
  std::vector<std::int64_t> values_;
};

// Minor obtained by contracting and deleting disjoint sets.  The ground
// universe is unchanged; queries must avoid both removed sets.
class MatroidMinor final : public MatroidRankOracle {
 public:
  MatroidMinor(const MatroidRankOracle& base, const ElementSet& contracted,
               const ElementSet& deleted);

 protected:
  std::int64_t rankUncached(const ElementSet& x) const override;

 private:
  const MatroidRankOracle& base_;
  ElementSet contracted_;
  ElementSet deleted_;
  std::int64_t contractedRank_ = 0;
};

struct IntersectionResult {
  ElementSet common;  // maximum common independent set
  ElementSet dual;    // U with |common| = r1(U) + r2(ground - U)
};

// Augmenting-path matroid intersection restricted to the given ground set.
// The dual certificate is verified before returning; a mismatch means the
// rank oracles violate the matroid axioms.
IntersectionResult matroidIntersection(const MatroidRankOracle& r1,
                                       const MatroidRankOracle& r2,
                                       const ElementSet& ground);

// min lambda(Z) over forcedIn ⊆ Z ⊆ E−forcedOut, computed by intersecting
// the minors M/forcedIn\forcedOut and M\forcedIn/forcedOut.
ConstrainedMinimum lambdaMin(const MatroidRankOracle& rank,
                             const ElementSet& forcedIn,
                             const ElementSet& forcedOut);

// Connectivity function lambda(X) = r(X) + r(E−X) − r(E); constrained
// minimization is answered by lambdaMin instead of generic sfm.
class LambdaOracle final : public ConnectivityOracle {
 public:
  explicit LambdaOracle(const MatroidRankOracle& rank);

  const MatroidRankOracle& rankOracle() const { return rank_; }
  bool chainMatroidBacked() const override { return true; }
  std::optional<ConstrainedMinimum> tryFastConstrainedMin(
      const ElementSet& forcedIn, const ElementSet& forcedOut) const override;

 protected:
  std::int64_t evaluateUncached(const ElementSet& x) const override;

 private:
  const MatroidRankOracle& rank_;
  std::int64_t fullRank_ = 0;
};

// Rounds a raw minimizer onto block boundaries, innermost block first.  Each
// accepted step keeps f non-increasing; when a split block admits no
// non-increasing move the function returns nullopt and the caller falls back
// to generic constrained minimization.
std::optional<ElementSet> roundToBlocks(const ConnectivityOracle& f,
                                        ElementSet z,
                                        const std::vector<ElementSet>& blocks,
                                        const ElementSet& forcedIn,
                                        const ElementSet& forcedOut);

// Decides whether the matroid's branch-width is at most k; every constrained
// minimization inside the solver routes through lambdaMin.
SolveOutcome matroidBranchWidth(const MatroidRankOracle& rank, std::int64_t k,
                                const SolverConfig& config = {});

}  // namespace branchdec
