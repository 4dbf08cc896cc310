#include "branchdec/solver.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <utility>

#include "branchdec/contraction.hpp"
#include "branchdec/errors.hpp"
#include "branchdec/matroid.hpp"
#include "branchdec/split.hpp"

namespace branchdec {

namespace {

void checkConfig(const SolverConfig& config) {
  BD_USAGE(config.baseThreshold >= 4, "base threshold must be at least 4");
}

// Routes merged-oracle constrained minimization through the base oracle's
// fast path, rounding the raw minimizer onto this level's blocks.  Nested
// merges chain: each level rounds only its own history.
void installFastMin(MergedOracle& merged) {
  if (!merged.base().chainMatroidBacked()) return;
  merged.setFastMin([](const ConnectivityOracle& base,
                       const MergedGroundSet& ground, const ElementSet& in,
                       const ElementSet& out)
                        -> std::optional<ConstrainedMinimum> {
    std::optional<ConstrainedMinimum> raw = base.tryFastConstrainedMin(in, out);
    if (!raw) return std::nullopt;
    std::optional<ElementSet> rounded =
        roundToBlocks(base, raw->minimizer, ground.history(), in, out);
    if (!rounded) return std::nullopt;
    return ConstrainedMinimum{*rounded, base.evaluate(*rounded)};
  });
}

// Leaf-insertion enumeration of subcubic trees with an interpolated lower
// bound: a completion of a partial tree keeps, for every present edge, some
// edge whose cut agrees with it on the inserted prefix.
class ExactSearch {
 public:
  ExactSearch(const ConnectivityOracle& f, const SolverConfig& config)
      : f_(f), table_(f, config.sfm), n_(f.universeSize()) {}

  void run(const BranchDecomposition& dec, int next) {
    if (next == n_) {
      const std::int64_t width = decompositionWidth(f_, dec).width;
      if (!best_ || width < bestWidth_) {
        bestWidth_ = width;
        best_ = dec;
      }
      return;
    }
    ElementSet prefix = ElementSet::empty(n_);
    for (int j = 0; j <= next; ++j) prefix.add(j);
    const bool childFull = next + 1 == n_;
    for (const auto& [u, v] : dec.edges()) {
      BranchDecomposition child = insertLeafOnEdge(dec, u, v, next);
      // Complete trees are never pruned; ties keep the first tree found.
      if (!childFull && best_ && lowerBound(child, prefix) >= bestWidth_) {
        continue;
      }
      run(child, next + 1);
    }
  }

  std::int64_t bestWidth() const { return bestWidth_; }
  std::optional<BranchDecomposition>&& takeBest() { return std::move(best_); }

 private:
  std::int64_t lowerBound(const BranchDecomposition& dec,
                          const ElementSet& prefix) {
    std::int64_t bound = 0;
    for (const auto& [u, v] : dec.edges()) {
      ElementSet inSide = leafSideAcross(dec, u, v);
      ElementSet outSide = prefix - inSide;
      if (!inSide.contains(0)) std::swap(inSide, outSide);
      bound = std::max(bound, table_.get(inSide, outSide).value);
    }
    return bound;
  }

  const ConnectivityOracle& f_;
  sfm::FMinTable table_;
  int n_ = 0;
  std::int64_t bestWidth_ = 0;
  std::optional<BranchDecomposition> best_;
};

SolveOutcome exactOutcome(const ConnectivityOracle& f, std::int64_t k,
                          const SolverConfig& config) {
  ExactBaseResult exact = exactBase(f, config);
  if (exact.width > k) return {};
  BD_REQUIRE(exact.decomposition.has_value(),
             "exact search reached an empty ground set");
  return {std::move(exact.decomposition)};
}

int nodeLabeledAs(const BranchDecomposition& dec, int label) {
  for (int v = 0; v < dec.nodeCount(); ++v) {
    if (dec.leafLabel[static_cast<std::size_t>(v)] == label) return v;
  }
  BD_REQUIRE(false, "decomposition lost a leaf label");
  return -1;
}

}  // namespace

ExactBaseResult exactBase(const ConnectivityOracle& f,
                          const SolverConfig& config) {
  checkConfig(config);
  const int n = f.universeSize();
  if (n <= 1) return {0, std::nullopt};
  BD_USAGE(n <= config.baseThreshold,
           "ground set exceeds the exact-search threshold");
  ExactSearch search(f, config);
  search.run(BranchDecomposition::singleEdge(n, 0, 1), 2);
  ExactBaseResult result{search.bestWidth(), search.takeBest()};
  BD_REQUIRE(result.decomposition.has_value(),
             "exact search produced no decomposition");
  return result;
}

SolveOutcome compress(const ConnectivityOracle& f,
                      const BranchDecomposition& dec, std::int64_t k,
                      const SolverConfig& config) {
  checkConfig(config);
  BD_USAGE(k >= 0, "compression target must be nonnegative");
  const int n = f.universeSize();
  BD_USAGE(dec.groundSize == n,
           "decomposition ground set does not match the oracle");
  const std::int64_t width = decompositionWidth(f, dec).width;
  for (int v = 0; v < n; ++v) {
    // Every decomposition has a leaf edge cutting {v}.
    if (f.evaluate(ElementSet::singleton(n, v)) > k) return {};
  }
  if (width <= k) return {dec};
  if (n <= config.baseThreshold) return exactOutcome(f, k, config);

  const Cut cut = titanicSplit(f, dec, config.sfm);
  const ElementSet& a = cut.side;
  const ElementSet coA = a.complement();
  // Both sides titanic forces every decomposition to width >= f(a).
  if (cut.value > k) return {};
  if (std::min(a.count(), coA.count()) <= 1) {
    // Merging would not shrink the ground set; fall back to exact search.
    SolverConfig relaxed = config;
    relaxed.baseThreshold = std::max(config.baseThreshold, n);
    return exactOutcome(f, k, relaxed);
  }

  MergeOutcome mergeA = mergeBlock(MergedGroundSet(n), a);
  MergedOracle oracleA(f, mergeA.ground);
  installFastMin(oracleA);
  BranchDecomposition decA = convertDecomposition(
      f, dec, a, ConvertMode::bothTitanic, width, config.debugChecks);
  SolveOutcome outA = compress(oracleA, decA, k, config);
  if (outA.exceeded()) return {};

  MergeOutcome mergeB = mergeBlock(MergedGroundSet(n), coA);
  MergedOracle oracleB(f, mergeB.ground);
  installFastMin(oracleB);
  BranchDecomposition decB = convertDecomposition(
      f, dec, coA, ConvertMode::bothTitanic, width, config.debugChecks);
  SolveOutcome outB = compress(oracleB, decB, k, config);
  if (outB.exceeded()) return {};

  BranchDecomposition glued = glueDecompositions(
      *outA.decomposition, expandBlocks(mergeA.ground), mergeA.mergedId,
      *outB.decomposition, expandBlocks(mergeB.ground), mergeB.mergedId, n);
  if (config.debugChecks) {
    BD_REQUIRE(decompositionWidth(f, glued).width <= k,
               "glued decomposition exceeded the compression target");
  }
  return {std::move(glued)};
}

PrefixOracle::PrefixOracle(const ConnectivityOracle& base,
                           std::vector<int> elements, sfm::SfmOptions options)
    : ConnectivityOracle(static_cast<int>(elements.size())),
      base_(base),
      elements_(std::move(elements)),
      options_(options) {
  std::vector<char> seen(static_cast<std::size_t>(base.universeSize()), 0);
  for (int e : elements_) {
    BD_USAGE(e >= 0 && e < base.universeSize() &&
                 !seen[static_cast<std::size_t>(e)],
             "prefix elements must be distinct base elements");
    seen[static_cast<std::size_t>(e)] = 1;
  }
}

ElementSet PrefixOracle::lift(const ElementSet& x) const {
  ElementSet lifted = ElementSet::empty(base_.universeSize());
  x.forEach([&](int j) { lifted.add(elements_[static_cast<std::size_t>(j)]); });
  return lifted;
}

std::int64_t PrefixOracle::evaluateUncached(const ElementSet& x) const {
  return sfm::minimizeConstrained(base_, lift(x), lift(x.complement()),
                                  options_)
      .value;
}

std::optional<ConstrainedMinimum> PrefixOracle::tryFastConstrainedMin(
    const ElementSet& forcedIn, const ElementSet& forcedOut) const {
  // Constrained minimization over the interpolation equals constrained
  // minimization over the base with lifted constraints; the suffix stays
  // free either way.  Always answers, so work never doubles up across the
  // two universes.
  ConstrainedMinimum raw = sfm::minimizeConstrained(base_, lift(forcedIn),
                                                    lift(forcedOut), options_);
  ElementSet projected = ElementSet::empty(universeSize());
  for (int j = 0; j < universeSize(); ++j) {
    if (raw.minimizer.contains(elements_[static_cast<std::size_t>(j)])) {
      projected.add(j);
    }
  }
  return ConstrainedMinimum{projected, raw.value};
}

SolveOutcome iterativeCompression(const ConnectivityOracle& f, std::int64_t k,
                                  const SolverConfig& config) {
  checkConfig(config);
  BD_USAGE(k >= 0, "compression target must be nonnegative");
  const int n = f.universeSize();
  BD_USAGE(n >= 2, "iterative compression needs at least two elements");
  for (int v = 0; v < n; ++v) {
    if (f.evaluate(ElementSet::singleton(n, v)) > k) return {};
  }
  if (n == 2) return {BranchDecomposition::singleEdge(2, 0, 1)};

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  if (config.shuffleSeed) {
    std::mt19937_64 gen(*config.shuffleSeed);
    for (int i = n - 1; i >= 1; --i) {
      const int j = static_cast<int>(gen() % static_cast<std::uint64_t>(i + 1));
      std::swap(order[static_cast<std::size_t>(i)],
                order[static_cast<std::size_t>(j)]);
    }
  }

  // Leaves carry prefix positions until the final relabeling.
  BranchDecomposition current = BranchDecomposition::star3(3, 0, 1, 2);
  for (int i = 3; i <= n; ++i) {
    std::vector<int> prefixElems(order.begin(), order.begin() + i);
    PrefixOracle prefix(f, std::move(prefixElems), config.sfm);
    if (config.debugChecks) {
      // One insertion stretches each cut by at most the singleton bound.
      BD_REQUIRE(decompositionWidth(prefix, current).width <= 2 * k,
                 "extension step exceeded twice the target width");
    }
    SolveOutcome outcome = compress(prefix, current, k, config);
    if (outcome.exceeded()) return {};
    current = std::move(*outcome.decomposition);
    if (i == n) break;
    const int leafNode = nodeLabeledAs(current, i - 1);
    const int neighbor = current.adj[static_cast<std::size_t>(leafNode)][0];
    current = insertLeafOnEdge(current, leafNode, neighbor, i);
    current.groundSize = i + 1;
  }

  BranchDecomposition result = relabelLeaves(current, order, n);
  if (config.debugChecks) {
    BD_REQUIRE(decompositionWidth(f, result).width <= k,
               "iterative compression exceeded its target width");
  }
  return {std::move(result)};
}

SearchResult searchMinWidth(const ConnectivityOracle& f,
                            const SolverConfig& config) {
  checkConfig(config);
  const int n = f.universeSize();
  BD_USAGE(n >= 2, "width search needs at least two elements");
  std::int64_t k = 0;
  for (int v = 0; v < n; ++v) {
    k = std::max(k, f.evaluate(ElementSet::singleton(n, v)));
  }
  for (;; ++k) {
    SolveOutcome outcome = iterativeCompression(f, k, config);
    if (!outcome.exceeded()) return {k, std::move(*outcome.decomposition)};
  }
}

}  // namespace branchdec
