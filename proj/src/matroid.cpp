#include "branchdec/matroid.hpp"

#include <deque>
#include <numeric>
#include <random>
#include <utility>

#include "branchdec/errors.hpp"

namespace branchdec {

MatroidRankOracle::MatroidRankOracle(int groundSize) : groundSize_(groundSize) {
  BD_USAGE(groundSize >= 0, "ground size must be non-negative");
}

std::int64_t MatroidRankOracle::rank(const ElementSet& x) const {
  BD_USAGE(x.universeSize() == groundSize_, "set ranked against the wrong ground set");
  auto it = memo_.find(x);
  if (it != memo_.end()) return it->second;
  ++calls_;
  const std::int64_t value = rankUncached(x);
  memo_.emplace(x, value);
  return value;
}

std::optional<std::string> checkRankAxioms(const MatroidRankOracle& oracle,
                                           std::uint64_t seed, int samples) {
  const int n = oracle.groundSize();
  if (oracle.rank(ElementSet::empty(n)) != 0) return "r(empty) != 0";

  std::mt19937_64 rng(seed);
  auto randomSet = [&] {
    ElementSet s(n);
    for (int i = 0; i < n; ++i)
      if (rng() & 1) s.add(i);
    return s;
  };

  for (int it = 0; it < samples; ++it) {
    const ElementSet x = randomSet();
    const std::int64_t rx = oracle.rank(x);
    if (rx < 0 || rx > x.count()) return "rank outside [0, |X|] on " + x.str();
    if (n == 0) continue;
    const int e = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    if (x.contains(e)) continue;
    ElementSet grown = x;
    grown.add(e);
    const std::int64_t step = oracle.rank(grown) - rx;
    if (step < 0 || step > 1) return "unit increase violated on " + x.str();
    const int f = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    if (f == e || x.contains(f)) continue;
    ElementSet withF = x;
    withF.add(f);
    ElementSet withBoth = grown;
    withBoth.add(f);
    if (oracle.rank(withBoth) - oracle.rank(withF) > step)
      return "submodularity violated on " + x.str();
  }
  return std::nullopt;
}

Gf2Matroid::Gf2Matroid(BitMatrix matrix)
    : MatroidRankOracle(matrix.cols()), matrix_(std::move(matrix)), allRows_(matrix_.rows()) {
  std::iota(allRows_.begin(), allRows_.end(), 0);
}

std::int64_t Gf2Matroid::rankUncached(const ElementSet& x) const {
  return matrix_.subrank(allRows_, x);
}

GraphicMatroid::GraphicMatroid(const Graph& graph)
    : MatroidRankOracle(static_cast<int>(graph.edges.size())),
      vertexCount_(graph.vertexCount) {
  for (const auto& edge : graph.edges) {
    BD_USAGE(edge.size() >= 1 && edge.size() <= 2,
             "graphic matroids need arity-1 or arity-2 edges");
    endpoints_.push_back({edge.front(), edge.back()});
  }
}

std::int64_t GraphicMatroid::rankUncached(const ElementSet& x) const {
  std::vector<int> parent(static_cast<std::size_t>(vertexCount_));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  std::int64_t joined = 0;
  x.forEach([&](int e) {
    const int u = find(endpoints_[static_cast<std::size_t>(e)][0]);
    const int v = find(endpoints_[static_cast<std::size_t>(e)][1]);
    if (u == v) return;
    parent[static_cast<std::size_t>(u)] = v;
    ++joined;
  });
  return joined;
}

UniformMatroid::UniformMatroid(int groundSize, int rank)
    : MatroidRankOracle(groundSize), rank_(rank) {
  BD_USAGE(rank >= 0 && rank <= groundSize, "uniform rank must lie in [0, n]");
}

std::int64_t UniformMatroid::rankUncached(const ElementSet& x) const {
  return std::min<std::int64_t>(x.count(), rank_);
}

TableMatroid::TableMatroid(int groundSize, std::vector<std::int64_t> values)
    : MatroidRankOracle(groundSize), values_(std::move(values)) {
  BD_USAGE(groundSize <= 16, "rank tables are capped at 16 elements");
  BD_USAGE(values_.size() == (std::size_t{1} << groundSize),
           "rank table must list every subset");
  if (values_[0] != 0) throw ValidationError("rank table: r(empty) != 0");
  const std::uint32_t full = static_cast<std::uint32_t>(values_.size());
  for (std::uint32_t mask = 0; mask < full; ++mask)
    for (int e = 0; e < groundSize; ++e) {
      if (mask >> e & 1) continue;
      const std::int64_t step = values_[mask | (1u << e)] - values_[mask];
      if (step < 0 || step > 1)
        throw ValidationError("rank table: unit increase violated");
      for (int f = e + 1; f < groundSize; ++f) {
        if (mask >> f & 1) continue;
        if (values_[mask | (1u << e) | (1u << f)] - values_[mask | (1u << f)] > step)
          throw ValidationError("rank table: submodularity violated");
      }
    }
}

std::int64_t TableMatroid::rankUncached(const ElementSet& x) const {
  std::uint32_t mask = 0;
  x.forEach([&](int e) { mask |= 1u << e; });
  return values_[mask];
}

MatroidMinor::MatroidMinor(const MatroidRankOracle& base, const ElementSet& contracted,
                           const ElementSet& deleted)
    : MatroidRankOracle(base.groundSize()),
      base_(base),
      contracted_(contracted),
      deleted_(deleted) {
  BD_USAGE(contracted.universeSize() == base.groundSize() &&
               deleted.universeSize() == base.groundSize(),
           "minor sets live in the wrong ground set");
  BD_USAGE(!contracted.intersects(deleted), "contracted and deleted sets overlap");
  contractedRank_ = base.rank(contracted_);
}

std::int64_t MatroidMinor::rankUncached(const ElementSet& x) const {
  BD_USAGE(!x.intersects(contracted_) && !x.intersects(deleted_),
           "minor query touches removed elements");
  return base_.rank(x | contracted_) - contractedRank_;
}

IntersectionResult matroidIntersection(const MatroidRankOracle& r1,
                                       const MatroidRankOracle& r2,
                                       const ElementSet& ground) {
  const int n = r1.groundSize();
  BD_USAGE(r2.groundSize() == n, "matroid oracles disagree on the ground set");
  BD_USAGE(ground.universeSize() == n, "ground set lives in the wrong universe");

  const std::vector<int> groundIds = ground.toIds();
  auto independent1 = [&](const ElementSet& s) { return r1.rank(s) == s.count(); };
  auto independent2 = [&](const ElementSet& s) { return r2.rank(s) == s.count(); };

  ElementSet common(n);
  while (true) {
    ElementSet sources(n);
    ElementSet sinks(n);
    for (int e : groundIds) {
      if (common.contains(e)) continue;
      ElementSet grown = common;
      grown.add(e);
      if (independent1(grown)) sources.add(e);
      if (independent2(grown)) sinks.add(e);
    }

    // Arc v->w tests an M1 exchange from I and w->v tests an M2 exchange.
    auto hasArc = [&](int v, int w) {
      if (common.contains(v) == common.contains(w)) return false;
      ElementSet swapped = common;
      if (common.contains(v)) {
        swapped.remove(v);
        swapped.add(w);
        return independent1(swapped);
      }
      swapped.remove(w);
      swapped.add(v);
      return independent2(swapped);
    };

    // Breadth-first search from all sources, ties to the smallest id.
    std::vector<int> parent(static_cast<std::size_t>(n), -2);
    std::deque<int> queue;
    int found = -1;
    for (int e : sources.toIds()) {
      parent[static_cast<std::size_t>(e)] = -1;
      if (sinks.contains(e)) {
        found = e;
        break;
      }
      queue.push_back(e);
    }
    while (found == -1 && !queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : groundIds) {
        if (parent[static_cast<std::size_t>(w)] != -2 || !hasArc(v, w)) continue;
        parent[static_cast<std::size_t>(w)] = v;
        if (sinks.contains(w)) {
          found = w;
          break;
        }
        queue.push_back(w);
      }
    }

    if (found == -1) {
      // No augmenting path: elements reaching a sink certify optimality.
      ElementSet dual = sinks;
      std::deque<int> reverseQueue;
      for (int e : sinks.toIds()) reverseQueue.push_back(e);
      while (!reverseQueue.empty()) {
        const int w = reverseQueue.front();
        reverseQueue.pop_front();
        for (int v : groundIds) {
          if (dual.contains(v) || !hasArc(v, w)) continue;
          dual.add(v);
          reverseQueue.push_back(v);
        }
      }
      if (r1.rank(dual) + r2.rank(ground - dual) != common.count())
        throw ValidationError(
            "matroid intersection certificate mismatch; a rank oracle is inconsistent");
      return IntersectionResult{common, dual};
    }

    for (int v = found; v != -1; v = parent[static_cast<std::size_t>(v)]) common.flip(v);
    if (!independent1(common) || !independent2(common))
      throw ValidationError(
          "matroid intersection augmented to a dependent set; a rank oracle is inconsistent");
  }
}

ConstrainedMinimum lambdaMin(const MatroidRankOracle& rank, const ElementSet& forcedIn,
                             const ElementSet& forcedOut) {
  const int n = rank.groundSize();
  BD_USAGE(forcedIn.universeSize() == n && forcedOut.universeSize() == n,
           "constraint sets live in the wrong ground set");
  BD_USAGE(!forcedIn.intersects(forcedOut), "forced-in and forced-out sets overlap");

  const ElementSet full = ElementSet::full(n);
  const MatroidMinor m1(rank, forcedIn, forcedOut);
  const MatroidMinor m2(rank, forcedOut, forcedIn);
  const IntersectionResult result =
      matroidIntersection(m1, m2, (full - forcedIn) - forcedOut);

  const ElementSet z = result.dual | forcedIn;
  const std::int64_t value = result.common.count() + rank.rank(forcedIn) +
                             rank.rank(forcedOut) - rank.rank(full);
  const std::int64_t direct = rank.rank(z) + rank.rank(full - z) - rank.rank(full);
  BD_REQUIRE(value == direct, "lambda minimum disagrees with direct evaluation");
  return ConstrainedMinimum{z, value};
}

LambdaOracle::LambdaOracle(const MatroidRankOracle& rank)
    : ConnectivityOracle(rank.groundSize()), rank_(rank) {
  fullRank_ = rank.rank(ElementSet::full(rank.groundSize()));
}

std::optional<ConstrainedMinimum> LambdaOracle::tryFastConstrainedMin(
    const ElementSet& forcedIn, const ElementSet& forcedOut) const {
  return lambdaMin(rank_, forcedIn, forcedOut);
}

std::int64_t LambdaOracle::evaluateUncached(const ElementSet& x) const {
  return rank_.rank(x) + rank_.rank(x.complement()) - fullRank_;
}

std::optional<ElementSet> roundToBlocks(const ConnectivityOracle& f, ElementSet z,
                                        const std::vector<ElementSet>& blocks,
                                        const ElementSet& forcedIn,
                                        const ElementSet& forcedOut) {
  const int n = f.universeSize();
  BD_USAGE(z.universeSize() == n && forcedIn.universeSize() == n &&
               forcedOut.universeSize() == n,
           "rounding sets live in the wrong universe");
  BD_USAGE(forcedIn.isSubsetOf(z) && !z.intersects(forcedOut),
           "raw minimizer violates its constraints");

  std::int64_t value = f.evaluate(z);
  for (const ElementSet& block : blocks) {
    if (!z.intersects(block) || block.isSubsetOf(z)) continue;
    const ElementSet up = z | block;
    if (!up.intersects(forcedOut) && f.evaluate(up) <= value) {
      value = f.evaluate(up);
      z = up;
      continue;
    }
    const ElementSet down = z - block;
    if (forcedIn.isSubsetOf(down) && f.evaluate(down) <= value) {
      value = f.evaluate(down);
      z = down;
      continue;
    }
    return std::nullopt;
  }
  return z;
}

SolveOutcome matroidBranchWidth(const MatroidRankOracle& rank, std::int64_t k,
                                const SolverConfig& config) {
  LambdaOracle lambda(rank);
  return iterativeCompression(lambda, k, config);
}

}  // namespace branchdec
