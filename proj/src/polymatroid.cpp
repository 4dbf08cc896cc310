#include "branchdec/polymatroid.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "branchdec/errors.hpp"

namespace branchdec {

InducedPolymatroid::InducedPolymatroid(const ConnectivityOracle& f, const ElementSet& carrier,
                                       sfm::SfmOptions options)
    : f_(f),
      carrier_(carrier),
      outside_(carrier.complement()),
      options_(options) {
  BD_USAGE(carrier.universeSize() == f.universeSize(),
           "carrier universe does not match the oracle");
}

std::int64_t InducedPolymatroid::rank(const ElementSet& x) const {
  BD_USAGE(x.isSubsetOf(carrier_), "rank argument leaves the carrier");
  auto it = memo_.find(x);
  if (it != memo_.end()) return it->second;
  std::int64_t value = sfm::minimizeConstrained(f_, x, outside_, options_).value;
  memo_.emplace(x, value);
  return value;
}

RankFn InducedPolymatroid::fn() const {
  return [this](const ElementSet& x) { return rank(x); };
}

ElementSet polymatroidClosure(const ElementSet& carrier, const RankFn& g,
                              const ElementSet& x) {
  BD_USAGE(x.isSubsetOf(carrier), "closure argument leaves the carrier");
  std::int64_t base = g(x);
  ElementSet closed = x;
  (carrier - x).forEach([&](int id) {
    ElementSet candidate = closed;
    candidate.add(id);
    if (g(candidate) == base) closed = candidate;
  });
  return closed;
}

namespace {

// Depth-first search over triples of proper flats.  Every level strictly
// raises one part's rank and ranks stay below the carrier rank, which bounds
// the depth.
struct CoverSearch {
  const ElementSet& carrier;
  const RankFn& g;
  std::int64_t carrierRank;
  const CoverOptions& options;
  std::uint64_t nodes = 0;
  std::unordered_set<std::string> visited;

  std::string key(const std::array<ElementSet, 3>& parts) const {
    std::array<const ElementSet*, 3> ordered = {&parts[0], &parts[1], &parts[2]};
    std::sort(ordered.begin(), ordered.end(),
              [](const ElementSet* a, const ElementSet* b) { return a->lexLess(*b); });
    return ordered[0]->str() + ordered[1]->str() + ordered[2]->str();
  }

  std::optional<FlatTriple> run(const std::array<ElementSet, 3>& parts, int depth) {
    ++nodes;
    if (options.nodeLimit != 0 && nodes > options.nodeLimit)
      throw UnresolvedMinimization("flat cover search exceeded its node limit");
    BD_REQUIRE(depth <= 3 * carrierRank, "cover search recursed past its depth bound");
    ElementSet uncovered = carrier - (parts[0] | parts[1] | parts[2]);
    if (uncovered.isEmpty()) return FlatTriple{parts};
    if (options.visitedPruning && !visited.insert(key(parts)).second) return std::nullopt;
    int v = uncovered.first();
    for (int i = 0; i < 3; ++i) {
      ElementSet grown = parts[i];
      grown.add(v);
      if (g(grown) >= carrierRank) continue;  // its closure would no longer be proper
      std::array<ElementSet, 3> next = parts;
      next[i] = polymatroidClosure(carrier, g, grown);
      if (auto found = run(next, depth + 1)) return found;
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<FlatTriple> coverByThreeFlats(const ElementSet& carrier, const RankFn& g,
                                            const CoverOptions& options) {
  BD_USAGE(!carrier.isEmpty(), "cover search needs a nonempty carrier");
  std::int64_t carrierRank = g(carrier);
  // No rank goes below g(empty) = 0, so a zero-rank carrier has no cover.
  if (carrierRank <= 0) return std::nullopt;
  ElementSet root =
      polymatroidClosure(carrier, g, ElementSet::empty(carrier.universeSize()));
  CoverSearch search{carrier, g, carrierRank, options, 0, {}};
  return search.run({root, root, root}, 0);
}

Tripartition uncrossCover(const ConnectivityOracle& f, const ElementSet& a,
                          const FlatTriple& cover) {
  BD_USAGE(a.universeSize() == f.universeSize(), "set universe does not match the oracle");
  std::array<ElementSet, 3> parts = cover.parts;
  BD_USAGE((parts[0] | parts[1] | parts[2]) == a, "cover parts must union to the split set");
  std::int64_t fA = f.evaluate(a);
  for (const ElementSet& part : parts)
    BD_USAGE(f.evaluate(part) < fA, "cover parts must sit strictly below f of the split set");
  // Replacing the first part is valid when its difference stays below f(a);
  // otherwise posimodularity forces the opposite difference below f(a), so
  // the second part shrinks without a further evaluation.
  constexpr std::array<std::array<int, 2>, 3> kPairs = {{{0, 1}, {1, 2}, {2, 0}}};
  for (auto [i, j] : kPairs) {
    if (!parts[i].intersects(parts[j])) continue;
    ElementSet difference = parts[i] - parts[j];
    if (f.evaluate(difference) < fA) {
      parts[i] = difference;
    } else {
      parts[j] = parts[j] - parts[i];
    }
  }
  BD_REQUIRE((parts[0] | parts[1] | parts[2]) == a, "uncrossing lost part of the split set");
  BD_REQUIRE(!parts[0].intersects(parts[1]) && !parts[1].intersects(parts[2]) &&
                 !parts[2].intersects(parts[0]),
             "uncrossing left overlapping parts");
  return Tripartition{parts};
}

TitanicResult titanicTest(const ConnectivityOracle& f, const ElementSet& a,
                          const sfm::SfmOptions& sfmOptions,
                          const CoverOptions& coverOptions) {
  BD_USAGE(a.universeSize() == f.universeSize(), "set universe does not match the oracle");
  BD_USAGE(!a.isEmpty() && !a.isFull(), "titanic test needs a proper nonempty subset");
  std::int64_t fA = f.evaluate(a);
  // f stays nonnegative, so every part of every tripartition ties f(a) = 0.
  if (fA == 0) return {};
  // The part holding the lone element ties f(a).
  if (a.count() == 1) return {};
  InducedPolymatroid induced(f, a, sfmOptions);
  BD_REQUIRE(induced.rank(a) == fA, "carrier rank must equal f of the carrier");
  auto cover = coverByThreeFlats(a, induced.fn(), coverOptions);
  if (!cover) return {};
  for (const ElementSet& flat : cover->parts)
    BD_REQUIRE(f.evaluate(flat) == induced.rank(flat),
               "flat f-value must match its induced rank");
  return {false, uncrossCover(f, a, *cover)};
}

}  // namespace branchdec
