#include "branchdec/split.hpp"

#include <algorithm>

#include "branchdec/errors.hpp"

namespace branchdec {

namespace {

ElementSet largestPart(const Tripartition& witness) {
  const ElementSet* best = &witness.parts[0];
  for (int i = 1; i < 3; ++i) {
    const ElementSet& part = witness.parts[i];
    if (part.count() > best->count() ||
        (part.count() == best->count() && part.lexLess(*best)))
      best = &part;
  }
  return *best;
}

}  // namespace

Cut balancedStartCut(const BranchDecomposition& dec) {
  const ValidationReport report = validateDecomposition(dec);
  BD_USAGE(report.ok, report.message);
  const int n = dec.groundSize;
  BD_USAGE(n >= 3, "balanced start cut needs at least 3 elements");
  ElementSet bestSide;
  std::int64_t bestBalance = -1;
  for (const auto& [u, v] : dec.edges()) {
    const ElementSet side = leafSideAcross(dec, u, v);
    const std::int64_t balance =
        std::min<std::int64_t>(side.count(), n - side.count());
    if (balance > bestBalance) {
      bestBalance = balance;
      bestSide = side;
    }
  }
  BD_REQUIRE(3 * bestBalance >= n, "balanced start cut missed the n/3 bound");
  if (!bestSide.contains(0)) bestSide = bestSide.complement();
  return Cut{bestSide, -1};
}

Cut titanicSplit(const ConnectivityOracle& f, const BranchDecomposition& dec,
                 const sfm::SfmOptions& sfmOptions,
                 const CoverOptions& coverOptions) {
  BD_USAGE(f.universeSize() == dec.groundSize,
           "oracle and decomposition disagree on the ground set");
  const std::int64_t ell = decompositionWidth(f, dec).width;
  const int n = dec.groundSize;
  BD_USAGE(n >= 3, "titanic split needs at least 3 elements");

  ElementSet side = balancedStartCut(dec).side;
  std::int64_t cutValue = f.evaluate(side);
  BD_REQUIRE(cutValue <= ell, "start cut exceeds the decomposition width");

  for (std::int64_t iteration = 0;; ++iteration) {
    BD_REQUIRE(iteration <= ell, "split exceeded its iteration budget");
    const ElementSet outsideSet = side.complement();
    const TitanicResult inside = titanicTest(f, side, sfmOptions, coverOptions);
    const TitanicResult outside =
        titanicTest(f, outsideSet, sfmOptions, coverOptions);
    if (inside.titanic && outside.titanic) break;

    bool refineInside;
    if (inside.titanic != outside.titanic) {
      refineInside = !inside.titanic;
    } else {
      // Both failed; refine the larger side, ties to the one holding 0.
      const int insideCount = side.count();
      const int outsideCount = n - insideCount;
      refineInside = insideCount != outsideCount ? insideCount > outsideCount
                                                 : side.contains(0);
    }
    const ElementSet refined =
        largestPart(refineInside ? inside.witness : outside.witness);
    const std::int64_t refinedValue = f.evaluate(refined);
    BD_REQUIRE(refinedValue < cutValue,
               "refinement failed to decrease the cut value");
    side = refined;
    cutValue = refinedValue;
  }

  std::int64_t pow3 = 1;
  for (std::int64_t i = 0; i <= ell && pow3 < n; ++i) pow3 *= 3;
  const std::int64_t smaller =
      std::min<std::int64_t>(side.count(), n - side.count());
  BD_REQUIRE(smaller * pow3 >= n, "split produced an unbalanced cut");

  if (!side.contains(0)) side = side.complement();
  return Cut{side, cutValue};
}

}  // namespace branchdec
