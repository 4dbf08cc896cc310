#pragma once

#include <cstdint>
#include <unordered_map>

#include "branchdec/oracle.hpp"

namespace branchdec::sfm {

enum class Strategy { Enumerate, MinNormPoint, Auto };

struct SfmOptions {
  Strategy strategy = Strategy::Auto;
  // Auto switches from enumeration to the min-norm-point solver above this
  // many free elements.
  int bruteForceThreshold = 20;
  // Largest free count the enumeration fallback will accept.
  int enumerationHardCap = 25;
  double tolerance = 1e-9;
  int maxWolfeIterations = 10000;
  // Honor tryFastConstrainedMin on layered oracles.
  bool useFastPaths = true;
  // Debug: recompute fast-path answers generically and compare values.
  bool verifyFastPaths = false;
};

// min f(z) over forcedIn <= z <= V - forcedOut.  Enumeration breaks ties to
// the lexicographically smallest bit-vector; the numeric path returns a
// deterministic certified minimizer.  Throws UnresolvedMinimization when the
// numeric path cannot certify and the instance exceeds the enumeration cap.
ConstrainedMinimum minimizeConstrained(const ConnectivityOracle& f,
                                       const ElementSet& forcedIn,
                                       const ElementSet& forcedOut,
                                       const SfmOptions& opts = {});

// Memoized f_min over constraint pairs.  References into the table stay
// valid for its lifetime.
class FMinTable {
 public:
  FMinTable(const ConnectivityOracle& f, SfmOptions opts) : f_(f), opts_(opts) {}

  const ConstrainedMinimum& get(const ElementSet& forcedIn, const ElementSet& forcedOut);
  std::size_t size() const { return memo_.size(); }

 private:
  struct Key {
    ElementSet in;
    ElementSet out;
    bool operator==(const Key& o) const { return in == o.in && out == o.out; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return k.in.hash() * 0x9e3779b97f4a7c15ULL + k.out.hash();
    }
  };

  const ConnectivityOracle& f_;
  SfmOptions opts_;
  std::unordered_map<Key, ConstrainedMinimum, KeyHash> memo_;
};

}  // namespace branchdec::sfm
