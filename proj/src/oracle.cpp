#include "branchdec/oracle.hpp"

#include <random>
#include <sstream>

#include "branchdec/errors.hpp"

namespace branchdec {

ConnectivityOracle::ConnectivityOracle(int universeSize) : n_(universeSize) {
  BD_USAGE(universeSize >= 0, "universe size must be non-negative");
}

std::int64_t ConnectivityOracle::evaluate(const ElementSet& x) const {
  BD_USAGE(x.universeSize() == n_, "set evaluated against the wrong universe");
  const ElementSet key = (n_ > 0 && !x.contains(0)) ? x.complement() : x;
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  ++calls_;
  const std::int64_t value = evaluateUncached(x);
  memo_.emplace(key, value);
  return value;
}

std::int64_t ConnectivityOracle::evaluateNoCache(const ElementSet& x) const {
  BD_USAGE(x.universeSize() == n_, "set evaluated against the wrong universe");
  ++calls_;
  return evaluateUncached(x);
}

std::optional<std::string> checkConnectivityAxioms(const ConnectivityOracle& oracle,
                                                   std::uint64_t seed, int samples) {
  const int n = oracle.universeSize();
  const ElementSet emptySet(n);
  if (oracle.evaluateNoCache(emptySet) != 0) return "f(empty) != 0";
  if (oracle.evaluateNoCache(ElementSet::full(n)) != 0) return "f(universe) != 0";

  std::mt19937_64 rng(seed);
  auto randomSet = [&] {
    ElementSet s(n);
    for (int i = 0; i < n; ++i)
      if (rng() & 1) s.add(i);
    return s;
  };

  for (int it = 0; it < samples; ++it) {
    const ElementSet x = randomSet();
    const ElementSet y = randomSet();
    const std::int64_t fx = oracle.evaluateNoCache(x);
    if (fx < 0) return "negative value on " + x.str();
    if (fx != oracle.evaluateNoCache(x.complement()))
      return "symmetry violated on " + x.str();
    const std::int64_t fy = oracle.evaluateNoCache(y);
    const std::int64_t fu = oracle.evaluateNoCache(x | y);
    const std::int64_t fi = oracle.evaluateNoCache(x & y);
    if (fx + fy < fu + fi) {
      std::ostringstream out;
      out << "submodularity violated on " << x.str() << ", " << y.str();
      return out.str();
    }
  }
  return std::nullopt;
}

}  // namespace branchdec
