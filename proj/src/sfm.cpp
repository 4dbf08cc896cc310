#include "branchdec/sfm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "branchdec/errors.hpp"

namespace branchdec::sfm {

namespace {

// h(S) = f(forcedIn | S) - f(forcedIn) over subsets of the free ids.
// h is submodular with h(empty) = 0 and integral, which powers the
// lower/upper bound certificate at the end of the numeric path.

ConstrainedMinimum enumerateMin(const ConnectivityOracle& f, const ElementSet& forcedIn,
                                const std::vector<int>& free) {
  ElementSet z = forcedIn;
  ConstrainedMinimum best{z, f.evaluate(z)};
  // Ascending masks visit candidates in lex bit-vector order; the first
  // optimum wins, giving the lex-smallest minimizer.  Increment flips only
  // the trailing run, keeping z in sync cheaply.
  const std::uint64_t limit = std::uint64_t{1} << free.size();
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    std::uint64_t changed = mask ^ (mask - 1);
    for (int bit = 0; changed; ++bit, changed >>= 1) z.flip(free[static_cast<std::size_t>(bit)]);
    const std::int64_t value = f.evaluate(z);
    if (value < best.value) best = {z, value};
  }
  return best;
}

// Greedy vertex of the base polytope of h, taking elements by ascending
// weight (ids break ties).  Output is indexed like `free`.
std::vector<double> greedyVertex(const ConnectivityOracle& f, const ElementSet& forcedIn,
                                 const std::vector<int>& free, std::int64_t fIn,
                                 const std::vector<double>& weight) {
  const std::size_t m = free.size();
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (weight[static_cast<std::size_t>(a)] != weight[static_cast<std::size_t>(b)])
      return weight[static_cast<std::size_t>(a)] < weight[static_cast<std::size_t>(b)];
    return a < b;
  });
  std::vector<double> vertex(m, 0.0);
  ElementSet cur = forcedIn;
  std::int64_t prev = fIn;
  for (int idx : order) {
    cur.add(free[static_cast<std::size_t>(idx)]);
    const std::int64_t value = f.evaluate(cur);
    vertex[static_cast<std::size_t>(idx)] = static_cast<double>(value - prev);
    prev = value;
  }
  return vertex;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Coefficients of the affine minimizer of span(points), solving the KKT
// system [G 1; 1^T 0] with partial pivoting and a tiny ridge on G.
std::vector<double> affineMinimizer(const std::vector<std::vector<double>>& points) {
  const std::size_t k = points.size();
  std::vector<std::vector<double>> m(k + 1, std::vector<double>(k + 2, 0.0));
  double trace = 0.0;
  for (std::size_t i = 0; i < k; ++i) trace += dot(points[i], points[i]);
  const double ridge = 1e-12 * std::max(1.0, trace / static_cast<double>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i][j] = dot(points[i], points[j]);
    m[i][i] += ridge;
    m[i][k] = 1.0;
    m[k][i] = 1.0;
  }
  m[k][k + 1] = 1.0;

  for (std::size_t col = 0; col <= k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r <= k; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    std::swap(m[col], m[pivot]);
    BD_REQUIRE(std::abs(m[col][col]) > 1e-300, "singular affine system");
    for (std::size_t r = 0; r <= k; ++r) {
      if (r == col) continue;
      const double factor = m[r][col] / m[col][col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c <= k + 1; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  std::vector<double> alpha(k);
  for (std::size_t i = 0; i < k; ++i) alpha[i] = m[i][k + 1] / m[i][i];
  return alpha;
}

ConstrainedMinimum minNormPointMin(const ConnectivityOracle& f, const ElementSet& forcedIn,
                                   const std::vector<int>& free, const SfmOptions& opts,
                                   bool* certified) {
  const std::size_t m = free.size();
  const std::int64_t fIn = f.evaluate(forcedIn);
  *certified = true;
  if (m == 0) return {forcedIn, fIn};

  std::vector<std::vector<double>> corral{
      greedyVertex(f, forcedIn, free, fIn, std::vector<double>(m, 0.0))};
  std::vector<double> lambda{1.0};
  std::vector<double> x = corral[0];

  for (int iter = 0; iter < opts.maxWolfeIterations; ++iter) {
    const std::vector<double> q = greedyVertex(f, forcedIn, free, fIn, x);
    const double gap = dot(x, x) - dot(x, q);
    if (gap <= opts.tolerance * std::max(1.0, dot(x, x))) break;

    bool duplicate = false;
    for (const auto& s : corral) {
      double dist = 0.0;
      for (std::size_t i = 0; i < m; ++i) dist = std::max(dist, std::abs(s[i] - q[i]));
      duplicate |= dist < 1e-12;
    }
    if (duplicate) break;
    corral.push_back(q);
    lambda.push_back(0.0);

    while (true) {
      const std::vector<double> alpha = affineMinimizer(corral);
      const double floorCoef = 1e-12;
      bool interior = true;
      for (double a : alpha) interior &= a > floorCoef;
      if (interior) {
        lambda = alpha;
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < alpha.size(); ++i)
        if (alpha[i] <= floorCoef && lambda[i] - alpha[i] > 0.0)
          theta = std::min(theta, lambda[i] / (lambda[i] - alpha[i]));
      for (std::size_t i = 0; i < alpha.size(); ++i)
        lambda[i] = theta * alpha[i] + (1.0 - theta) * lambda[i];
      for (std::size_t i = corral.size(); i-- > 0;) {
        if (lambda[i] > floorCoef) continue;
        corral.erase(corral.begin() + static_cast<std::ptrdiff_t>(i));
        lambda.erase(lambda.begin() + static_cast<std::ptrdiff_t>(i));
      }
      BD_REQUIRE(!corral.empty(), "corral emptied during a minor cycle");
    }
    x.assign(m, 0.0);
    for (std::size_t i = 0; i < corral.size(); ++i)
      for (std::size_t j = 0; j < m; ++j) x[j] += lambda[i] * corral[i][j];
  }

  // h_min >= sum of negative coordinates for any x in the base polytope, and
  // the best threshold level set gives an upper bound.  Both ends integral.
  double lower = 0.0;
  for (double xi : x) lower += std::min(xi, 0.0);

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (x[static_cast<std::size_t>(a)] != x[static_cast<std::size_t>(b)])
      return x[static_cast<std::size_t>(a)] < x[static_cast<std::size_t>(b)];
    return a < b;
  });
  ElementSet cur = forcedIn;
  ElementSet bestSet = cur;
  std::int64_t bestValue = fIn;
  for (int idx : order) {
    cur.add(free[static_cast<std::size_t>(idx)]);
    const std::int64_t value = f.evaluate(cur);
    if (value < bestValue) {
      bestValue = value;
      bestSet = cur;
    }
  }

  const double upper = static_cast<double>(bestValue - fIn);
  *certified = upper - lower < 1.0 - 1e-6;
  return {bestSet, bestValue};
}

ConstrainedMinimum genericMin(const ConnectivityOracle& f, const ElementSet& forcedIn,
                              const ElementSet& forcedOut, const SfmOptions& opts) {
  const std::vector<int> free = (forcedIn | forcedOut).complement().toIds();
  const int m = static_cast<int>(free.size());

  bool viaEnumeration = false;
  switch (opts.strategy) {
    case Strategy::Enumerate:
      BD_USAGE(m <= opts.enumerationHardCap,
               "enumeration requested beyond the hard cap");
      viaEnumeration = true;
      break;
    case Strategy::Auto:
      viaEnumeration = m <= opts.bruteForceThreshold;
      break;
    case Strategy::MinNormPoint:
      viaEnumeration = false;
      break;
  }
  if (viaEnumeration) return enumerateMin(f, forcedIn, free);

  bool certified = false;
  const ConstrainedMinimum result = minNormPointMin(f, forcedIn, free, opts, &certified);
  if (certified) return result;
  if (m <= opts.enumerationHardCap) return enumerateMin(f, forcedIn, free);
  throw UnresolvedMinimization(
      "numeric minimization left an integrality gap and the instance exceeds "
      "the enumeration cap");
}

}  // namespace

ConstrainedMinimum minimizeConstrained(const ConnectivityOracle& f,
                                       const ElementSet& forcedIn,
                                       const ElementSet& forcedOut,
                                       const SfmOptions& opts) {
  BD_USAGE(forcedIn.universeSize() == f.universeSize() &&
               forcedOut.universeSize() == f.universeSize(),
           "constraints over the wrong universe");
  BD_USAGE(!forcedIn.intersects(forcedOut), "conflicting constraints");

  if (opts.useFastPaths) {
    if (const auto fast = f.tryFastConstrainedMin(forcedIn, forcedOut)) {
      BD_REQUIRE(forcedIn.isSubsetOf(fast->minimizer) &&
                     !fast->minimizer.intersects(forcedOut),
                 "fast path returned an infeasible minimizer");
      if (opts.verifyFastPaths) {
        SfmOptions inner = opts;
        inner.useFastPaths = false;
        const ConstrainedMinimum check = genericMin(f, forcedIn, forcedOut, inner);
        BD_REQUIRE(check.value == fast->value, "fast path disagrees with the generic path");
        BD_REQUIRE(f.evaluate(fast->minimizer) == fast->value,
                   "fast path minimizer does not achieve its value");
      }
      return *fast;
    }
  }
  return genericMin(f, forcedIn, forcedOut, opts);
}

const ConstrainedMinimum& FMinTable::get(const ElementSet& forcedIn,
                                         const ElementSet& forcedOut) {
  const Key key{forcedIn, forcedOut};
  auto it = memo_.find(key);
  if (it == memo_.end())
    it = memo_.emplace(key, minimizeConstrained(f_, forcedIn, forcedOut, opts_)).first;
  return it->second;
}

}  // namespace branchdec::sfm
