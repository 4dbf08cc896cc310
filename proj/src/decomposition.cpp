#include "branchdec/decomposition.hpp"

#include <algorithm>
#include <sstream>

#include "branchdec/errors.hpp"

namespace branchdec {

namespace {

BranchDecomposition buildFromEdges(int groundSize, int nodeCount,
                                   const std::vector<std::pair<int, int>>& edges,
                                   const std::vector<int>& labels) {
  BranchDecomposition dec;
  dec.groundSize = groundSize;
  dec.adj.assign(static_cast<std::size_t>(nodeCount), {});
  dec.leafLabel = labels;
  for (auto [u, v] : edges) {
    dec.adj[static_cast<std::size_t>(u)].push_back(v);
    dec.adj[static_cast<std::size_t>(v)].push_back(u);
  }
  return dec;
}

// Rebuilds with dense node ids, keeping only nodes with keep[v] true.
BranchDecomposition compact(const BranchDecomposition& dec, const std::vector<bool>& keep) {
  std::vector<int> newId(static_cast<std::size_t>(dec.nodeCount()), -1);
  int next = 0;
  for (int v = 0; v < dec.nodeCount(); ++v)
    if (keep[static_cast<std::size_t>(v)]) newId[static_cast<std::size_t>(v)] = next++;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> labels(static_cast<std::size_t>(next), -1);
  for (int v = 0; v < dec.nodeCount(); ++v) {
    if (!keep[static_cast<std::size_t>(v)]) continue;
    labels[static_cast<std::size_t>(newId[static_cast<std::size_t>(v)])] =
        dec.leafLabel[static_cast<std::size_t>(v)];
    for (int w : dec.adj[static_cast<std::size_t>(v)])
      if (v < w && keep[static_cast<std::size_t>(w)])
        edges.emplace_back(newId[static_cast<std::size_t>(v)], newId[static_cast<std::size_t>(w)]);
  }
  return buildFromEdges(dec.groundSize, next, edges, labels);
}

}  // namespace

std::vector<std::pair<int, int>> BranchDecomposition::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int v = 0; v < nodeCount(); ++v)
    for (int w : adj[static_cast<std::size_t>(v)])
      if (v < w) out.emplace_back(v, w);
  std::sort(out.begin(), out.end());
  return out;
}

BranchDecomposition BranchDecomposition::singleEdge(int groundSize, int label0, int label1) {
  return buildFromEdges(groundSize, 2, {{0, 1}}, {label0, label1});
}

BranchDecomposition BranchDecomposition::star3(int groundSize, int label0, int label1,
                                               int label2) {
  return buildFromEdges(groundSize, 4, {{0, 1}, {0, 2}, {0, 3}}, {-1, label0, label1, label2});
}

BranchDecomposition BranchDecomposition::caterpillar(int groundSize,
                                                     const std::vector<int>& order) {
  const int m = static_cast<int>(order.size());
  BD_USAGE(m >= 2, "caterpillar needs at least two leaves");
  if (m == 2) return singleEdge(groundSize, order[0], order[1]);
  if (m == 3) return star3(groundSize, order[0], order[1], order[2]);
  const int spine = m - 2;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> labels(static_cast<std::size_t>(spine + m), -1);
  for (int i = 0; i + 1 < spine; ++i) edges.emplace_back(i, i + 1);
  auto leafNode = [&](int j) { return spine + j; };
  for (int j = 0; j < m; ++j) {
    labels[static_cast<std::size_t>(leafNode(j))] = order[static_cast<std::size_t>(j)];
    int host = j <= 1 ? 0 : (j == m - 1 ? spine - 1 : j - 1);
    edges.emplace_back(host, leafNode(j));
  }
  return buildFromEdges(groundSize, spine + m, edges, labels);
}

ValidationReport validateDecomposition(const BranchDecomposition& dec) {
  auto fail = [](const std::string& msg) { return ValidationReport{false, msg}; };
  const int nodes = dec.nodeCount();
  if (dec.groundSize < 2) return fail("ground set must have at least two elements");
  if (static_cast<int>(dec.leafLabel.size()) != nodes)
    return fail("label array does not match node count");
  int edgeEndpoints = 0;
  std::vector<bool> seen(static_cast<std::size_t>(dec.groundSize), false);
  int leafCount = 0;
  for (int v = 0; v < nodes; ++v) {
    const int d = dec.degree(v);
    const int label = dec.leafLabel[static_cast<std::size_t>(v)];
    if (d != 1 && d != 3) {
      std::ostringstream out;
      out << "node " << v << " has degree " << d;
      return fail(out.str());
    }
    if (d == 1) {
      ++leafCount;
      if (label < 0 || label >= dec.groundSize) {
        std::ostringstream out;
        out << "leaf " << v << " has no valid element label";
        return fail(out.str());
      }
      if (seen[static_cast<std::size_t>(label)]) {
        std::ostringstream out;
        out << "element " << label << " labels two leaves";
        return fail(out.str());
      }
      seen[static_cast<std::size_t>(label)] = true;
    } else if (label != -1) {
      std::ostringstream out;
      out << "internal node " << v << " carries a label";
      return fail(out.str());
    }
    edgeEndpoints += d;
  }
  if (leafCount != dec.groundSize) return fail("leaf count differs from ground set size");
  if (edgeEndpoints != 2 * (nodes - 1)) return fail("edge count does not match a tree");
  // Connectivity: with nodes-1 edges, reaching every node certifies a tree.
  std::vector<bool> visited(static_cast<std::size_t>(nodes), false);
  std::vector<int> stack{0};
  visited[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : dec.adj[static_cast<std::size_t>(v)])
      if (!visited[static_cast<std::size_t>(w)]) {
        visited[static_cast<std::size_t>(w)] = true;
        ++reached;
        stack.push_back(w);
      }
  }
  if (reached != nodes) return fail("tree is not connected");
  return {};
}

ElementSet leafSideAcross(const BranchDecomposition& dec, int from, int towards) {
  ElementSet side(dec.groundSize);
  std::vector<int> stack{towards};
  std::vector<bool> visited(static_cast<std::size_t>(dec.nodeCount()), false);
  visited[static_cast<std::size_t>(from)] = true;
  visited[static_cast<std::size_t>(towards)] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (dec.degree(v) == 1) side.add(dec.leafLabel[static_cast<std::size_t>(v)]);
    for (int w : dec.adj[static_cast<std::size_t>(v)])
      if (!visited[static_cast<std::size_t>(w)]) {
        visited[static_cast<std::size_t>(w)] = true;
        stack.push_back(w);
      }
  }
  return side;
}

WidthReport decompositionWidth(const ConnectivityOracle& oracle,
                               const BranchDecomposition& dec) {
  BD_USAGE(oracle.universeSize() == dec.groundSize,
           "decomposition over the wrong ground set");
  const ValidationReport report = validateDecomposition(dec);
  if (!report.ok) throw ValidationError("invalid decomposition: " + report.message);

  // One rooted pass; the side of edge (parent, child) is the child's subtree.
  const int nodes = dec.nodeCount();
  std::vector<int> parent(static_cast<std::size_t>(nodes), -1);
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(nodes));
  order.push_back(0);
  parent[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    for (int w : dec.adj[static_cast<std::size_t>(v)])
      if (parent[static_cast<std::size_t>(w)] == -1) {
        parent[static_cast<std::size_t>(w)] = v;
        order.push_back(w);
      }
  }
  std::vector<ElementSet> below(static_cast<std::size_t>(nodes), ElementSet(dec.groundSize));
  for (std::size_t i = order.size(); i-- > 0;) {
    int v = order[i];
    if (dec.degree(v) == 1) below[static_cast<std::size_t>(v)].add(dec.leafLabel[static_cast<std::size_t>(v)]);
    if (v != 0)
      below[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])] =
          below[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])] |
          below[static_cast<std::size_t>(v)];
  }

  WidthReport out;
  const auto edges = dec.edges();
  out.edgeWidths.reserve(edges.size());
  for (auto [u, v] : edges) {
    const int child = parent[static_cast<std::size_t>(v)] == u ? v : u;
    const std::int64_t w = oracle.evaluate(below[static_cast<std::size_t>(child)]);
    out.edgeWidths.push_back(w);
    out.width = std::max(out.width, w);
  }
  return out;
}

BranchDecomposition smoothen(const BranchDecomposition& dec) {
  const int nodes = dec.nodeCount();
  std::vector<bool> keep(static_cast<std::size_t>(nodes), false);
  for (int v = 0; v < nodes; ++v) keep[static_cast<std::size_t>(v)] = dec.degree(v) != 2;

  // Walk across runs of degree-2 nodes between kept endpoints.
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, int>> seenArcs;
  for (int v = 0; v < nodes; ++v) {
    if (!keep[static_cast<std::size_t>(v)]) continue;
    for (int w : dec.adj[static_cast<std::size_t>(v)]) {
      int prev = v;
      int cur = w;
      while (!keep[static_cast<std::size_t>(cur)]) {
        int nxt = dec.adj[static_cast<std::size_t>(cur)][0] == prev
                      ? dec.adj[static_cast<std::size_t>(cur)][1]
                      : dec.adj[static_cast<std::size_t>(cur)][0];
        prev = cur;
        cur = nxt;
      }
      if (v < cur) edges.emplace_back(v, cur);
      if (v == cur) BD_REQUIRE(false, "cycle while smoothening");
    }
  }
  std::vector<int> newId(static_cast<std::size_t>(nodes), -1);
  int next = 0;
  for (int v = 0; v < nodes; ++v)
    if (keep[static_cast<std::size_t>(v)]) newId[static_cast<std::size_t>(v)] = next++;
  std::vector<int> labels(static_cast<std::size_t>(next), -1);
  for (int v = 0; v < nodes; ++v)
    if (keep[static_cast<std::size_t>(v)])
      labels[static_cast<std::size_t>(newId[static_cast<std::size_t>(v)])] =
          dec.leafLabel[static_cast<std::size_t>(v)];
  std::vector<std::pair<int, int>> mapped;
  mapped.reserve(edges.size());
  for (auto [u, v] : edges)
    mapped.emplace_back(newId[static_cast<std::size_t>(u)], newId[static_cast<std::size_t>(v)]);
  return buildFromEdges(dec.groundSize, next, mapped, labels);
}

BranchDecomposition insertLeafOnEdge(const BranchDecomposition& dec, int u, int v,
                                     int label) {
  BD_USAGE(u >= 0 && u < dec.nodeCount() && v >= 0 && v < dec.nodeCount(), "bad edge node");
  bool adjacent = false;
  for (int w : dec.adj[static_cast<std::size_t>(u)]) adjacent |= w == v;
  BD_USAGE(adjacent, "insertLeafOnEdge target is not an edge");

  BranchDecomposition out = dec;
  const int mid = out.nodeCount();
  const int leaf = mid + 1;
  auto& adjU = out.adj[static_cast<std::size_t>(u)];
  auto& adjV = out.adj[static_cast<std::size_t>(v)];
  *std::find(adjU.begin(), adjU.end(), v) = mid;
  *std::find(adjV.begin(), adjV.end(), u) = mid;
  out.adj.push_back({u, v, leaf});
  out.adj.push_back({mid});
  out.leafLabel.push_back(-1);
  out.leafLabel.push_back(label);
  return out;
}

BranchDecomposition removeLeavesByLabel(const BranchDecomposition& dec,
                                        const ElementSet& labels) {
  const int nodes = dec.nodeCount();
  std::vector<bool> keep(static_cast<std::size_t>(nodes), true);
  std::vector<int> degree(static_cast<std::size_t>(nodes));
  for (int v = 0; v < nodes; ++v) degree[static_cast<std::size_t>(v)] = dec.degree(v);

  auto isKeptLeaf = [&](int v) {
    const int label = dec.leafLabel[static_cast<std::size_t>(v)];
    return dec.degree(v) == 1 && label >= 0 && !labels.contains(label);
  };

  // Peel dropped leaves and any unlabeled node that becomes degree <= 1.
  std::vector<int> queue;
  for (int v = 0; v < nodes; ++v)
    if (dec.degree(v) == 1 && !isKeptLeaf(v)) queue.push_back(v);
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    if (!keep[static_cast<std::size_t>(v)]) continue;
    keep[static_cast<std::size_t>(v)] = false;
    for (int w : dec.adj[static_cast<std::size_t>(v)]) {
      if (!keep[static_cast<std::size_t>(w)]) continue;
      if (--degree[static_cast<std::size_t>(w)] <= 1 && !isKeptLeaf(w) &&
          dec.leafLabel[static_cast<std::size_t>(w)] == -1)
        queue.push_back(w);
    }
  }
  int survivors = 0;
  for (int v = 0; v < nodes; ++v)
    if (keep[static_cast<std::size_t>(v)] && isKeptLeaf(v)) ++survivors;
  BD_USAGE(survivors >= 2, "fewer than two leaves would survive");
  return smoothen(compact(dec, keep));
}

BranchDecomposition relabelLeaves(const BranchDecomposition& dec,
                                  const std::vector<int>& map, int newGroundSize) {
  BranchDecomposition out = dec;
  out.groundSize = newGroundSize;
  for (auto& label : out.leafLabel)
    if (label >= 0) {
      BD_USAGE(label < static_cast<int>(map.size()), "relabel map too small");
      label = map[static_cast<std::size_t>(label)];
    }
  return out;
}

BranchDecomposition glueDecompositions(const BranchDecomposition& dec1,
                                       const std::vector<ElementSet>& leafSets1,
                                       int mergedLabel1,
                                       const BranchDecomposition& dec2,
                                       const std::vector<ElementSet>& leafSets2,
                                       int mergedLabel2, int parentUniverse) {
  BD_USAGE(validateDecomposition(dec1).ok && validateDecomposition(dec2).ok,
           "glue inputs must be valid decompositions");
  BD_USAGE(static_cast<int>(leafSets1.size()) == dec1.groundSize &&
               static_cast<int>(leafSets2.size()) == dec2.groundSize,
           "leaf set tables must cover the child universes");
  BD_USAGE(mergedLabel1 >= 0 && mergedLabel1 < dec1.groundSize && mergedLabel2 >= 0 &&
               mergedLabel2 < dec2.groundSize,
           "merged labels out of range");

  // The merged element of each side must stand for exactly the elements the
  // other side splits into singletons.
  ElementSet union1(parentUniverse);
  for (int e = 0; e < dec1.groundSize; ++e) {
    BD_USAGE(leafSets1[static_cast<std::size_t>(e)].universeSize() == parentUniverse,
             "leaf sets over the wrong parent universe");
    BD_USAGE(e == mergedLabel1 || leafSets1[static_cast<std::size_t>(e)].count() == 1,
             "non-merged labels must expand to singletons");
    BD_USAGE(!union1.intersects(leafSets1[static_cast<std::size_t>(e)]),
             "leaf sets overlap");
    union1 = union1 | leafSets1[static_cast<std::size_t>(e)];
  }
  BD_USAGE(union1.isFull(), "side one does not cover the parent universe");
  ElementSet union2(parentUniverse);
  for (int e = 0; e < dec2.groundSize; ++e) {
    BD_USAGE(leafSets2[static_cast<std::size_t>(e)].universeSize() == parentUniverse,
             "leaf sets over the wrong parent universe");
    BD_USAGE(e == mergedLabel2 || leafSets2[static_cast<std::size_t>(e)].count() == 1,
             "non-merged labels must expand to singletons");
    BD_USAGE(!union2.intersects(leafSets2[static_cast<std::size_t>(e)]),
             "leaf sets overlap");
    union2 = union2 | leafSets2[static_cast<std::size_t>(e)];
  }
  BD_USAGE(union2.isFull(), "side two does not cover the parent universe");
  BD_USAGE(leafSets1[static_cast<std::size_t>(mergedLabel1)] ==
               leafSets2[static_cast<std::size_t>(mergedLabel2)].complement(),
           "block structures are not complementary");

  auto findLeaf = [](const BranchDecomposition& dec, int label) {
    for (int v = 0; v < dec.nodeCount(); ++v)
      if (dec.degree(v) == 1 && dec.leafLabel[static_cast<std::size_t>(v)] == label)
        return v;
    BD_REQUIRE(false, "merged leaf not found");
    return -1;
  };
  const int drop1 = findLeaf(dec1, mergedLabel1);
  const int drop2 = findLeaf(dec2, mergedLabel2);
  const int join1 = dec1.adj[static_cast<std::size_t>(drop1)][0];
  const int join2 = dec2.adj[static_cast<std::size_t>(drop2)][0];

  const int offset = dec1.nodeCount();
  std::vector<std::pair<int, int>> edges;
  std::vector<int> labels(static_cast<std::size_t>(dec1.nodeCount() + dec2.nodeCount()), -1);
  auto addSide = [&](const BranchDecomposition& dec, const std::vector<ElementSet>& sets,
                     int drop, int shift) {
    for (int v = 0; v < dec.nodeCount(); ++v) {
      if (v == drop) continue;
      const int label = dec.leafLabel[static_cast<std::size_t>(v)];
      if (label >= 0)
        labels[static_cast<std::size_t>(v + shift)] =
            sets[static_cast<std::size_t>(label)].first();
      for (int w : dec.adj[static_cast<std::size_t>(v)])
        if (v < w && w != drop) edges.emplace_back(v + shift, w + shift);
    }
  };
  addSide(dec1, leafSets1, drop1, 0);
  addSide(dec2, leafSets2, drop2, offset);
  edges.emplace_back(join1, join2 + offset);

  BranchDecomposition merged =
      buildFromEdges(parentUniverse, dec1.nodeCount() + dec2.nodeCount(), edges, labels);
  std::vector<bool> keep(static_cast<std::size_t>(merged.nodeCount()), true);
  keep[static_cast<std::size_t>(drop1)] = false;
  keep[static_cast<std::size_t>(drop2 + offset)] = false;
  BranchDecomposition out = compact(merged, keep);
  const ValidationReport report = validateDecomposition(out);
  BD_REQUIRE(report.ok, "glued decomposition invalid: " + report.message);
  return out;
}

}  // namespace branchdec
