#include "branchdec/dec_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "branchdec/errors.hpp"

namespace branchdec {

BranchDecomposition canonicalize(const BranchDecomposition& dec) {
  const ValidationReport report = validateDecomposition(dec);
  BD_USAGE(report.ok, "cannot canonicalize: " + report.message);

  int start = -1;
  int bestLabel = dec.groundSize;
  for (int v = 0; v < dec.nodeCount(); ++v)
    if (dec.degree(v) == 1 && dec.leafLabel[static_cast<std::size_t>(v)] < bestLabel) {
      bestLabel = dec.leafLabel[static_cast<std::size_t>(v)];
      start = v;
    }

  // Smallest leaf label in the component of `to` once edge (from,to) is cut.
  // Keys the preorder on labels only, so input node numbering cannot leak
  // into the serialized form.
  auto minBeyond = [&](int from, int to) {
    int best = dec.groundSize;
    std::vector<int> stack{to};
    std::vector<bool> visited(static_cast<std::size_t>(dec.nodeCount()), false);
    visited[static_cast<std::size_t>(from)] = true;
    visited[static_cast<std::size_t>(to)] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (dec.degree(v) == 1)
        best = std::min(best, dec.leafLabel[static_cast<std::size_t>(v)]);
      for (int w : dec.adj[static_cast<std::size_t>(v)])
        if (!visited[static_cast<std::size_t>(w)]) {
          visited[static_cast<std::size_t>(w)] = true;
          stack.push_back(w);
        }
    }
    return best;
  };

  std::vector<int> newId(static_cast<std::size_t>(dec.nodeCount()), -1);
  std::vector<int> stack{start};
  int next = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (newId[static_cast<std::size_t>(v)] != -1) continue;
    newId[static_cast<std::size_t>(v)] = next++;
    std::vector<int> nbrs;
    for (int w : dec.adj[static_cast<std::size_t>(v)])
      if (newId[static_cast<std::size_t>(w)] == -1) nbrs.push_back(w);
    std::sort(nbrs.begin(), nbrs.end(),
              [&](int x, int y) { return minBeyond(v, x) > minBeyond(v, y); });
    for (int w : nbrs) stack.push_back(w);
  }

  BranchDecomposition out;
  out.groundSize = dec.groundSize;
  out.adj.assign(static_cast<std::size_t>(dec.nodeCount()), {});
  out.leafLabel.assign(static_cast<std::size_t>(dec.nodeCount()), -1);
  for (int v = 0; v < dec.nodeCount(); ++v) {
    const int nv = newId[static_cast<std::size_t>(v)];
    out.leafLabel[static_cast<std::size_t>(nv)] = dec.leafLabel[static_cast<std::size_t>(v)];
    for (int w : dec.adj[static_cast<std::size_t>(v)])
      out.adj[static_cast<std::size_t>(nv)].push_back(newId[static_cast<std::size_t>(w)]);
    std::sort(out.adj[static_cast<std::size_t>(nv)].begin(),
              out.adj[static_cast<std::size_t>(nv)].end());
  }
  return out;
}

void writeDecomposition(std::ostream& out, const BranchDecomposition& dec,
                        std::optional<std::int64_t> width) {
  const BranchDecomposition canon = canonicalize(dec);
  out << "d branchdec " << canon.groundSize << ' ' << canon.nodeCount() << '\n';
  for (auto [u, v] : canon.edges()) out << "t " << u << ' ' << v << '\n';
  for (int v = 0; v < canon.nodeCount(); ++v)
    if (canon.leafLabel[static_cast<std::size_t>(v)] >= 0)
      out << "l " << v << ' ' << canon.leafLabel[static_cast<std::size_t>(v)] << '\n';
  if (width) out << "w " << *width << '\n';
}

DecompositionFile readDecomposition(std::istream& in) {
  DecompositionFile file;
  bool sawHeader = false;
  int nodes = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, int>> labels;
  std::string line;
  int lineNo = 0;

  auto fail = [&](const std::string& msg) -> void {
    std::ostringstream out;
    out << "line " << lineNo << ": " << msg;
    throw ValidationError(out.str());
  };

  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag == "d") {
      std::string kind;
      int n = 0;
      if (!(fields >> kind >> n >> nodes) || kind != "branchdec")
        fail("expected 'd branchdec <elements> <nodes>'");
      if (sawHeader) fail("duplicate header");
      if (n < 2 || nodes < 2) fail("decomposition too small");
      sawHeader = true;
      file.dec.groundSize = n;
      file.dec.adj.assign(static_cast<std::size_t>(nodes), {});
      file.dec.leafLabel.assign(static_cast<std::size_t>(nodes), -1);
    } else if (tag == "t") {
      int u = 0;
      int v = 0;
      if (!sawHeader) fail("edge before header");
      if (!(fields >> u >> v)) fail("expected 't <node> <node>'");
      if (u < 0 || u >= nodes || v < 0 || v >= nodes || u == v) fail("bad edge endpoints");
      edges.emplace_back(u, v);
    } else if (tag == "l") {
      int v = 0;
      int element = 0;
      if (!sawHeader) fail("label before header");
      if (!(fields >> v >> element)) fail("expected 'l <node> <element>'");
      if (v < 0 || v >= nodes) fail("label node out of range");
      if (element < 0 || element >= file.dec.groundSize) fail("element out of range");
      labels.emplace_back(v, element);
    } else if (tag == "w") {
      std::int64_t w = 0;
      if (!(fields >> w)) fail("expected 'w <width>'");
      file.width = w;
    } else {
      fail("unknown line tag '" + tag + "'");
    }
    std::string rest;
    if (fields >> rest) fail("trailing characters '" + rest + "'");
  }
  ++lineNo;
  if (!sawHeader) fail("missing header");
  for (auto [u, v] : edges) {
    file.dec.adj[static_cast<std::size_t>(u)].push_back(v);
    file.dec.adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto [v, element] : labels) {
    if (file.dec.leafLabel[static_cast<std::size_t>(v)] != -1) fail("node labeled twice");
    file.dec.leafLabel[static_cast<std::size_t>(v)] = element;
  }
  const ValidationReport report = validateDecomposition(file.dec);
  if (!report.ok) fail("not a branch-decomposition: " + report.message);
  return file;
}

}  // namespace branchdec
