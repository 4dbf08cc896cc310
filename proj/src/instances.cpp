#include "branchdec/instances.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>
#include <string>

#include "branchdec/errors.hpp"

namespace branchdec {

namespace {

struct LineReader {
  std::istream& in;
  int lineNo = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream out;
    out << "line " << lineNo << ": " << msg;
    throw ValidationError(out.str());
  }

  // Next non-comment, non-blank line, or false at end of input.
  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++lineNo;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      bool blank = true;
      for (char c : line) blank &= std::isspace(static_cast<unsigned char>(c)) != 0;
      if (blank || line[0] == 'c') continue;
      return true;
    }
    ++lineNo;
    return false;
  }
};

void requireHeader(LineReader& reader, const std::string& kind, int* a, int* b) {
  std::string line;
  if (!reader.next(line)) reader.fail("missing 'p " + kind + "' header");
  std::istringstream fields(line);
  std::string tag;
  std::string got;
  if (!(fields >> tag >> got) || tag != "p" || got != kind)
    reader.fail("expected 'p " + kind + "' header");
  if (!(fields >> *a)) reader.fail("header is missing its size fields");
  if (b != nullptr && !(fields >> *b)) reader.fail("header is missing its size fields");
  std::string rest;
  if (fields >> rest) reader.fail("trailing characters '" + rest + "'");
}

}  // namespace

Graph parseGraph(std::istream& in) {
  LineReader reader{in};
  Graph graph;
  int edgeCount = 0;
  requireHeader(reader, "graph", &graph.vertexCount, &edgeCount);
  if (graph.vertexCount < 0 || edgeCount < 0) reader.fail("negative sizes");

  std::string line;
  while (reader.next(line)) {
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag != "e") reader.fail("unknown line tag '" + tag + "'");
    std::vector<int> endpoints;
    int v = 0;
    while (fields >> v) {
      if (v < 1 || v > graph.vertexCount) reader.fail("endpoint out of range");
      endpoints.push_back(v - 1);
    }
    if (!fields.eof()) reader.fail("endpoints must be integers");
    if (endpoints.empty()) reader.fail("edge with no endpoints");
    std::sort(endpoints.begin(), endpoints.end());
    endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());
    graph.edges.push_back(std::move(endpoints));
  }
  if (static_cast<int>(graph.edges.size()) != edgeCount)
    reader.fail("edge count does not match the header");
  return graph;
}

BitMatrix::BitMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), wordsPerRow_((cols + 63) / 64) {
  BD_USAGE(rows >= 0 && cols >= 0, "negative matrix dimensions");
  words_.assign(static_cast<std::size_t>(rows_) * static_cast<std::size_t>(wordsPerRow_), 0);
}

bool BitMatrix::get(int r, int c) const {
  BD_USAGE(r >= 0 && r < rows_ && c >= 0 && c < cols_, "matrix index out of range");
  return (words_[static_cast<std::size_t>(r) * wordsPerRow_ + static_cast<std::size_t>(c / 64)] >>
          (c % 64)) &
         1;
}

void BitMatrix::set(int r, int c, bool value) {
  BD_USAGE(r >= 0 && r < rows_ && c >= 0 && c < cols_, "matrix index out of range");
  std::uint64_t& word =
      words_[static_cast<std::size_t>(r) * wordsPerRow_ + static_cast<std::size_t>(c / 64)];
  if (value)
    word |= std::uint64_t{1} << (c % 64);
  else
    word &= ~(std::uint64_t{1} << (c % 64));
}

int BitMatrix::subrank(const std::vector<int>& rowIds, const ElementSet& colMask) const {
  BD_USAGE(colMask.universeSize() == cols_, "column mask over the wrong universe");
  std::vector<std::uint64_t> mask(static_cast<std::size_t>(wordsPerRow_), 0);
  colMask.forEach([&](int c) { mask[static_cast<std::size_t>(c / 64)] |= std::uint64_t{1} << (c % 64); });

  // Basis insertion; each kept row is identified by its lowest set bit.
  std::vector<std::vector<std::uint64_t>> basis;
  std::vector<int> pivot;
  std::vector<std::uint64_t> row(static_cast<std::size_t>(wordsPerRow_));
  for (int r : rowIds) {
    BD_USAGE(r >= 0 && r < rows_, "row id out of range");
    for (int w = 0; w < wordsPerRow_; ++w)
      row[static_cast<std::size_t>(w)] =
          words_[static_cast<std::size_t>(r) * wordsPerRow_ + static_cast<std::size_t>(w)] &
          mask[static_cast<std::size_t>(w)];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const int p = pivot[b];
      if ((row[static_cast<std::size_t>(p / 64)] >> (p % 64)) & 1)
        for (int w = 0; w < wordsPerRow_; ++w) row[static_cast<std::size_t>(w)] ^= basis[b][static_cast<std::size_t>(w)];
    }
    int p = -1;
    for (int w = 0; w < wordsPerRow_ && p < 0; ++w)
      if (row[static_cast<std::size_t>(w)] != 0)
        p = w * 64 + static_cast<int>(__builtin_ctzll(row[static_cast<std::size_t>(w)]));
    if (p >= 0) {
      basis.push_back(row);
      pivot.push_back(p);
    }
  }
  return static_cast<int>(basis.size());
}

BitMatrix parseMatrix(std::istream& in) {
  LineReader reader{in};
  int rows = 0;
  int cols = 0;
  requireHeader(reader, "matrix", &rows, &cols);
  if (rows < 0 || cols <= 0) reader.fail("bad matrix dimensions");
  BitMatrix matrix(rows, cols);
  std::string line;
  for (int r = 0; r < rows; ++r) {
    if (!reader.next(line)) reader.fail("missing matrix row");
    std::istringstream fields(line);
    // Bits may be space-separated or packed into one 0/1 string.
    std::string bits;
    std::string token;
    while (fields >> token) bits += token;
    if (static_cast<int>(bits.size()) != cols) reader.fail("row has the wrong length");
    for (int c = 0; c < cols; ++c) {
      if (bits[static_cast<std::size_t>(c)] != '0' && bits[static_cast<std::size_t>(c)] != '1')
        reader.fail("rows must be 0/1 strings");
      matrix.set(r, c, bits[static_cast<std::size_t>(c)] == '1');
    }
  }
  if (reader.next(line)) reader.fail("unexpected content after the last row");
  return matrix;
}

std::vector<std::int64_t> parseTable(std::istream& in, int* universeSize) {
  LineReader reader{in};
  requireHeader(reader, "table", universeSize, nullptr);
  if (*universeSize < 0 || *universeSize > 16) reader.fail("table size must be 0..16");
  const std::size_t want = std::size_t{1} << *universeSize;
  std::vector<std::int64_t> values;
  values.reserve(want);
  std::string line;
  while (reader.next(line)) {
    std::istringstream fields(line);
    std::int64_t v = 0;
    while (fields >> v) {
      if (values.size() == want) reader.fail("too many values");
      values.push_back(v);
    }
    if (!fields.eof()) reader.fail("values must be integers");
  }
  if (values.size() != want) reader.fail("table needs one value per subset");
  return values;
}

CarvingOracle::CarvingOracle(const Graph& graph) : ConnectivityOracle(graph.vertexCount) {
  edgeEndpoints_.reserve(graph.edges.size());
  for (const auto& edge : graph.edges) {
    ElementSet endpoints(graph.vertexCount);
    for (int v : edge) endpoints.add(v);
    edgeEndpoints_.push_back(std::move(endpoints));
  }
}

std::int64_t CarvingOracle::evaluateUncached(const ElementSet& x) const {
  std::int64_t crossing = 0;
  for (const ElementSet& endpoints : edgeEndpoints_)
    if (endpoints.intersects(x) && !endpoints.isSubsetOf(x)) ++crossing;
  return crossing;
}

GraphBranchwidthOracle::GraphBranchwidthOracle(const Graph& graph)
    : ConnectivityOracle(static_cast<int>(graph.edges.size())) {
  const int m = static_cast<int>(graph.edges.size());
  vertexIncidence_.assign(static_cast<std::size_t>(graph.vertexCount), ElementSet(m));
  for (int e = 0; e < m; ++e)
    for (int v : graph.edges[static_cast<std::size_t>(e)])
      vertexIncidence_[static_cast<std::size_t>(v)].add(e);
}

std::int64_t GraphBranchwidthOracle::evaluateUncached(const ElementSet& x) const {
  std::int64_t border = 0;
  for (const ElementSet& incidence : vertexIncidence_)
    if (incidence.intersects(x) && !incidence.isSubsetOf(x)) ++border;
  return border;
}

CutRankOracle::CutRankOracle(const Graph& graph)
    : ConnectivityOracle(graph.vertexCount),
      adjacency_(graph.vertexCount, graph.vertexCount) {
  for (const auto& edge : graph.edges) {
    if (edge.size() != 2)
      throw ValidationError("cut-rank input needs arity-2 edges without loops");
    adjacency_.set(edge[0], edge[1], true);
    adjacency_.set(edge[1], edge[0], true);
  }
}

std::int64_t CutRankOracle::evaluateUncached(const ElementSet& x) const {
  return adjacency_.subrank(x.toIds(), x.complement());
}

TableOracle::TableOracle(int universeSize, std::vector<std::int64_t> values)
    : ConnectivityOracle(universeSize), values_(std::move(values)) {
  BD_USAGE(universeSize >= 0 && universeSize <= 16, "table oracles cover at most 16 elements");
  const std::size_t want = std::size_t{1} << universeSize;
  if (values_.size() != want) throw ValidationError("table needs one value per subset");
  const std::uint32_t full = static_cast<std::uint32_t>(want - 1);

  auto nameSet = [&](std::uint32_t mask) {
    ElementSet s(universeSize);
    for (int i = 0; i < universeSize; ++i)
      if ((mask >> i) & 1) s.add(i);
    return s.str();
  };

  if (values_[0] != 0) throw ValidationError("table violates f(empty) = 0");
  for (std::uint32_t m = 0; m <= full && want > 1; ++m) {
    if (values_[m] < 0)
      throw ValidationError("table is negative on " + nameSet(m));
    if (values_[m] != values_[full ^ m])
      throw ValidationError("table is not symmetric on " + nameSet(m));
  }
  // Local diminishing-returns form of submodularity.
  for (std::uint32_t m = 0; m <= full && want > 1; ++m)
    for (int i = 0; i < universeSize; ++i) {
      if ((m >> i) & 1) continue;
      for (int j = i + 1; j < universeSize; ++j) {
        if ((m >> j) & 1) continue;
        const std::uint32_t mi = m | (1u << i);
        const std::uint32_t mj = m | (1u << j);
        if (values_[mi] + values_[mj] < values_[mi | mj] + values_[m])
          throw ValidationError("table is not submodular on " + nameSet(m) + " with elements " +
                                std::to_string(i) + " and " + std::to_string(j));
      }
    }
}

std::int64_t TableOracle::evaluateUncached(const ElementSet& x) const {
  std::uint32_t mask = 0;
  x.forEach([&](int id) { mask |= 1u << id; });
  return values_[mask];
}

}  // namespace branchdec
