#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "branchdec/oracle.hpp"

namespace branchdec {

// Undirected multigraph.  Edges keep distinct sorted endpoints; arity 1 is a
// collapsed loop and arities above 2 are hyperedges.
struct Graph {
  int vertexCount = 0;
  std::vector<std::vector<int>> edges;
};

// 'p graph <vertices> <edges>' header, one 'e' line per edge with 1-indexed
// endpoints (two or more), 'c' comments anywhere.
Graph parseGraph(std::istream& in);

// GF(2) matrix, rows packed 64 columns per word.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool get(int r, int c) const;
  void set(int r, int c, bool value);

  // Rank of the submatrix with the given rows and the columns in colMask.
  int subrank(const std::vector<int>& rowIds, const ElementSet& colMask) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  int wordsPerRow_ = 0;
  std::vector<std::uint64_t> words_;
};

// 'p matrix <rows> <cols>' header followed by one 0/1 string per row.
BitMatrix parseMatrix(std::istream& in);

// 'p table <n>' header followed by 2^n integers: the value on each subset in
// mask order, i.e. the subset whose characteristic bit i is element i.
std::vector<std::int64_t> parseTable(std::istream& in, int* universeSize);

// Ground set: vertices.  f(X) counts edges with endpoints on both sides.
class CarvingOracle : public ConnectivityOracle {
 public:
  explicit CarvingOracle(const Graph& graph);

 protected:
  std::int64_t evaluateUncached(const ElementSet& x) const override;

 private:
  std::vector<ElementSet> edgeEndpoints_;
};

// Ground set: edges.  f(X) counts vertices meeting both X and its complement.
class GraphBranchwidthOracle : public ConnectivityOracle {
 public:
  explicit GraphBranchwidthOracle(const Graph& graph);

 protected:
  std::int64_t evaluateUncached(const ElementSet& x) const override;

 private:
  std::vector<ElementSet> vertexIncidence_;
};

// Ground set: vertices.  f(X) is the GF(2) rank of the adjacency block
// indexed by X and its complement.  Requires a simple arity-2 edge list.
class CutRankOracle : public ConnectivityOracle {
 public:
  explicit CutRankOracle(const Graph& graph);

 protected:
  std::int64_t evaluateUncached(const ElementSet& x) const override;

 private:
  BitMatrix adjacency_;
};

// Explicit value table over at most 16 elements.  The constructor checks the
// connectivity-function axioms exhaustively and rejects violations.
class TableOracle : public ConnectivityOracle {
 public:
  TableOracle(int universeSize, std::vector<std::int64_t> values);

 protected:
  std::int64_t evaluateUncached(const ElementSet& x) const override;

 private:
  std::vector<std::int64_t> values_;
};

}  // namespace branchdec
