#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace branchdec {

// Ground set {0, ..., size-1}.  Element ids are dense and 0-based throughout.
struct GroundSet {
  int size = 0;
};

// Subset of a ground set, packed 64 elements per word.  Value semantics.
// All binary operations require both operands to share one universe size.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(int universeSize);

  static ElementSet empty(int universeSize) { return ElementSet(universeSize); }
  static ElementSet full(int universeSize);
  static ElementSet singleton(int universeSize, int id);
  static ElementSet of(int universeSize, std::initializer_list<int> ids);

  int universeSize() const { return n_; }
  bool contains(int id) const;
  void add(int id);
  void remove(int id);
  void flip(int id);

  int count() const;
  bool isEmpty() const;
  bool isFull() const;
  bool isSubsetOf(const ElementSet& other) const;
  bool intersects(const ElementSet& other) const;

  // Smallest element, or -1 when empty.
  int first() const;
  std::vector<int> toIds() const;

  ElementSet complement() const;
  ElementSet operator|(const ElementSet& o) const;
  ElementSet operator&(const ElementSet& o) const;
  ElementSet operator-(const ElementSet& o) const;

  bool operator==(const ElementSet& o) const;
  bool operator!=(const ElementSet& o) const { return !(*this == o); }

  // Order by the integer whose bit i is element i.  Used for deterministic
  // tie-breaking; the enumeration order in the sfm module agrees with it.
  bool lexLess(const ElementSet& o) const;

  std::size_t hash() const;
  std::string str() const;

  template <typename Fn>
  void forEach(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = static_cast<int>(__builtin_ctzll(bits));
        fn(static_cast<int>(w * 64) + b);
        bits &= bits - 1;
      }
    }
  }

 private:
  void checkCompatible(const ElementSet& o) const;

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

}  // namespace branchdec
