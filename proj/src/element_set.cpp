#include "branchdec/element_set.hpp"

#include <bit>
#include <sstream>

#include "branchdec/errors.hpp"

namespace branchdec {

namespace detail {

void throwInternal(const char* file, int line, const std::string& msg) {
  std::ostringstream out;
  out << "invariant failed at " << file << ":" << line << ": " << msg;
  throw InternalError(out.str());
}

void usageCheck(bool cond, const std::string& msg) {
  if (!cond) throw UsageError(msg);
}

}  // namespace detail

ElementSet::ElementSet(int universeSize) : n_(universeSize) {
  BD_USAGE(universeSize >= 0, "universe size must be non-negative");
  words_.assign(static_cast<std::size_t>((n_ + 63) / 64), 0);
}

ElementSet ElementSet::full(int universeSize) {
  ElementSet s(universeSize);
  for (auto& w : s.words_) w = ~0ULL;
  if (universeSize % 64 != 0 && !s.words_.empty())
    s.words_.back() &= (1ULL << (universeSize % 64)) - 1;
  return s;
}

ElementSet ElementSet::singleton(int universeSize, int id) {
  ElementSet s(universeSize);
  s.add(id);
  return s;
}

ElementSet ElementSet::of(int universeSize, std::initializer_list<int> ids) {
  ElementSet s(universeSize);
  for (int id : ids) s.add(id);
  return s;
}

bool ElementSet::contains(int id) const {
  BD_USAGE(id >= 0 && id < n_, "element out of universe");
  return (words_[static_cast<std::size_t>(id / 64)] >> (id % 64)) & 1ULL;
}

void ElementSet::add(int id) {
  BD_USAGE(id >= 0 && id < n_, "element out of universe");
  words_[static_cast<std::size_t>(id / 64)] |= 1ULL << (id % 64);
}

void ElementSet::remove(int id) {
  BD_USAGE(id >= 0 && id < n_, "element out of universe");
  words_[static_cast<std::size_t>(id / 64)] &= ~(1ULL << (id % 64));
}

void ElementSet::flip(int id) {
  BD_USAGE(id >= 0 && id < n_, "element out of universe");
  words_[static_cast<std::size_t>(id / 64)] ^= 1ULL << (id % 64);
}

int ElementSet::count() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool ElementSet::isEmpty() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

bool ElementSet::isFull() const { return count() == n_; }

void ElementSet::checkCompatible(const ElementSet& o) const {
  BD_USAGE(n_ == o.n_, "element sets over different universes");
}

bool ElementSet::isSubsetOf(const ElementSet& other) const {
  checkCompatible(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

bool ElementSet::intersects(const ElementSet& other) const {
  checkCompatible(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

int ElementSet::first() const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i]) return static_cast<int>(i * 64) + std::countr_zero(words_[i]);
  return -1;
}

std::vector<int> ElementSet::toIds() const {
  std::vector<int> ids;
  forEach([&](int id) { ids.push_back(id); });
  return ids;
}

ElementSet ElementSet::complement() const {
  ElementSet s(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
  if (n_ % 64 != 0 && !s.words_.empty())
    s.words_.back() &= (1ULL << (n_ % 64)) - 1;
  return s;
}

ElementSet ElementSet::operator|(const ElementSet& o) const {
  checkCompatible(o);
  ElementSet s(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = words_[i] | o.words_[i];
  return s;
}

ElementSet ElementSet::operator&(const ElementSet& o) const {
  checkCompatible(o);
  ElementSet s(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = words_[i] & o.words_[i];
  return s;
}

ElementSet ElementSet::operator-(const ElementSet& o) const {
  checkCompatible(o);
  ElementSet s(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = words_[i] & ~o.words_[i];
  return s;
}

bool ElementSet::operator==(const ElementSet& o) const {
  return n_ == o.n_ && words_ == o.words_;
}

bool ElementSet::lexLess(const ElementSet& o) const {
  checkCompatible(o);
  for (std::size_t i = words_.size(); i-- > 0;)
    if (words_[i] != o.words_[i]) return words_[i] < o.words_[i];
  return false;
}

std::size_t ElementSet::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(n_);
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return static_cast<std::size_t>(h);
}

std::string ElementSet::str() const {
  std::ostringstream out;
  out << "{";
  bool firstId = true;
  forEach([&](int id) {
    if (!firstId) out << ",";
    out << id;
    firstId = false;
  });
  out << "}";
  return out.str();
}

}  // namespace branchdec
