#include "crucible/tuple_set.hpp"

#include <algorithm>
#include <iterator>

namespace crucible {

namespace {

std::uint64_t low_mask(int columns) {
  return columns >= 4 ? ~0ULL : (1ULL << (16 * columns)) - 1;
}

}  // namespace

TupleSet TupleSet::singleton(AtomIndex atom) {
  TupleSet s(1);
  s.keys_.push_back(atom);
  return s;
}

TupleSet TupleSet::from_keys(int arity, std::vector<std::uint64_t> keys) {
  TupleSet s(arity);
  s.keys_ = std::move(keys);
  s.normalize();
  return s;
}

std::uint64_t TupleSet::pack(std::span<const AtomIndex> tuple) {
  std::uint64_t key = 0;
  for (AtomIndex a : tuple) key = (key << 16) | a;
  return key;
}

void TupleSet::insert(std::span<const AtomIndex> tuple) {
  std::uint64_t key = pack(tuple);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) keys_.insert(it, key);
}

void TupleSet::normalize() {
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
}

bool TupleSet::contains(std::span<const AtomIndex> tuple) const { return contains_key(pack(tuple)); }

bool TupleSet::contains_key(std::uint64_t key) const {
  return std::binary_search(keys_.begin(), keys_.end(), key);
}

std::vector<AtomIndex> TupleSet::tuple(std::uint64_t key) const {
  std::vector<AtomIndex> out(arity_);
  for (int c = 0; c < arity_; ++c) out[c] = column(key, c);
  return out;
}

TupleSet TupleSet::join(const TupleSet& rhs) const {
  const int restR = rhs.arity_ - 1;
  TupleSet out(arity_ + rhs.arity_ - 2);
  const std::uint64_t mask = low_mask(restR);
  for (std::uint64_t l : keys_) {
    const std::uint64_t b = l & 0xFFFF;
    const std::uint64_t head = l >> 16;
    auto lo = std::lower_bound(rhs.keys_.begin(), rhs.keys_.end(), b << (16 * restR));
    auto hi = std::lower_bound(lo, rhs.keys_.end(), (b + 1) << (16 * restR));
    for (auto it = lo; it != hi; ++it) out.keys_.push_back((head << (16 * restR)) | (*it & mask));
  }
  out.normalize();
  return out;
}

TupleSet TupleSet::product(const TupleSet& rhs) const {
  TupleSet out(arity_ + rhs.arity_);
  out.keys_.reserve(keys_.size() * rhs.keys_.size());
  // Both inputs are sorted, so the nested loop emits keys in order.
  for (std::uint64_t l : keys_)
    for (std::uint64_t r : rhs.keys_) out.keys_.push_back((l << (16 * rhs.arity_)) | r);
  return out;
}

TupleSet TupleSet::unite(const TupleSet& rhs) const {
  TupleSet out(arity_);
  std::set_union(keys_.begin(), keys_.end(), rhs.keys_.begin(), rhs.keys_.end(),
                 std::back_inserter(out.keys_));
  return out;
}

TupleSet TupleSet::minus(const TupleSet& rhs) const {
  TupleSet out(arity_);
  std::set_difference(keys_.begin(), keys_.end(), rhs.keys_.begin(), rhs.keys_.end(),
                      std::back_inserter(out.keys_));
  return out;
}

TupleSet TupleSet::intersect(const TupleSet& rhs) const {
  TupleSet out(arity_);
  std::set_intersection(keys_.begin(), keys_.end(), rhs.keys_.begin(), rhs.keys_.end(),
                        std::back_inserter(out.keys_));
  return out;
}

TupleSet TupleSet::transpose() const {
  TupleSet out(2);
  out.keys_.reserve(keys_.size());
  for (std::uint64_t k : keys_) out.keys_.push_back(((k & 0xFFFF) << 16) | (k >> 16));
  out.normalize();
  return out;
}

TupleSet TupleSet::closure() const {
  TupleSet result = *this;
  for (;;) {
    TupleSet next = result.unite(result.join(result));
    if (next.size() == result.size()) return result;
    result = std::move(next);
  }
}

bool TupleSet::subset_of(const TupleSet& rhs) const {
  return std::includes(rhs.keys_.begin(), rhs.keys_.end(), keys_.begin(), keys_.end());
}

}  // namespace crucible
