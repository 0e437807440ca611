#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace crucible {

using AtomIndex = std::uint16_t;

/// A set of same-arity tuples over interned atoms. Tuples are packed into one
/// 64-bit key, 16 bits per column with column 0 most significant, so the sorted
/// key order is the lexicographic tuple order.
class TupleSet {
 public:
  static constexpr int kMaxArity = 4;

  explicit TupleSet(int arity = 1) : arity_(arity) {}
  static TupleSet singleton(AtomIndex atom);
  static TupleSet from_keys(int arity, std::vector<std::uint64_t> keys);

  int arity() const { return arity_; }
  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  const std::vector<std::uint64_t>& keys() const { return keys_; }

  void insert(std::span<const AtomIndex> tuple);
  void insert(std::initializer_list<AtomIndex> tuple) { insert(std::span(tuple.begin(), tuple.size())); }
  /// Appends without restoring order; call normalize() before any query.
  void push_key(std::uint64_t key) { keys_.push_back(key); }
  void normalize();

  bool contains(std::span<const AtomIndex> tuple) const;
  bool contains(std::initializer_list<AtomIndex> tuple) const {
    return contains(std::span(tuple.begin(), tuple.size()));
  }
  bool contains_key(std::uint64_t key) const;

  std::vector<AtomIndex> tuple(std::uint64_t key) const;
  AtomIndex column(std::uint64_t key, int col) const {
    return static_cast<AtomIndex>(key >> (16 * (arity_ - 1 - col)));
  }

  TupleSet join(const TupleSet& rhs) const;
  TupleSet product(const TupleSet& rhs) const;
  TupleSet unite(const TupleSet& rhs) const;
  TupleSet minus(const TupleSet& rhs) const;
  TupleSet intersect(const TupleSet& rhs) const;
  TupleSet transpose() const;
  TupleSet closure() const;
  bool subset_of(const TupleSet& rhs) const;

  friend bool operator==(const TupleSet&, const TupleSet&) = default;

  static std::uint64_t pack(std::span<const AtomIndex> tuple);

 private:
  int arity_;
  std::vector<std::uint64_t> keys_;  // sorted, unique
};

}  // namespace crucible
