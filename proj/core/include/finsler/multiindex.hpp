#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace finsler {

using MultiIndex = std::vector<int>;

// Enumeration of all multi-indices over `vars` variables with total degree
// <= order, in graded lexicographic order. Shared and immutable; obtained via
// MultiIndexTable::get (cached per (vars, order), thread safe).
class MultiIndexTable {
 public:
  static const MultiIndexTable& get(int vars, int order);

  int vars() const { return vars_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(indices_.size()); }

  const MultiIndex& index(int rank) const { return indices_[rank]; }
  int degree(int rank) const { return degrees_[rank]; }

  // Rank of a multi-index; -1 when it exceeds the order.
  int rank(const MultiIndex& mi) const;

  // Rank of indices_[a] + indices_[b]; -1 when the sum exceeds the order.
  int rankOfSum(int a, int b) const;

  // First rank of each total degree d in 0..order+1 (sentinel at the end),
  // so ranks of degree d are [degreeStart[d], degreeStart[d+1]).
  const std::vector<int>& degreeStart() const { return degreeStart_; }

  std::uint64_t packed(int rank) const { return packed_[rank]; }
  int rankOfPacked(std::uint64_t key) const;

  // Product support: for ranks a, b with degree(a) + degree(b) <= order,
  // sumRank(a, b) is the rank of index(a) + index(b). jLimit(a) is the
  // first b whose degree makes the pair exceed the order; valid b are [0, jLimit(a)).
  int sumRank(int a, int b) const { return sums_[rowStart_[a] + b]; }
  int jLimit(int a) const { return degreeStart_[order_ - degrees_[a] + 1]; }

 private:
  MultiIndexTable(int vars, int order);

  int vars_, order_;
  std::vector<MultiIndex> indices_;
  std::vector<int> degrees_;
  std::vector<int> degreeStart_;
  std::vector<std::uint64_t> packed_;
  std::unordered_map<std::uint64_t, int> rankOf_;
  std::vector<int> sums_;
  std::vector<std::size_t> rowStart_;
};

// Packs exponents into 8-bit lanes. Supports vars <= 8, which covers the
// combined (x, y) space of every accepted dimension (n <= 4).
std::uint64_t packMultiIndex(const MultiIndex& mi);

}  // namespace finsler
