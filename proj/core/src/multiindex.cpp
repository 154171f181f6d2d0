#include "finsler/multiindex.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "finsler/errors.hpp"

namespace finsler {

namespace {

// Emits all multi-indices of exact total degree d over `vars` slots in
// lexicographic order (first slot most significant).
void emitDegree(int vars, int d, MultiIndex& cur, int slot,
                std::vector<MultiIndex>& out) {
  if (slot == vars - 1) {
    cur[slot] = d;
    out.push_back(cur);
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur[slot] = e;
    emitDegree(vars, d - e, cur, slot + 1, out);
  }
}

}  // namespace

std::uint64_t packMultiIndex(const MultiIndex& mi) {
  std::uint64_t key = 0;
  for (std::size_t v = 0; v < mi.size(); ++v) {
    key |= static_cast<std::uint64_t>(mi[v] & 0xff) << (8 * v);
  }
  return key;
}

MultiIndexTable::MultiIndexTable(int vars, int order) : vars_(vars), order_(order) {
  degreeStart_.push_back(0);
  MultiIndex cur(vars, 0);
  for (int d = 0; d <= order; ++d) {
    emitDegree(vars, d, cur, 0, indices_);
    degreeStart_.push_back(static_cast<int>(indices_.size()));
  }
  packed_.reserve(indices_.size());
  degrees_.reserve(indices_.size());
  rankOf_.reserve(indices_.size() * 2);
  for (std::size_t r = 0; r < indices_.size(); ++r) {
    int d = 0;
    for (int e : indices_[r]) d += e;
    degrees_.push_back(d);
    packed_.push_back(packMultiIndex(indices_[r]));
    rankOf_.emplace(packed_.back(), static_cast<int>(r));
  }
  rowStart_.resize(indices_.size());
  std::size_t total = 0;
  for (std::size_t a = 0; a < indices_.size(); ++a) {
    rowStart_[a] = total;
    total += static_cast<std::size_t>(degreeStart_[order_ - degrees_[a] + 1]);
  }
  sums_.resize(total);
  for (std::size_t a = 0; a < indices_.size(); ++a) {
    int jmax = degreeStart_[order_ - degrees_[a] + 1];
    for (int b = 0; b < jmax; ++b) {
      sums_[rowStart_[a] + b] = rankOf_.at(packed_[a] + packed_[b]);
    }
  }
}

const MultiIndexTable& MultiIndexTable::get(int vars, int order) {
  if (vars < 1 || vars > 8) fail(ErrorKind::Argument, "jet variable count must be in [1, 8]");
  if (order < 0 || order > 8) fail(ErrorKind::Argument, "jet order must be in [0, 8]");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<MultiIndexTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(vars, order);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::unique_ptr<MultiIndexTable>(new MultiIndexTable(vars, order))).first;
  }
  return *it->second;
}

int MultiIndexTable::rank(const MultiIndex& mi) const {
  if (static_cast<int>(mi.size()) != vars_) {
    fail(ErrorKind::Argument, "multi-index arity mismatch");
  }
  int d = 0;
  for (int e : mi) {
    if (e < 0) fail(ErrorKind::Argument, "negative exponent in multi-index");
    d += e;
  }
  if (d > order_) return -1;
  auto it = rankOf_.find(packMultiIndex(mi));
  return it == rankOf_.end() ? -1 : it->second;
}

int MultiIndexTable::rankOfSum(int a, int b) const {
  if (degrees_[a] + degrees_[b] > order_) return -1;
  auto it = rankOf_.find(packed_[a] + packed_[b]);
  return it == rankOf_.end() ? -1 : it->second;
}

int MultiIndexTable::rankOfPacked(std::uint64_t key) const {
  auto it = rankOf_.find(key);
  return it == rankOf_.end() ? -1 : it->second;
}

}  // namespace finsler
