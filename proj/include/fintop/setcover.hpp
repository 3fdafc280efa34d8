#pragma once

// Exact minimum set cover over point bitmasks by branch and bound.

#include <optional>
#include <unordered_set>
#include <vector>

#include "fintop/finspace.hpp"

namespace fintop {

namespace detail {

struct CoverState {
  PointSet uncovered;
  std::size_t start;
  std::size_t slots;
  bool operator==(const CoverState&) const = default;
};

struct CoverStateHash {
  std::size_t operator()(const CoverState& s) const noexcept {
    std::size_t h = std::hash<PointSet>{}(s.uncovered);
    h ^= (s.start + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    h ^= (s.slots + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    return h;
  }
};

class SetCoverSearch {
 public:
  SetCoverSearch(PointSet universe, const std::vector<PointSet>& sets)
      : universe_(universe), sets_(sets), last_index_(64, 0), has_cover_(64, false) {
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      bits::for_each(sets_[i] & universe_, [&](Point e) {
        last_index_[e] = i;
        has_cover_[e] = true;
      });
    }
    // Largest usable part among sets[i..].
    suffix_max_.assign(sets_.size() + 1, 0);
    for (std::size_t i = sets_.size(); i-- > 0;) {
      suffix_max_[i] = std::max(suffix_max_[i + 1], bits::count(sets_[i] & universe_));
    }
  }

  std::optional<std::vector<std::size_t>> run() {
    if (universe_ == 0) return std::vector<std::size_t>{};
    bool coverable = true;
    bits::for_each(universe_, [&](Point e) { coverable = coverable && has_cover_[e]; });
    if (!coverable) return std::nullopt;
    const int need = bits::count(universe_);
    const std::size_t lower = static_cast<std::size_t>((need + suffix_max_[0] - 1) / suffix_max_[0]);
    for (std::size_t k = lower; k <= sets_.size(); ++k) {
      failed_.clear();
      chosen_.clear();
      if (dfs(universe_, 0, k)) return chosen_;
    }
    return std::nullopt;
  }

 private:
  bool dfs(PointSet uncovered, std::size_t start, std::size_t slots) {
    if (uncovered == 0) return true;
    if (slots == 0 || start >= sets_.size()) return false;
    const CoverState state{uncovered, start, slots};
    if (failed_.contains(state)) return false;
    bool ok = true;
    bits::for_each(uncovered, [&](Point e) { ok = ok && last_index_[e] >= start; });
    const int best = suffix_max_[start];
    if (ok && (best == 0 ||
               static_cast<std::size_t>((bits::count(uncovered) + best - 1) / best) > slots)) {
      ok = false;
    }
    if (ok) {
      for (std::size_t i = start; i < sets_.size(); ++i) {
        if ((sets_[i] & uncovered) == 0) continue;
        // Every uncovered element needs a set at index >= i.
        bool reachable = true;
        bits::for_each(uncovered, [&](Point e) { reachable = reachable && last_index_[e] >= i; });
        if (!reachable) break;
        chosen_.push_back(i);
        if (dfs(uncovered & ~sets_[i], i + 1, slots - 1)) return true;
        chosen_.pop_back();
      }
    }
    failed_.insert(state);
    return false;
  }

  PointSet universe_;
  const std::vector<PointSet>& sets_;
  std::vector<std::size_t> last_index_;
  std::vector<bool> has_cover_;
  std::vector<int> suffix_max_;
  std::vector<std::size_t> chosen_;
  std::unordered_set<CoverState, CoverStateHash> failed_;
};

}  // namespace detail

/// Indices of a minimum-cardinality subfamily covering `universe`; among all
/// minimum covers the lexicographically least index sequence is returned.
inline std::optional<std::vector<std::size_t>> exact_set_cover(
    PointSet universe, const std::vector<PointSet>& sets) {
  return detail::SetCoverSearch(universe, sets).run();
}

}  // namespace fintop
