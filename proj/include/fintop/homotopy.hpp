#pragma once

// Homotopy of maps between finite spaces. Two maps are homotopic exactly
// when a fence of pairwise comparable continuous maps joins them, so every
// positive answer comes with an explicit fence.

#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fintop/cache.hpp"
#include "fintop/finspace.hpp"

namespace fintop {

/// Consecutive steps are comparable in the pointwise order.
struct FenceWitness {
  std::vector<SpaceMap> steps;

  const SpaceMap& front() const { return steps.front(); }
  const SpaceMap& back() const { return steps.back(); }
  std::size_t length() const noexcept { return steps.size(); }

  bool valid() const {
    if (steps.empty()) return false;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const SpaceMap& s = steps[i];
      if (!same_space(s.domain(), steps.front().domain()) ||
          !same_space(s.codomain(), steps.front().codomain())) {
        return false;
      }
      if (!SpaceMap::is_order_preserving(*s.domain(), *s.codomain(), s.assignment())) {
        return false;
      }
      if (i > 0 && !steps[i - 1].comparable(s)) return false;
    }
    return true;
  }

  /// Valid fence running from `from` to `to`.
  bool joins(const SpaceMap& from, const SpaceMap& to) const {
    return valid() && front() == from && back() == to;
  }

  FenceWitness reversed() const {
    return FenceWitness{std::vector<SpaceMap>(steps.rbegin(), steps.rend())};
  }
};

namespace detail {

inline int direction(const SpaceMap& a, const SpaceMap& b) {
  if (a.leq(b)) return 1;
  if (b.leq(a)) return -1;
  return 0;
}

/// Drops repeated steps and merges monotone runs into single steps.
inline std::vector<SpaceMap> compress_fence(const std::vector<SpaceMap>& steps) {
  std::vector<SpaceMap> out;
  for (const SpaceMap& s : steps) {
    if (!out.empty() && out.back().assignment() == s.assignment()) continue;
    if (out.size() >= 2) {
      const int d1 = direction(out[out.size() - 2], out.back());
      const int d2 = direction(out.back(), s);
      if (d1 != 0 && d1 == d2) {
        out.back() = s;
        continue;
      }
    }
    out.push_back(s);
  }
  return out;
}

inline std::string assignment_key(const std::vector<Point>& a) {
  return std::string(a.begin(), a.end());
}

inline std::vector<Point> key_assignment(const std::string& k) {
  std::vector<Point> a(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) a[i] = static_cast<unsigned char>(k[i]);
  return a;
}

}  // namespace detail

/// Result of iterated beat-point removal.
struct CoreResult {
  Subspace core;
  SpaceMap retraction;  // X -> core
  SpaceMap inclusion;   // core -> X
  std::vector<Point> removed;
  /// Fence from id_X to inclusion after retraction, one step per removal.
  FenceWitness deformation;
};

/// Repeatedly removes the least-indexed beat point. A point is a down beat
/// point when its strict down-set has a maximum and an up beat point when its
/// strict up-set has a minimum; it is sent to that extremum.
inline CoreResult core(const SpacePtr& x) {
  const FiniteSpace& s = *x;
  PointSet alive = s.all();
  std::vector<Point> removed;
  std::vector<Point> current(s.size());
  std::iota(current.begin(), current.end(), Point{0});
  std::vector<SpaceMap> steps{SpaceMap::identity(x)};

  auto extremum = [&](PointSet set, bool want_max) -> std::optional<Point> {
    std::optional<Point> found;
    bits::for_each(set, [&](Point y) {
      if (found) return;
      const PointSet cone = want_max ? s.down(y) : s.up(y);
      if (bits::subset(set, cone)) found = y;
    });
    return found;
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (Point p = 0; p < s.size() && !progress; ++p) {
      if (!bits::contains(alive, p)) continue;
      std::optional<Point> target;
      if (const PointSet d = s.strict_down(p) & alive; d != 0) target = extremum(d, true);
      if (!target) {
        if (const PointSet u = s.strict_up(p) & alive; u != 0) target = extremum(u, false);
      }
      if (!target) continue;
      alive &= ~bits::bit(p);
      removed.push_back(p);
      for (Point& c : current) {
        if (c == p) c = *target;
      }
      steps.push_back(SpaceMapBuilder::trusted(x, x, current));
      progress = true;
    }
  }

  Subspace c = induced_subspace(x, alive);
  std::vector<Point> r(s.size());
  for (Point p = 0; p < s.size(); ++p) r[p] = *c.local(current[p]);
  SpaceMap retraction = SpaceMapBuilder::trusted(x, c.space, std::move(r));
  SpaceMap inclusion = c.inclusion();
  return CoreResult{std::move(c), std::move(retraction), std::move(inclusion),
                    std::move(removed), FenceWitness{std::move(steps)}};
}

inline bool is_contractible(const SpacePtr& x) { return core(x).core.space->size() == 1; }

enum class FenceSearch {
  OnePoint,             // neighbours differ at a single point
  FullComparability,    // neighbours are all comparable continuous maps
  OnePointWithFallback  // one-point moves, then full adjacency on a miss
};

struct HomotopyOptions {
  FenceSearch search = FenceSearch::OnePointWithFallback;
  bool reduce_to_cores = true;
  /// Full-comparability search enumerates the whole map space; above this
  /// many maps the fallback is skipped.
  std::size_t fallback_map_cap = 200000;
  /// One-point search gives up (SearchBudgetExceeded) past this many maps.
  std::size_t max_visited = 5000000;
  std::size_t cache_capacity = 1U << 16;
};

struct HomotopyDecision {
  bool homotopic = false;
  std::optional<FenceWitness> witness;
};

/// Raw fence searches on assignment vectors; exposed for cross-checking.
namespace fence {

enum class Outcome { Found, NotFound, Capped };

struct SearchResult {
  Outcome outcome = Outcome::NotFound;
  std::vector<std::vector<Point>> path;
};

/// Breadth-first search over continuous maps, moving one point at a time.
inline SearchResult one_point(const FiniteSpace& x, const FiniteSpace& y,
                              const std::vector<Point>& from,
                              const std::vector<Point>& to,
                              std::size_t max_visited) {
  SearchResult res;
  const std::string start = detail::assignment_key(from);
  const std::string goal = detail::assignment_key(to);
  std::unordered_map<std::string, std::string> parent;
  parent.emplace(start, std::string());
  std::deque<std::string> queue{start};
  std::vector<PointSet> comparable(y.size());
  for (Point v = 0; v < y.size(); ++v) comparable[v] = (y.down(v) | y.up(v)) & ~bits::bit(v);

  bool found = start == goal;
  while (!queue.empty() && !found) {
    std::string cur = std::move(queue.front());
    queue.pop_front();
    for (Point p = 0; p < x.size() && !found; ++p) {
      const auto here = static_cast<Point>(static_cast<unsigned char>(cur[p]));
      PointSet allowed = comparable[here];
      bits::for_each(x.strict_down(p), [&](Point q) {
        allowed &= y.up(static_cast<unsigned char>(cur[q]));
      });
      bits::for_each(x.strict_up(p), [&](Point q) {
        allowed &= y.down(static_cast<unsigned char>(cur[q]));
      });
      bits::for_each(allowed, [&](Point v) {
        if (found) return;
        std::string nxt = cur;
        nxt[p] = static_cast<char>(v);
        if (parent.emplace(nxt, cur).second) {
          if (nxt == goal) {
            found = true;
            return;
          }
          queue.push_back(std::move(nxt));
        }
      });
      if (parent.size() > max_visited) {
        res.outcome = Outcome::Capped;
        return res;
      }
    }
  }
  if (!found) return res;
  res.outcome = Outcome::Found;
  for (std::string k = goal; !k.empty(); k = parent.at(k)) {
    res.path.push_back(detail::key_assignment(k));
  }
  std::reverse(res.path.begin(), res.path.end());
  return res;
}

/// Breadth-first search where any two comparable continuous maps are
/// adjacent. Enumerates the full map space.
inline SearchResult full_comparability(const FiniteSpace& x, const FiniteSpace& y,
                                       const std::vector<Point>& from,
                                       const std::vector<Point>& to,
                                       std::size_t map_cap) {
  SearchResult res;
  std::vector<std::vector<Point>> maps;
  bool capped = false;
  for_each_map(x, y, [&](const std::vector<Point>& a) {
    maps.push_back(a);
    if (maps.size() > map_cap) {
      capped = true;
      return false;
    }
    return true;
  });
  if (capped) {
    res.outcome = Outcome::Capped;
    return res;
  }
  auto leq = [&](const std::vector<Point>& a, const std::vector<Point>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!y.leq(a[i], b[i])) return false;
    }
    return true;
  };
  const auto find = [&](const std::vector<Point>& a) {
    return static_cast<std::size_t>(
        std::lower_bound(maps.begin(), maps.end(), a) - maps.begin());
  };
  const std::size_t s = find(from);
  const std::size_t t = find(to);
  if (s >= maps.size() || maps[s] != from || t >= maps.size() || maps[t] != to) {
    return res;
  }
  std::vector<std::size_t> parent(maps.size(), maps.size());
  parent[s] = s;
  std::deque<std::size_t> queue{s};
  while (!queue.empty() && parent[t] == maps.size()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < maps.size(); ++j) {
      if (parent[j] != maps.size()) continue;
      if (leq(maps[cur], maps[j]) || leq(maps[j], maps[cur])) {
        parent[j] = cur;
        queue.push_back(j);
      }
    }
  }
  if (parent[t] == maps.size()) return res;
  res.outcome = Outcome::Found;
  for (std::size_t k = t;; k = parent[k]) {
    res.path.push_back(maps[k]);
    if (k == s) break;
  }
  std::reverse(res.path.begin(), res.path.end());
  return res;
}

}  // namespace fence

/// Decides homotopy of maps between finite spaces. Queries are memoised in a
/// bounded LRU cache keyed by the order structures and the two assignments;
/// the engine may be shared between threads.
class HomotopyEngine {
 public:
  explicit HomotopyEngine(HomotopyOptions options = {})
      : options_(options), cache_(options.cache_capacity) {}

  const HomotopyOptions& options() const noexcept { return options_; }

  HomotopyDecision are_homotopic(const SpaceMap& f, const SpaceMap& g) {
    if (!same_space(f.domain(), g.domain()) || !same_space(f.codomain(), g.codomain())) {
      throw DomainMismatch("are_homotopic: maps have different domains or codomains");
    }
    if (f.assignment() == g.assignment()) {
      return {true, FenceWitness{{f}}};
    }
    if (f.comparable(g)) return {true, FenceWitness{{f, g}}};
    const std::string key = f.domain()->structure_key() + '|' +
                            f.codomain()->structure_key() + '|' +
                            detail::assignment_key(f.assignment()) + '|' +
                            detail::assignment_key(g.assignment());
    std::optional<std::vector<std::vector<Point>>> path;
    if (auto hit = cache_.get(key)) {
      path = std::move(*hit);
    } else {
      path = search(f, g);
      cache_.put(key, path);
    }
    if (!path) return {false, std::nullopt};
    std::vector<SpaceMap> steps;
    steps.reserve(path->size());
    for (auto& a : *path) {
      steps.push_back(SpaceMapBuilder::trusted(f.domain(), f.codomain(), std::move(a)));
    }
    return {true, FenceWitness{std::move(steps)}};
  }

  /// Homotopy to a constant map. The constant tried for each codomain
  /// component is its least-indexed point; only the component holding the
  /// image can succeed.
  HomotopyDecision is_nullhomotopic(const SpaceMap& f) {
    if (f.domain()->empty()) throw EmptyDomain("null-homotopy of a map with empty domain");
    const PointSet image = f.image();
    for (PointSet comp : connected_components(*f.codomain())) {
      if (!bits::subset(image, comp)) continue;
      return are_homotopic(f, SpaceMap::constant(f.domain(), f.codomain(), bits::lowest(comp)));
    }
    return {false, std::nullopt};
  }

  std::size_t cache_hits() const { return cache_.hits(); }
  std::size_t cache_misses() const { return cache_.misses(); }

 private:
  using Path = std::vector<std::vector<Point>>;

  std::optional<Path> raw_search(const FiniteSpace& x, const FiniteSpace& y,
                                 const std::vector<Point>& from,
                                 const std::vector<Point>& to) const {
    using fence::Outcome;
    if (options_.search == FenceSearch::FullComparability) {
      auto r = fence::full_comparability(x, y, from, to, options_.fallback_map_cap);
      if (r.outcome == Outcome::Capped) {
        throw SearchBudgetExceeded("full-comparability fence search exceeded its map cap", 0, -1);
      }
      if (r.outcome == Outcome::Found) return std::move(r.path);
      return std::nullopt;
    }
    auto r = fence::one_point(x, y, from, to, options_.max_visited);
    if (r.outcome == Outcome::Capped) {
      throw SearchBudgetExceeded("one-point fence search exceeded its visit cap", 0, -1);
    }
    if (r.outcome == Outcome::Found) return std::move(r.path);
    if (options_.search == FenceSearch::OnePointWithFallback) {
      auto full = fence::full_comparability(x, y, from, to, options_.fallback_map_cap);
      if (full.outcome == Outcome::Found) return std::move(full.path);
    }
    return std::nullopt;
  }

  std::optional<Path> search(const SpaceMap& f, const SpaceMap& g) const {
    if (!options_.reduce_to_cores) {
      return raw_search(*f.domain(), *f.codomain(), f.assignment(), g.assignment());
    }
    // f ~ g iff rY f iX ~ rY g iX on the cores, since iX rX ~ id and iY rY ~ id.
    const CoreResult cx = core(f.domain());
    const CoreResult cy = core(f.codomain());
    const SpaceMap fr = compose(cy.retraction, compose(f, cx.inclusion));
    const SpaceMap gr = compose(cy.retraction, compose(g, cx.inclusion));
    auto reduced = raw_search(*fr.domain(), *fr.codomain(), fr.assignment(), gr.assignment());
    if (!reduced) return std::nullopt;

    std::vector<SpaceMap> steps;
    const SpaceMap fy = compose(compose(cy.inclusion, cy.retraction), f);
    const SpaceMap gy = compose(compose(cy.inclusion, cy.retraction), g);
    for (const SpaceMap& d : cy.deformation.steps) steps.push_back(compose(d, f));
    for (const SpaceMap& e : cx.deformation.steps) steps.push_back(compose(fy, e));
    for (auto& a : *reduced) {
      SpaceMap h = SpaceMapBuilder::trusted(fr.domain(), fr.codomain(), std::move(a));
      steps.push_back(compose(cy.inclusion, compose(h, cx.retraction)));
    }
    for (auto it = cx.deformation.steps.rbegin(); it != cx.deformation.steps.rend(); ++it) {
      steps.push_back(compose(gy, *it));
    }
    for (auto it = cy.deformation.steps.rbegin(); it != cy.deformation.steps.rend(); ++it) {
      steps.push_back(compose(*it, g));
    }
    Path out;
    for (const SpaceMap& s : detail::compress_fence(steps)) out.push_back(s.assignment());
    return out;
  }

  HomotopyOptions options_;
  mutable LruCache<std::string, std::optional<Path>> cache_;
};

}  // namespace fintop
