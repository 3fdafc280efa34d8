#pragma once

// All finite posets on up to a few points, one representative per
// isomorphism class, in a deterministic order.

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <string>
#include <vector>

#include "fintop/finspace.hpp"

namespace fintop {

namespace detail {

/// Colour refinement on (down-degree, up-degree) signatures. Colours are
/// ranks of signatures, so they do not depend on the input labelling.
inline std::vector<int> refined_colours(const FiniteSpace& s) {
  const std::size_t n = s.size();
  std::vector<int> colour(n, 0);
  std::size_t classes = 0;
  while (true) {
    using Signature = std::tuple<int, int, int, std::vector<int>, std::vector<int>>;
    std::vector<Signature> sig(n);
    for (Point p = 0; p < n; ++p) {
      std::vector<int> below;
      std::vector<int> above;
      bits::for_each(s.strict_down(p), [&](Point q) { below.push_back(colour[q]); });
      bits::for_each(s.strict_up(p), [&](Point q) { above.push_back(colour[q]); });
      std::sort(below.begin(), below.end());
      std::sort(above.begin(), above.end());
      sig[p] = {colour[p], bits::count(s.down(p)), bits::count(s.up(p)), below, above};
    }
    std::vector<Signature> distinct = sig;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (Point p = 0; p < n; ++p) {
      colour[p] = static_cast<int>(
          std::lower_bound(distinct.begin(), distinct.end(), sig[p]) - distinct.begin());
    }
    if (distinct.size() == classes) return colour;
    classes = distinct.size();
  }
}

inline std::vector<PointSet> relabelled(const FiniteSpace& s, const std::vector<Point>& order) {
  // order[i] = old point placed at new index i
  std::vector<Point> pos(order.size());
  for (Point i = 0; i < order.size(); ++i) pos[order[i]] = i;
  std::vector<PointSet> down(order.size(), 0);
  for (Point i = 0; i < order.size(); ++i) {
    bits::for_each(s.down(order[i]), [&](Point q) { down[i] |= bits::bit(pos[q]); });
  }
  return down;
}

inline std::vector<std::string> letter_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "p" + std::to_string(i));
  }
  return out;
}

}  // namespace detail

/// Down-set table of the canonical relabelling: points are sorted by refined
/// colour, then the lexicographically least table over all permutations
/// inside colour classes is taken.
inline std::vector<PointSet> canonical_code(const FiniteSpace& s) {
  const std::size_t n = s.size();
  const std::vector<int> colour = detail::refined_colours(s);
  std::vector<Point> order(n);
  std::iota(order.begin(), order.end(), Point{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Point a, Point b) { return colour[a] < colour[b]; });
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && colour[order[j]] == colour[order[i]]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  std::vector<PointSet> best;
  // Odometer over the permutations of every block.
  std::function<void(std::size_t)> walk = [&](std::size_t b) {
    if (b == blocks.size()) {
      auto code = detail::relabelled(s, order);
      if (best.empty() || code < best) best = std::move(code);
      return;
    }
    auto [lo, hi] = blocks[b];
    std::sort(order.begin() + static_cast<long>(lo), order.begin() + static_cast<long>(hi));
    do {
      walk(b + 1);
    } while (std::next_permutation(order.begin() + static_cast<long>(lo),
                                   order.begin() + static_cast<long>(hi)));
  };
  walk(0);
  return best;
}

inline FiniteSpace canonical_form(const FiniteSpace& s) {
  return FiniteSpace::from_down_sets(detail::letter_labels(s.size()), canonical_code(s));
}

inline bool isomorphic(const FiniteSpace& a, const FiniteSpace& b) {
  return a.size() == b.size() && canonical_code(a) == canonical_code(b);
}

/// Representatives of all posets on exactly n points, sorted by canonical
/// code. Every poset has a labelling in which i < j whenever point i lies
/// strictly below point j, so only such relations are generated.
inline std::vector<SpacePtr> posets_of_size(std::size_t n) {
  if (n > 6) throw PreconditionError("poset enumeration is limited to 6 points");
  std::vector<std::pair<Point, Point>> pairs;
  for (Point i = 0; i < n; ++i) {
    for (Point j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::set<std::vector<PointSet>> codes;
  const std::size_t total = std::size_t{1} << pairs.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    std::vector<PointSet> down(n, 0);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if ((mask >> k) & 1U) down[pairs[k].second] |= bits::bit(pairs[k].first);
    }
    for (Point i = 0; i < n; ++i) down[i] |= bits::bit(i);
    bool transitive = true;
    for (Point j = 0; j < n && transitive; ++j) {
      bits::for_each(down[j], [&](Point i) {
        if (!bits::subset(down[i], down[j])) transitive = false;
      });
    }
    if (!transitive) continue;
    codes.insert(canonical_code(FiniteSpace::from_down_sets(down)));
  }
  std::vector<SpacePtr> out;
  for (const auto& code : codes) {
    out.push_back(make_space(FiniteSpace::from_down_sets(detail::letter_labels(n), code)));
  }
  return out;
}

struct PosetCorpus {
  std::size_t max_points = 0;
  std::vector<SpacePtr> spaces;          // by size, then canonical code
  std::vector<std::size_t> counts;       // counts[n] = posets on n points
};

inline PosetCorpus generate_corpus(std::size_t max_points) {
  if (max_points < 1 || max_points > 5) {
    throw PreconditionError("corpus size must be between 1 and 5 points");
  }
  PosetCorpus c;
  c.max_points = max_points;
  c.counts.assign(max_points + 1, 0);
  for (std::size_t n = 1; n <= max_points; ++n) {
    auto ps = posets_of_size(n);
    c.counts[n] = ps.size();
    c.spaces.insert(c.spaces.end(), ps.begin(), ps.end());
  }
  return c;
}

}  // namespace fintop
