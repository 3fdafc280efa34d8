#pragma once

// Category and sequential topological complexity of maps by exact minimal
// cover search, planner extraction, and transport of covers along
// retraction squares.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fintop/finspace.hpp"
#include "fintop/homotopy.hpp"
#include "fintop/setcover.hpp"
#include "fintop/square.hpp"

namespace fintop {

struct CoverOptions {
  /// Largest X^r the complexity search will build.
  std::size_t max_product_points = 16;
  /// Largest number of open sets examined per search.
  std::size_t max_open_sets = 1U << 20;
};

enum class CoverKind { Category, SequentialComplexity };

/// Open cover of X (category) or X^r (sequential complexity) for a map f,
/// with admissibility witnesses per part. A category part U carries one
/// fence from f|U to a constant; a complexity part carries r-1 fences,
/// fence j joining the j-th and (j+1)-th projections composed with f.
struct Cover {
  CoverKind kind = CoverKind::Category;
  SpaceMap map;
  std::size_t r = 1;
  std::shared_ptr<const ProductSpace> product;  // set for complexity covers
  std::vector<PointSet> parts;
  std::vector<std::vector<FenceWitness>> witnesses;

  const SpacePtr& space() const { return product ? product->space() : map.domain(); }
};

struct InvariantResult {
  int value = 0;
  Cover cover;
};

/// The maps x -> f(x_j), j = 0..r-1, restricted to U in X^r.
inline std::vector<SpaceMap> projection_maps(const ProductSpace& prod, const Subspace& u,
                                             const SpaceMap& f) {
  std::vector<SpaceMap> out;
  for (std::size_t j = 0; j < prod.arity(); ++j) {
    std::vector<Point> a;
    a.reserve(u.embedding.size());
    for (Point p : u.embedding) a.push_back(f(prod.coordinate(p, j)));
    out.push_back(SpaceMapBuilder::trusted(u.space, f.codomain(), std::move(a)));
  }
  return out;
}

struct PlannerDecision {
  bool admissible = false;
  std::vector<FenceWitness> witnesses;  // r-1 fences when admissible
};

/// Planner criterion on U in X^r: the maps x -> f(x_j) are pairwise
/// homotopic on U. Consecutive pairs suffice.
inline PlannerDecision admits_planner(HomotopyEngine& engine, const ProductSpace& prod,
                                      PointSet u, const SpaceMap& f) {
  for (const auto& factor : prod.factors()) {
    if (!same_space(factor, f.domain())) {
      throw DomainMismatch("admits_planner: product factors must be the domain of f");
    }
  }
  if (!prod.space()->is_down_set(u)) {
    throw PreconditionError("admits_planner: subset is not open in the product");
  }
  const Subspace sub = induced_subspace(prod.space(), u);
  const auto maps = projection_maps(prod, sub, f);
  PlannerDecision out;
  for (std::size_t j = 0; j + 1 < maps.size(); ++j) {
    auto d = engine.are_homotopic(maps[j], maps[j + 1]);
    if (!d.homotopic) return PlannerDecision{};
    out.witnesses.push_back(std::move(*d.witness));
  }
  out.admissible = true;
  return out;
}

namespace detail {

/// All admissible down-sets reachable from the empty set by adding one
/// minimal point at a time. Admissibility is closed under passing to open
/// subsets, so this visits every admissible open set. Returns the maximal
/// ones with their witnesses, ordered by bitmask.
template <typename Test>
std::map<PointSet, std::vector<FenceWitness>> maximal_admissible(
    const FiniteSpace& space, Test&& test, std::size_t max_open_sets) {
  std::unordered_map<PointSet, std::vector<FenceWitness>> admissible;
  std::unordered_set<PointSet> seen{0};
  std::vector<PointSet> frontier{0};
  std::map<PointSet, std::vector<FenceWitness>> maximal;
  const PointSet all = space.all();
  while (!frontier.empty()) {
    std::vector<PointSet> next;
    for (PointSet s : frontier) {
      bool extended = false;
      const PointSet addable = space.minimal(all & ~s);
      bits::for_each(addable, [&](Point p) {
        const PointSet t = s | bits::bit(p);
        if (admissible.contains(t)) {
          extended = true;
          return;
        }
        if (!seen.insert(t).second) return;
        if (seen.size() > max_open_sets) {
          throw SearchBudgetExceeded("open-set budget exhausted", 0, -1);
        }
        if (auto w = test(t)) {
          admissible.emplace(t, std::move(*w));
          next.push_back(t);
          extended = true;
        }
      });
      if (!extended && s != 0) maximal.emplace(s, admissible.at(s));
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  return maximal;
}

inline InvariantResult solve_cover(Cover base,
                                   std::map<PointSet, std::vector<FenceWitness>> maximal) {
  std::vector<PointSet> sets;
  for (const auto& [s, w] : maximal) sets.push_back(s);
  auto chosen = exact_set_cover(base.space()->all(), sets);
  if (!chosen) throw PreconditionError("admissible open sets do not cover the space");
  for (std::size_t i : *chosen) {
    base.parts.push_back(sets[i]);
    base.witnesses.push_back(maximal.at(sets[i]));
  }
  return InvariantResult{static_cast<int>(chosen->size()) - 1, std::move(base)};
}

inline int maximal_point_count(const FiniteSpace& x) {
  return bits::count(x.maximal(x.all()));
}

inline int int_pow(int b, std::size_t e) {
  int out = 1;
  while (e-- > 0) out *= b;
  return out;
}

}  // namespace detail

/// Witness that f|U is null-homotopic, U open in the domain of f.
inline std::optional<FenceWitness> category_part_witness(HomotopyEngine& engine,
                                                         const SpaceMap& f, PointSet u) {
  const Subspace sub = induced_subspace(f.domain(), u);
  auto d = engine.is_nullhomotopic(restrict_map(f, sub));
  if (!d.homotopic) return std::nullopt;
  return std::move(d.witness);
}

/// Least n such that the domain of f has an open cover by n+1 sets on each
/// of which f is null-homotopic, with a witness cover.
inline InvariantResult cat_map(HomotopyEngine& engine, const SpaceMap& f,
                               const CoverOptions& options = {}) {
  if (f.domain()->empty()) throw EmptyDomain("category of a map with empty domain");
  auto test = [&](PointSet u) -> std::optional<std::vector<FenceWitness>> {
    auto w = category_part_witness(engine, f, u);
    if (!w) return std::nullopt;
    return std::vector<FenceWitness>{std::move(*w)};
  };
  std::map<PointSet, std::vector<FenceWitness>> maximal;
  try {
    maximal = detail::maximal_admissible(*f.domain(), test, options.max_open_sets);
  } catch (const SearchBudgetExceeded&) {
    // Minimal neighbourhoods of maximal points have a top, so f is
    // null-homotopic on each.
    const int lower = engine.is_nullhomotopic(f).homotopic ? 0 : 1;
    throw SearchBudgetExceeded("category search exceeded its open-set budget", lower,
                               detail::maximal_point_count(*f.domain()) - 1);
  }
  Cover base{CoverKind::Category, f, 1, nullptr, {}, {}};
  return detail::solve_cover(std::move(base), std::move(maximal));
}

inline InvariantResult cat_space(HomotopyEngine& engine, const SpacePtr& x,
                                 const CoverOptions& options = {}) {
  return cat_map(engine, SpaceMap::identity(x), options);
}

/// Least k such that X^r has an open cover by k+1 sets each admitting a
/// sequential f-motion planner. Domain and codomain must be connected.
inline InvariantResult tc_map(HomotopyEngine& engine, const SpaceMap& f, std::size_t r,
                              const CoverOptions& options = {}) {
  if (r < 2) throw PreconditionError("sequential complexity needs r >= 2");
  if (f.domain()->empty()) throw EmptyDomain("complexity of a map with empty domain");
  if (!is_connected(*f.domain()) || !is_connected(*f.codomain())) {
    throw PreconditionError("sequential complexity is only defined for connected spaces");
  }
  const int upper = detail::int_pow(detail::maximal_point_count(*f.domain()), r) - 1;
  double points = 1;
  for (std::size_t i = 0; i < r; ++i) points *= static_cast<double>(f.domain()->size());
  if (points > static_cast<double>(options.max_product_points) ||
      points > static_cast<double>(kMaxPoints)) {
    throw SearchBudgetExceeded("product X^" + std::to_string(r) + " has " +
                                   std::to_string(static_cast<long long>(points)) +
                                   " points, over budget",
                               0, upper);
  }
  auto prod = std::make_shared<const ProductSpace>(power(f.domain(), r));
  auto test = [&](PointSet u) -> std::optional<std::vector<FenceWitness>> {
    auto d = admits_planner(engine, *prod, u, f);
    if (!d.admissible) return std::nullopt;
    return std::move(d.witnesses);
  };
  std::map<PointSet, std::vector<FenceWitness>> maximal;
  try {
    maximal = detail::maximal_admissible(*prod->space(), test, options.max_open_sets);
  } catch (const SearchBudgetExceeded&) {
    throw SearchBudgetExceeded("complexity search exceeded its open-set budget", 0, upper);
  }
  Cover base{CoverKind::SequentialComplexity, f, r, prod, {}, {}};
  return detail::solve_cover(std::move(base), std::move(maximal));
}

inline InvariantResult tc_space(HomotopyEngine& engine, const SpacePtr& x, std::size_t r,
                                const CoverOptions& options = {}) {
  return tc_map(engine, SpaceMap::identity(x), r, options);
}

/// Reason the cover fails its invariants, or nullopt when it is valid.
inline std::optional<std::string> cover_problem(const Cover& c) {
  const SpacePtr& space = c.space();
  if (c.parts.size() != c.witnesses.size()) return "part and witness counts differ";
  PointSet covered = 0;
  for (std::size_t i = 0; i < c.parts.size(); ++i) {
    const PointSet u = c.parts[i];
    const std::string where = "part " + std::to_string(i);
    if (u == 0) return where + " is empty";
    if (!space->is_down_set(u)) return where + " is not open";
    covered |= u;
    const Subspace sub = induced_subspace(space, u);
    const auto& ws = c.witnesses[i];
    if (c.kind == CoverKind::Category) {
      if (ws.size() != 1) return where + " needs exactly one fence";
      if (!ws[0].joins(restrict_map(c.map, sub), ws[0].back()) || !ws[0].back().is_constant()) {
        return where + " witness is not a fence from f|U to a constant";
      }
    } else {
      if (!c.product || c.product->arity() != c.r) return "complexity cover lacks its product";
      if (ws.size() + 1 != c.r) return where + " needs r-1 fences";
      const auto maps = projection_maps(*c.product, sub, c.map);
      for (std::size_t j = 0; j + 1 < c.r; ++j) {
        if (!ws[j].joins(maps[j], maps[j + 1])) {
          return where + " fence " + std::to_string(j) + " does not join consecutive projections";
        }
      }
    }
  }
  if (covered != space->all()) return "parts do not cover the space";
  return std::nullopt;
}

inline bool validate_cover(const Cover& c) { return !cover_problem(c).has_value(); }

/// One row of a planner table: a fence of points of Y from f(x_0) to
/// f(x_{r-1}) passing f(x_j) at position waypoints[j].
struct PlannerEntry {
  Point tuple = 0;
  std::vector<Point> fence;
  std::vector<std::size_t> waypoints;
};

struct PlannerTable {
  std::shared_ptr<const ProductSpace> product;
  PointSet subset = 0;
  SpaceMap map;
  std::vector<PlannerEntry> entries;
};

/// Evaluates the projection fences at every tuple of U and concatenates
/// them, merging repeated consecutive points.
inline PlannerTable extract_planner(std::shared_ptr<const ProductSpace> prod, PointSet u,
                                    const SpaceMap& f,
                                    const std::vector<FenceWitness>& witnesses) {
  const std::size_t r = prod->arity();
  if (witnesses.size() + 1 != r) {
    throw MissingWitness("planner extraction needs " + std::to_string(r - 1) + " fences, got " +
                         std::to_string(witnesses.size()));
  }
  const Subspace sub = induced_subspace(prod->space(), u);
  for (const auto& w : witnesses) {
    if (!w.valid() || !same_space(w.front().domain(), sub.space) ||
        !same_space(w.front().codomain(), f.codomain())) {
      throw MissingWitness("planner witness is not a fence of maps U -> Y");
    }
  }
  PlannerTable table{prod, u, f, {}};
  for (Point local = 0; local < sub.embedding.size(); ++local) {
    const Point tuple = sub.embedding[local];
    PlannerEntry e;
    e.tuple = tuple;
    e.fence.push_back(f(prod->coordinate(tuple, 0)));
    e.waypoints.push_back(0);
    for (std::size_t j = 0; j + 1 < r; ++j) {
      const FenceWitness& w = witnesses[j];
      if (w.front()(local) != e.fence.back()) {
        throw MissingWitness("fence " + std::to_string(j) + " does not start at f(x_" +
                             std::to_string(j) + ")");
      }
      for (std::size_t k = 1; k < w.length(); ++k) {
        const Point y = w.steps[k](local);
        if (y != e.fence.back()) e.fence.push_back(y);
      }
      e.waypoints.push_back(e.fence.size() - 1);
    }
    table.entries.push_back(std::move(e));
  }
  return table;
}

/// Reason a planner table breaks its invariants, or nullopt.
inline std::optional<std::string> planner_problem(const PlannerTable& t) {
  const FiniteSpace& y = *t.map.codomain();
  const std::size_t r = t.product->arity();
  PointSet seen = 0;
  for (const auto& e : t.entries) {
    const std::string where = "entry " + t.product->space()->label(e.tuple);
    if (!bits::contains(t.subset, e.tuple)) return where + " lies outside the subset";
    seen |= bits::bit(e.tuple);
    if (e.fence.empty() || e.waypoints.size() != r) return where + " has wrong waypoint count";
    if (e.waypoints.front() != 0 || e.waypoints.back() + 1 != e.fence.size()) {
      return where + " does not start and end at its endpoints";
    }
    for (std::size_t j = 0; j < r; ++j) {
      if (j > 0 && e.waypoints[j] < e.waypoints[j - 1]) return where + " waypoints out of order";
      if (e.waypoints[j] >= e.fence.size()) return where + " waypoint beyond fence";
      if (e.fence[e.waypoints[j]] != t.map(t.product->coordinate(e.tuple, j))) {
        return where + " misses f(x_" + std::to_string(j) + ")";
      }
    }
    for (std::size_t k = 1; k < e.fence.size(); ++k) {
      if (!y.comparable(e.fence[k - 1], e.fence[k])) return where + " has incomparable steps";
    }
  }
  if (seen != t.subset) return "table does not cover the subset";
  return std::nullopt;
}

inline bool validate_planner(const PlannerTable& t) { return !planner_problem(t).has_value(); }

/// Transports an admissible cover of X (or X^r) for f to one of X' (or
/// X'^r) for f': parts are intersected with X' and every fence step h is
/// replaced by r_Y o h restricted to the new part. Empty parts are dropped.
/// Parts keep their indices 0..n, the dropped ones aside.
inline Cover restrict_cover(const Cover& cover, const RetractionSquare& sq) {
  if (auto why = detail::square_component_problem(sq)) throw SquareInvalid(*why);
  if (auto x = detail::square_failure(sq)) {
    throw SquareInvalid("square does not commute at '" + sq.f.domain()->label(*x) + "'");
  }
  if (!(cover.map == sq.f)) throw SquareInvalid("cover is not a cover for the square's map");

  Cover out{cover.kind, sq.f_prime, cover.r, nullptr, {}, {}};
  const SpacePtr& big = cover.space();

  // Point of X' (or X'^r) -> point of X (or X^r).
  std::vector<Point> embed;
  if (cover.kind == CoverKind::Category) {
    embed = sq.x_sub.embedding;
  } else {
    out.product = std::make_shared<const ProductSpace>(power(sq.x_sub.space, cover.r));
    for (Point p = 0; p < out.product->space()->size(); ++p) {
      std::vector<Point> coords = out.product->coordinates(p);
      for (Point& c : coords) c = sq.x_sub.embedding[c];
      embed.push_back(cover.product->index(coords));
    }
  }
  const SpacePtr& small = out.space();

  for (std::size_t i = 0; i < cover.parts.size(); ++i) {
    PointSet v = 0;
    for (Point p = 0; p < embed.size(); ++p) {
      if (bits::contains(cover.parts[i], embed[p])) v |= bits::bit(p);
    }
    if (v == 0) continue;
    const Subspace usub = induced_subspace(big, cover.parts[i]);
    const Subspace vsub = induced_subspace(small, v);
    std::vector<FenceWitness> moved;
    for (const FenceWitness& w : cover.witnesses[i]) {
      std::vector<SpaceMap> steps;
      for (const SpaceMap& h : w.steps) {
        std::vector<Point> a;
        for (Point q : vsub.embedding) a.push_back(sq.r_y(h(*usub.local(embed[q]))));
        steps.push_back(SpaceMapBuilder::trusted(vsub.space, sq.y_sub.space, std::move(a)));
      }
      moved.push_back(FenceWitness{detail::compress_fence(steps)});
    }
    out.parts.push_back(v);
    out.witnesses.push_back(std::move(moved));
  }
  return out;
}

}  // namespace fintop
