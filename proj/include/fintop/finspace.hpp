#pragma once

// Finite posets viewed as finite topological spaces (Alexandrov topology,
// open sets are the down-sets), continuous maps between them, induced
// subspaces and finite products.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fintop/error.hpp"

namespace fintop {

using Point = std::uint32_t;
/// Subset of the points of a space, bit i standing for point i.
using PointSet = std::uint64_t;

inline constexpr std::size_t kMaxPoints = 64;

namespace bits {

constexpr PointSet bit(Point i) noexcept { return PointSet{1} << i; }
constexpr bool contains(PointSet s, Point i) noexcept { return (s >> i) & 1U; }
constexpr bool subset(PointSet a, PointSet b) noexcept { return (a & ~b) == 0; }
constexpr int count(PointSet s) noexcept { return std::popcount(s); }
constexpr PointSet full(std::size_t n) noexcept {
  return n >= 64 ? ~PointSet{0} : (PointSet{1} << n) - 1;
}
constexpr Point lowest(PointSet s) noexcept {
  return static_cast<Point>(std::countr_zero(s));
}

template <typename F>
void for_each(PointSet s, F&& f) {
  while (s != 0) {
    f(lowest(s));
    s &= s - 1;
  }
}

inline std::vector<Point> to_vector(PointSet s) {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count(s)));
  for_each(s, [&](Point p) { out.push_back(p); });
  return out;
}

}  // namespace bits

class FiniteSpace {
 public:
  FiniteSpace() = default;

  /// Validates a raw relation matrix: `leq[a][b]` means a <= b. Reflexive
  /// and transitive closure are applied before the antisymmetry check.
  static FiniteSpace from_relation(std::vector<std::string> labels,
                                   const std::vector<std::vector<bool>>& leq) {
    const std::size_t n = labels.size();
    if (leq.size() != n) {
      throw ShapeError("relation has " + std::to_string(leq.size()) +
                       " rows for " + std::to_string(n) + " labels");
    }
    std::vector<PointSet> down(n, 0);
    for (std::size_t b = 0; b < n; ++b) {
      if (leq[b].size() != n) throw ShapeError("relation matrix is not square");
    }
    check_size(n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (leq[a][b]) down[b] |= bits::bit(static_cast<Point>(a));
      }
    }
    return FiniteSpace(std::move(labels), std::move(down));
  }

  /// Builds the order generated by the listed (lower, upper) pairs.
  static FiniteSpace from_covers(
      std::vector<std::string> labels,
      const std::vector<std::pair<std::string, std::string>>& covers) {
    check_size(labels.size());
    std::unordered_map<std::string, Point> index;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!index.emplace(labels[i], static_cast<Point>(i)).second) {
        throw ShapeError("duplicate point label '" + labels[i] + "'");
      }
    }
    std::vector<PointSet> down(labels.size(), 0);
    for (const auto& [lo, hi] : covers) {
      auto a = index.find(lo);
      auto b = index.find(hi);
      if (a == index.end() || b == index.end()) {
        throw ShapeError("cover relation names unknown point '" +
                         (a == index.end() ? lo : hi) + "'");
      }
      down[b->second] |= bits::bit(a->second);
    }
    return FiniteSpace(std::move(labels), std::move(down));
  }

  /// `down[x]` lists the points below x (x itself may be omitted).
  static FiniteSpace from_down_sets(std::vector<std::string> labels,
                                    std::vector<PointSet> down) {
    check_size(labels.size());
    if (down.size() != labels.size()) {
      throw ShapeError("down-set table does not match label count");
    }
    return FiniteSpace(std::move(labels), std::move(down));
  }

  /// Points 0..n-1 labelled by their index.
  static FiniteSpace from_down_sets(std::vector<PointSet> down) {
    std::vector<std::string> labels(down.size());
    for (std::size_t i = 0; i < down.size(); ++i) labels[i] = std::to_string(i);
    return from_down_sets(std::move(labels), std::move(down));
  }

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Point p) const { return labels_.at(p); }

  std::optional<Point> index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == label) return static_cast<Point>(i);
    }
    return std::nullopt;
  }

  Point require(std::string_view label) const {
    if (auto p = index_of(label)) return *p;
    throw ShapeError("unknown point '" + std::string(label) + "'");
  }

  bool leq(Point a, Point b) const { return bits::contains(down_[b], a); }
  bool comparable(Point a, Point b) const { return leq(a, b) || leq(b, a); }

  /// Minimal open neighbourhood of x.
  PointSet down(Point x) const { return down_[x]; }
  PointSet up(Point x) const { return up_[x]; }
  PointSet strict_down(Point x) const { return down_[x] & ~bits::bit(x); }
  PointSet strict_up(Point x) const { return up_[x] & ~bits::bit(x); }
  PointSet all() const noexcept { return bits::full(size()); }

  PointSet down_closure(PointSet s) const {
    PointSet out = 0;
    bits::for_each(s, [&](Point p) { out |= down_[p]; });
    return out;
  }
  PointSet up_closure(PointSet s) const {
    PointSet out = 0;
    bits::for_each(s, [&](Point p) { out |= up_[p]; });
    return out;
  }
  bool is_down_set(PointSet s) const { return down_closure(s) == s; }
  bool is_up_set(PointSet s) const { return up_closure(s) == s; }

  PointSet maximal(PointSet s) const {
    PointSet out = 0;
    bits::for_each(s, [&](Point p) {
      if ((strict_up(p) & s) == 0) out |= bits::bit(p);
    });
    return out;
  }
  PointSet minimal(PointSet s) const {
    PointSet out = 0;
    bits::for_each(s, [&](Point p) {
      if ((strict_down(p) & s) == 0) out |= bits::bit(p);
    });
    return out;
  }

  /// Order structure only (labels ignored); used as a cache key.
  const std::vector<PointSet>& down_table() const noexcept { return down_; }

  std::string structure_key() const {
    std::string key;
    key.reserve(1 + down_.size() * sizeof(PointSet));
    key.push_back(static_cast<char>(down_.size()));
    for (PointSet d : down_) {
      key.append(reinterpret_cast<const char*>(&d), sizeof d);
    }
    return key;
  }

  bool same_order(const FiniteSpace& other) const { return down_ == other.down_; }

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
    return a.labels_ == b.labels_ && a.down_ == b.down_;
  }

 private:
  FiniteSpace(std::vector<std::string> labels, std::vector<PointSet> down)
      : labels_(std::move(labels)), down_(std::move(down)) {
    const std::size_t n = labels_.size();
    {
      std::vector<std::string> sorted = labels_;
      std::sort(sorted.begin(), sorted.end());
      if (auto d = std::adjacent_find(sorted.begin(), sorted.end()); d != sorted.end()) {
        throw ShapeError("duplicate point label '" + *d + "'");
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      down_[i] |= bits::bit(static_cast<Point>(i));
      if ((down_[i] & ~bits::full(n)) != 0) {
        throw ShapeError("relation refers to a point outside the space");
      }
    }
    // Warshall closure on bitsets.
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (bits::contains(down_[i], static_cast<Point>(k))) down_[i] |= down_[k];
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (bits::contains(down_[a], static_cast<Point>(b)) &&
            bits::contains(down_[b], static_cast<Point>(a))) {
          throw CycleError("points '" + labels_[a] + "' and '" + labels_[b] +
                           "' are below each other");
        }
      }
    }
    up_.assign(n, 0);
    for (std::size_t b = 0; b < n; ++b) {
      bits::for_each(down_[b], [&](Point a) { up_[a] |= bits::bit(static_cast<Point>(b)); });
    }
  }

  static void check_size(std::size_t n) {
    if (n > kMaxPoints) {
      throw ShapeError("spaces are limited to " + std::to_string(kMaxPoints) +
                       " points, got " + std::to_string(n));
    }
  }

  std::vector<std::string> labels_;
  std::vector<PointSet> down_;
  std::vector<PointSet> up_;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

inline SpacePtr make_space(FiniteSpace s) {
  return std::make_shared<const FiniteSpace>(std::move(s));
}

inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Order-preserving (equivalently continuous) map between finite spaces.
class SpaceMap {
 public:
  SpaceMap(SpacePtr domain, SpacePtr codomain, std::vector<Point> assignment)
      : domain_(std::move(domain)), codomain_(std::move(codomain)),
        assignment_(std::move(assignment)) {
    if (assignment_.size() != domain_->size()) {
      throw ShapeError("assignment covers " + std::to_string(assignment_.size()) +
                       " points, domain has " + std::to_string(domain_->size()));
    }
    for (Point y : assignment_) {
      if (y >= codomain_->size()) throw ShapeError("assignment leaves the codomain");
    }
    if (auto bad = first_violation(*domain_, *codomain_, assignment_)) {
      throw ContinuityError("map is not order-preserving at '" +
                            domain_->label(bad->first) + "' <= '" +
                            domain_->label(bad->second) + "'");
    }
  }

  static std::optional<SpaceMap> try_make(SpacePtr domain, SpacePtr codomain,
                                          std::vector<Point> assignment) {
    if (assignment.size() != domain->size()) return std::nullopt;
    for (Point y : assignment) {
      if (y >= codomain->size()) return std::nullopt;
    }
    if (first_violation(*domain, *codomain, assignment)) return std::nullopt;
    return SpaceMap(std::move(domain), std::move(codomain), std::move(assignment),
                    Unchecked{});
  }

  /// First pair a <= b with f(a) not <= f(b), if any.
  static std::optional<std::pair<Point, Point>> first_violation(
      const FiniteSpace& x, const FiniteSpace& y, std::span<const Point> f) {
    for (Point b = 0; b < x.size(); ++b) {
      std::optional<std::pair<Point, Point>> bad;
      bits::for_each(x.strict_down(b), [&](Point a) {
        if (!bad && !y.leq(f[a], f[b])) bad = std::make_pair(a, b);
      });
      if (bad) return bad;
    }
    return std::nullopt;
  }

  static bool is_order_preserving(const FiniteSpace& x, const FiniteSpace& y,
                                  std::span<const Point> f) {
    return !first_violation(x, y, f).has_value();
  }

  static SpaceMap identity(const SpacePtr& x) {
    std::vector<Point> a(x->size());
    std::iota(a.begin(), a.end(), Point{0});
    return SpaceMap(x, x, std::move(a), Unchecked{});
  }

  static SpaceMap constant(const SpacePtr& x, const SpacePtr& y, Point value) {
    if (value >= y->size()) throw ShapeError("constant value outside codomain");
    return SpaceMap(x, y, std::vector<Point>(x->size(), value), Unchecked{});
  }

  const SpacePtr& domain() const noexcept { return domain_; }
  const SpacePtr& codomain() const noexcept { return codomain_; }
  const std::vector<Point>& assignment() const noexcept { return assignment_; }
  Point operator()(Point x) const { return assignment_[x]; }

  PointSet image() const {
    PointSet out = 0;
    for (Point y : assignment_) out |= bits::bit(y);
    return out;
  }
  PointSet image_of(PointSet s) const {
    PointSet out = 0;
    bits::for_each(s, [&](Point p) { out |= bits::bit(assignment_[p]); });
    return out;
  }

  bool is_constant() const {
    return std::adjacent_find(assignment_.begin(), assignment_.end(),
                              std::not_equal_to<>()) == assignment_.end();
  }

  /// Pointwise order f <= g.
  bool leq(const SpaceMap& g) const {
    for (std::size_t i = 0; i < assignment_.size(); ++i) {
      if (!codomain_->leq(assignment_[i], g.assignment_[i])) return false;
    }
    return true;
  }
  bool comparable(const SpaceMap& g) const { return leq(g) || g.leq(*this); }

  friend bool operator==(const SpaceMap& a, const SpaceMap& b) {
    return a.assignment_ == b.assignment_ && same_space(a.domain_, b.domain_) &&
           same_space(a.codomain_, b.codomain_);
  }

  std::string describe() const {
    std::string out = "{";
    for (std::size_t i = 0; i < assignment_.size(); ++i) {
      if (i) out += ", ";
      out += domain_->label(static_cast<Point>(i)) + "->" +
             codomain_->label(assignment_[i]);
    }
    return out + "}";
  }

 private:
  struct Unchecked {};
  SpaceMap(SpacePtr domain, SpacePtr codomain, std::vector<Point> assignment, Unchecked)
      : domain_(std::move(domain)), codomain_(std::move(codomain)),
        assignment_(std::move(assignment)) {}

  friend SpaceMap compose(const SpaceMap& g, const SpaceMap& f);
  friend class SpaceMapBuilder;

  SpacePtr domain_;
  SpacePtr codomain_;
  std::vector<Point> assignment_;
};

/// Grants library internals a way to build maps whose continuity is already
/// guaranteed by construction.
class SpaceMapBuilder {
 public:
  static SpaceMap trusted(SpacePtr domain, SpacePtr codomain, std::vector<Point> a) {
    return SpaceMap(std::move(domain), std::move(codomain), std::move(a),
                    SpaceMap::Unchecked{});
  }
};

/// g after f.
inline SpaceMap compose(const SpaceMap& g, const SpaceMap& f) {
  if (!same_space(f.codomain(), g.domain())) {
    throw DomainMismatch("composition: codomain of the first map is not the domain of the second");
  }
  std::vector<Point> a(f.assignment().size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = g(f(static_cast<Point>(i)));
  return SpaceMap(f.domain(), g.codomain(), std::move(a), SpaceMap::Unchecked{});
}

/// A subset of a parent space carrying the induced order.
struct Subspace {
  SpacePtr parent;
  SpacePtr space;
  PointSet mask = 0;
  std::vector<Point> embedding;  // local index -> parent index

  std::optional<Point> local(Point parent_point) const {
    if (!bits::contains(mask, parent_point)) return std::nullopt;
    return static_cast<Point>(bits::count(mask & (bits::bit(parent_point) - 1)));
  }

  SpaceMap inclusion() const {
    return SpaceMapBuilder::trusted(space, parent, embedding);
  }

  /// Translates a set of parent points inside the subspace to local indices.
  PointSet to_local(PointSet parent_set) const {
    PointSet out = 0;
    bits::for_each(parent_set & mask, [&](Point p) { out |= bits::bit(*local(p)); });
    return out;
  }
  PointSet to_parent(PointSet local_set) const {
    PointSet out = 0;
    bits::for_each(local_set, [&](Point p) { out |= bits::bit(embedding[p]); });
    return out;
  }
};

inline Subspace induced_subspace(const SpacePtr& parent, PointSet mask) {
  if ((mask & ~parent->all()) != 0) {
    throw SubspaceError("subspace mask names points outside the parent space");
  }
  Subspace sub;
  sub.parent = parent;
  sub.mask = mask;
  sub.embedding = bits::to_vector(mask);
  std::vector<std::string> labels;
  std::vector<PointSet> down;
  for (Point p : sub.embedding) {
    labels.push_back(parent->label(p));
    PointSet d = 0;
    bits::for_each(parent->down(p) & mask, [&](Point q) {
      d |= bits::bit(static_cast<Point>(bits::count(mask & (bits::bit(q) - 1))));
    });
    down.push_back(d);
  }
  sub.space = make_space(FiniteSpace::from_down_sets(std::move(labels), std::move(down)));
  return sub;
}

inline Subspace induced_subspace(const SpacePtr& parent,
                                 const std::vector<std::string>& labels) {
  PointSet mask = 0;
  for (const auto& l : labels) mask |= bits::bit(parent->require(l));
  return induced_subspace(parent, mask);
}

/// f restricted to a subspace of its domain, keeping the codomain.
inline SpaceMap restrict_map(const SpaceMap& f, const Subspace& xs) {
  if (!same_space(xs.parent, f.domain())) {
    throw SubspaceError("restriction: subspace is not taken in the map's domain");
  }
  std::vector<Point> a;
  a.reserve(xs.embedding.size());
  for (Point p : xs.embedding) a.push_back(f(p));
  return SpaceMapBuilder::trusted(xs.space, f.codomain(), std::move(a));
}

/// f restricted to xs with codomain corestricted to ys; ImageError if
/// f(xs) is not contained in ys.
inline SpaceMap restrict_map(const SpaceMap& f, const Subspace& xs, const Subspace& ys) {
  if (!same_space(ys.parent, f.codomain())) {
    throw SubspaceError("restriction: target subspace is not taken in the codomain");
  }
  SpaceMap g = restrict_map(f, xs);
  std::vector<Point> a;
  a.reserve(g.assignment().size());
  for (std::size_t i = 0; i < g.assignment().size(); ++i) {
    auto y = ys.local(g(static_cast<Point>(i)));
    if (!y) {
      throw ImageError("image of '" + xs.space->label(static_cast<Point>(i)) +
                       "' is '" + f.codomain()->label(g(static_cast<Point>(i))) +
                       "', outside the target subspace");
    }
    a.push_back(*y);
  }
  return SpaceMapBuilder::trusted(xs.space, ys.space, std::move(a));
}

/// Finite product with the componentwise order. Points are tuples in
/// lexicographic order, the first factor varying slowest.
class ProductSpace {
 public:
  explicit ProductSpace(std::vector<SpacePtr> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw ShapeError("product of an empty list of spaces");
    std::size_t total = 1;
    for (const auto& f : factors_) {
      total *= f->size();
      if (total > kMaxPoints) {
        throw ShapeError("product exceeds " + std::to_string(kMaxPoints) + " points");
      }
    }
    const std::size_t k = factors_.size();
    coords_.assign(total, std::vector<Point>(k, 0));
    for (std::size_t p = 0; p < total; ++p) {
      std::size_t rest = p;
      for (std::size_t i = k; i-- > 0;) {
        coords_[p][i] = static_cast<Point>(rest % factors_[i]->size());
        rest /= factors_[i]->size();
      }
    }
    std::vector<std::string> labels(total);
    std::vector<PointSet> down(total, 0);
    for (std::size_t p = 0; p < total; ++p) {
      std::string l = "(";
      for (std::size_t i = 0; i < k; ++i) {
        if (i) l += ",";
        l += factors_[i]->label(coords_[p][i]);
      }
      labels[p] = l + ")";
      for (std::size_t q = 0; q < total; ++q) {
        bool below = true;
        for (std::size_t i = 0; i < k && below; ++i) {
          below = factors_[i]->leq(coords_[q][i], coords_[p][i]);
        }
        if (below) down[p] |= bits::bit(static_cast<Point>(q));
      }
    }
    space_ = make_space(FiniteSpace::from_down_sets(std::move(labels), std::move(down)));
  }

  const SpacePtr& space() const noexcept { return space_; }
  const std::vector<SpacePtr>& factors() const noexcept { return factors_; }
  std::size_t arity() const noexcept { return factors_.size(); }

  const std::vector<Point>& coordinates(Point p) const { return coords_.at(p); }
  Point coordinate(Point p, std::size_t i) const { return coords_.at(p).at(i); }

  Point index(std::span<const Point> coords) const {
    if (coords.size() != factors_.size()) throw ShapeError("tuple arity mismatch");
    std::size_t p = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] >= factors_[i]->size()) throw ShapeError("tuple entry out of range");
      p = p * factors_[i]->size() + coords[i];
    }
    return static_cast<Point>(p);
  }

  SpaceMap projection(std::size_t i) const {
    std::vector<Point> a(coords_.size());
    for (std::size_t p = 0; p < a.size(); ++p) a[p] = coords_[p].at(i);
    return SpaceMapBuilder::trusted(space_, factors_.at(i), std::move(a));
  }

  /// Diagonal X -> X^r; every factor must be the same space.
  SpaceMap diagonal() const {
    for (const auto& f : factors_) {
      if (!same_space(f, factors_.front())) {
        throw DomainMismatch("diagonal needs identical factors");
      }
    }
    std::vector<Point> a(factors_.front()->size());
    std::vector<Point> tuple(factors_.size());
    for (Point x = 0; x < a.size(); ++x) {
      std::fill(tuple.begin(), tuple.end(), x);
      a[x] = index(tuple);
    }
    return SpaceMapBuilder::trusted(factors_.front(), space_, std::move(a));
  }

 private:
  std::vector<SpacePtr> factors_;
  std::vector<std::vector<Point>> coords_;
  SpacePtr space_;
};

inline ProductSpace product(const std::vector<SpacePtr>& spaces) {
  return ProductSpace(spaces);
}

inline ProductSpace power(const SpacePtr& x, std::size_t r) {
  return ProductSpace(std::vector<SpacePtr>(r, x));
}

/// Streams the open sets (down-sets) of a space. Each down-set is the
/// closure of a unique antichain of maximal points; antichains are produced
/// depth-first in increasing point order, starting with the empty set.
class OpenSetStream {
 public:
  OpenSetStream(const FiniteSpace& space, std::size_t max_count)
      : space_(&space), max_count_(max_count) {}

  std::optional<PointSet> next() {
    if (emitted_ >= max_count_) {
      if (!exhausted_ && !truncated_) truncated_ = advance().has_value();
      return std::nullopt;
    }
    auto s = advance();
    if (s) ++emitted_;
    return s;
  }

  bool truncated() const noexcept { return truncated_; }
  std::size_t emitted() const noexcept { return emitted_; }

 private:
  struct Frame {
    PointSet antichain;
    Point next;
  };

  std::optional<PointSet> advance() {
    if (!started_) {
      started_ = true;
      stack_.push_back({0, 0});
      return PointSet{0};
    }
    const auto n = static_cast<Point>(space_->size());
    while (!stack_.empty()) {
      Frame& top = stack_.back();
      const PointSet blocked = space_->down_closure(top.antichain) |
                               space_->up_closure(top.antichain);
      Point i = top.next;
      while (i < n && bits::contains(blocked, i)) ++i;
      if (i >= n) {
        stack_.pop_back();
        continue;
      }
      top.next = i + 1;
      const PointSet a = top.antichain | bits::bit(i);
      stack_.push_back({a, i + 1});
      return space_->down_closure(a);
    }
    exhausted_ = true;
    return std::nullopt;
  }

  const FiniteSpace* space_;
  std::size_t max_count_;
  std::size_t emitted_ = 0;
  bool started_ = false;
  bool exhausted_ = false;
  bool truncated_ = false;
  std::vector<Frame> stack_;
};

inline std::vector<PointSet> open_sets(const FiniteSpace& space) {
  std::vector<PointSet> out;
  OpenSetStream stream(space, static_cast<std::size_t>(-1));
  while (auto s = stream.next()) out.push_back(*s);
  return out;
}

/// Components of the comparability graph, ordered by least point.
inline std::vector<PointSet> connected_components(const FiniteSpace& space) {
  std::vector<PointSet> out;
  PointSet seen = 0;
  for (Point p = 0; p < space.size(); ++p) {
    if (bits::contains(seen, p)) continue;
    PointSet comp = bits::bit(p);
    PointSet frontier = comp;
    while (frontier != 0) {
      PointSet grown = space.down_closure(frontier) | space.up_closure(frontier);
      frontier = grown & ~comp;
      comp |= grown;
    }
    seen |= comp;
    out.push_back(comp);
  }
  return out;
}

inline bool is_connected(const FiniteSpace& space) {
  return connected_components(space).size() == 1;
}

/// Calls `visit` with every continuous map x -> y sending each point p into
/// `allowed[p]`, in lexicographic order of the assignment vector. `visit`
/// returns false to stop early.
template <typename Visit>
void for_each_map_within(const FiniteSpace& x, const FiniteSpace& y,
                         std::span<const PointSet> allowed, Visit&& visit) {
  const std::size_t n = x.size();
  std::vector<Point> a(n, 0);
  if (n == 0) {
    visit(std::as_const(a));
    return;
  }
  // Backtracking in index order; candidates are cut down by the values
  // already placed below and above each point.
  std::vector<PointSet> todo(n, 0);
  std::size_t i = 0;
  auto candidates = [&](std::size_t k) {
    PointSet c = allowed[k] & y.all();
    const PointSet earlier = bits::full(k);
    bits::for_each(x.strict_down(static_cast<Point>(k)) & earlier,
                   [&](Point p) { c &= y.up(a[p]); });
    bits::for_each(x.strict_up(static_cast<Point>(k)) & earlier,
                   [&](Point q) { c &= y.down(a[q]); });
    return c;
  };
  todo[0] = candidates(0);
  while (true) {
    if (todo[i] != 0) {
      a[i] = bits::lowest(todo[i]);
      todo[i] &= todo[i] - 1;
      if (i + 1 == n) {
        if (!visit(std::as_const(a))) return;
        continue;
      }
      ++i;
      todo[i] = candidates(i);
    } else {
      if (i == 0) return;
      --i;
    }
  }
}

template <typename Visit>
void for_each_map(const FiniteSpace& x, const FiniteSpace& y, Visit&& visit) {
  const std::vector<PointSet> allowed(x.size(), y.all());
  for_each_map_within(x, y, allowed, std::forward<Visit>(visit));
}

inline std::vector<SpaceMap> all_maps(const SpacePtr& x, const SpacePtr& y) {
  std::vector<SpaceMap> out;
  for_each_map(*x, *y, [&](const std::vector<Point>& a) {
    out.push_back(SpaceMapBuilder::trusted(x, y, a));
    return true;
  });
  return out;
}

}  // namespace fintop
