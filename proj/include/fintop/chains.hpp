#pragma once

// Simplicial complexes, order complexes of finite spaces and their
// (co)homology over Z, Q and Z/p.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fintop/error.hpp"
#include "fintop/field.hpp"
#include "fintop/finspace.hpp"
#include "fintop/parallel.hpp"
#include "fintop/snf.hpp"

namespace fintop {

using Simplex = std::vector<std::uint32_t>;  // increasing vertex indices

/// A complex given by its facets. Vertex indices double as the total order
/// used for orientations; `ordered()` records whether that order was fixed
/// deliberately (cup products refuse to run otherwise).
class SimplicialComplex {
 public:
  static SimplicialComplex from_facets(std::vector<std::string> labels,
                                       const std::vector<std::vector<std::string>>& facets) {
    std::map<std::string, std::uint32_t> index;
    for (std::uint32_t i = 0; i < labels.size(); ++i) {
      if (!index.emplace(labels[i], i).second) {
        throw ShapeError("duplicate vertex label '" + labels[i] + "'");
      }
    }
    std::vector<Simplex> raw;
    for (const auto& facet : facets) {
      Simplex s;
      for (const auto& l : facet) {
        auto it = index.find(l);
        if (it == index.end()) throw ShapeError("facet uses unknown vertex '" + l + "'");
        s.push_back(it->second);
      }
      raw.push_back(std::move(s));
    }
    return SimplicialComplex(std::move(labels), std::move(raw), false);
  }

  static SimplicialComplex from_index_facets(std::vector<std::string> labels,
                                             std::vector<Simplex> facets, bool ordered) {
    return SimplicialComplex(std::move(labels), std::move(facets), ordered);
  }

  /// Renumbers the vertices so that index order is `order` (a permutation
  /// of the labels) and marks the order as fixed.
  SimplicialComplex with_vertex_order(const std::vector<std::string>& order) const {
    if (order.size() != labels_.size()) throw ShapeError("vertex order must list every vertex");
    std::vector<std::uint32_t> position(labels_.size(), UINT32_MAX);
    for (std::uint32_t i = 0; i < order.size(); ++i) {
      auto it = std::find(labels_.begin(), labels_.end(), order[i]);
      if (it == labels_.end()) throw ShapeError("vertex order names unknown vertex '" + order[i] + "'");
      auto old = static_cast<std::size_t>(it - labels_.begin());
      if (position[old] != UINT32_MAX) throw ShapeError("vertex order repeats '" + order[i] + "'");
      position[old] = i;
    }
    std::vector<Simplex> facets;
    for (const Simplex& f : facets_) {
      Simplex s;
      for (auto v : f) s.push_back(position[v]);
      facets.push_back(std::move(s));
    }
    return SimplicialComplex(order, std::move(facets), true);
  }

  SimplicialComplex with_vertex_order() const { return with_vertex_order(labels_); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Simplex>& facets() const { return facets_; }
  bool ordered() const { return ordered_; }
  std::size_t vertex_count() const { return labels_.size(); }
  /// -1 for the empty complex.
  int dimension() const { return static_cast<int>(simplices_.size()) - 1; }
  const std::vector<Simplex>& simplices(std::size_t k) const {
    static const std::vector<Simplex> none;
    return k < simplices_.size() ? simplices_[k] : none;
  }
  std::size_t count(std::size_t k) const { return simplices(k).size(); }
  std::optional<std::size_t> index_of(const Simplex& s) const {
    if (s.empty() || s.size() > index_.size()) return std::nullopt;
    const auto& m = index_[s.size() - 1];
    auto it = m.find(s);
    if (it == m.end()) return std::nullopt;
    return it->second;
  }
  long long euler_characteristic() const {
    long long chi = 0;
    for (std::size_t k = 0; k < simplices_.size(); ++k) {
      chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(simplices_[k].size());
    }
    return chi;
  }
  std::string simplex_name(const Simplex& s) const {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + labels_[s[i]];
    return out + "]";
  }

 private:
  SimplicialComplex(std::vector<std::string> labels, std::vector<Simplex> raw, bool ordered)
      : labels_(std::move(labels)), ordered_(ordered) {
    std::set<Simplex> all;
    for (Simplex& s : raw) {
      std::sort(s.begin(), s.end());
      if (s.empty()) throw ShapeError("empty facet");
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw ShapeError("facet repeats a vertex");
      for (auto v : s) {
        if (v >= labels_.size()) throw ShapeError("facet vertex out of range");
      }
      if (s.size() > 24) throw PreconditionError("facets are limited to 24 vertices");
      const std::uint32_t subsets = 1U << s.size();
      for (std::uint32_t m = 1; m < subsets; ++m) {
        Simplex face;
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (m & (1U << i)) face.push_back(s[i]);
        }
        all.insert(std::move(face));
      }
    }
    // isolated vertices count as facets too
    for (std::uint32_t v = 0; v < labels_.size(); ++v) all.insert(Simplex{v});
    for (const Simplex& s : all) {
      if (simplices_.size() < s.size()) simplices_.resize(s.size());
      simplices_[s.size() - 1].push_back(s);
    }
    for (auto& level : simplices_) std::sort(level.begin(), level.end());
    index_.resize(simplices_.size());
    for (std::size_t k = 0; k < simplices_.size(); ++k) {
      for (std::size_t i = 0; i < simplices_[k].size(); ++i) index_[k][simplices_[k][i]] = i;
    }
    // facets = maximal simplices
    for (const Simplex& s : all) {
      bool maximal = true;
      if (s.size() < simplices_.size()) {
        for (const Simplex& t : simplices_[s.size()]) {
          if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
            maximal = false;
            break;
          }
        }
      }
      if (maximal) facets_.push_back(s);
    }
  }

  std::vector<std::string> labels_;
  std::vector<Simplex> facets_;
  bool ordered_ = false;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, std::size_t>> index_;
};

/// Simplices are the nonempty chains. Vertices keep the space's labels and
/// are ordered by a linear extension (least index first among minimal
/// points), so every simplex lists its chain from bottom to top.
inline SimplicialComplex order_complex(const FiniteSpace& x) {
  std::vector<Point> order;
  PointSet placed = 0;
  while (order.size() < x.size()) {
    for (Point p = 0; p < x.size(); ++p) {
      if (!bits::contains(placed, p) && bits::subset(x.strict_down(p), placed)) {
        order.push_back(p);
        placed |= bits::bit(p);
        break;
      }
    }
  }
  std::vector<std::uint32_t> position(x.size());
  std::vector<std::string> labels;
  for (std::uint32_t i = 0; i < order.size(); ++i) {
    position[order[i]] = i;
    labels.push_back(x.label(order[i]));
  }
  // maximal chains by DFS upward from minimal points
  std::vector<Simplex> facets;
  Simplex chain;
  std::function<void(Point)> extend = [&](Point p) {
    chain.push_back(position[p]);
    const PointSet above = x.strict_up(p);
    const PointSet covers = x.minimal(above);
    if (covers == 0) {
      facets.push_back(chain);
    } else {
      bits::for_each(covers, [&](Point q) { extend(q); });
    }
    chain.pop_back();
  };
  bits::for_each(x.minimal(x.all()), [&](Point p) { extend(p); });
  return SimplicialComplex::from_index_facets(std::move(labels), std::move(facets), true);
}

/// Boundary of k-chains into (k-1)-chains; rows index (k-1)-simplices.
/// Degree 0 and degrees above the dimension give empty-shaped matrices.
inline IntMatrix boundary_matrix(const SimplicialComplex& k_complex, std::size_t k) {
  const auto& cols = k_complex.simplices(k);
  if (k == 0) return IntMatrix(0, cols.size());
  const auto& rows = k_complex.simplices(k - 1);
  IntMatrix m(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Simplex& s = cols[j];
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<long>(i));
      m(*k_complex.index_of(face), j) = (i % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

/// Per-degree groups: over a field `rank` is the dimension; over Z it is the
/// free rank and `torsion` lists the invariant factors above 1.
struct HomologySummary {
  Ring ring;
  bool cohomology = false;
  std::vector<std::size_t> rank;
  std::vector<std::vector<BigInt>> torsion;
  std::vector<std::size_t> simplex_counts;

  long long euler_from_ranks() const {
    long long chi = 0;
    for (std::size_t k = 0; k < rank.size(); ++k) {
      chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(rank[k]);
    }
    return chi;
  }
  bool nonzero(std::size_t k) const {
    return k < rank.size() && (rank[k] > 0 || !torsion[k].empty());
  }
  /// -1 when every group vanishes.
  int top_degree() const {
    for (std::size_t k = rank.size(); k-- > 0;) {
      if (nonzero(k)) return static_cast<int>(k);
    }
    return -1;
  }
};

namespace detail {

struct BoundaryFactors {
  std::vector<std::size_t> counts;       // n_k
  std::vector<SmithForm> forms;          // forms[k] for boundary_k, k >= 1
};

/// `transposed` factors the coboundary matrices instead; the invariant
/// factors agree, which the tests check.
inline BoundaryFactors factor_boundaries(const SimplicialComplex& kc, bool transposed,
                                         std::size_t jobs) {
  BoundaryFactors out;
  const std::size_t top = static_cast<std::size_t>(kc.dimension() + 1);
  for (std::size_t k = 0; k < top; ++k) out.counts.push_back(kc.count(k));
  out.forms = parallel_map(top + 1, jobs, [&](std::size_t k) {
    if (k == 0 || k >= top) return SmithForm{};
    IntMatrix m = boundary_matrix(kc, k);
    return smith_normal_form(transposed ? m.transpose() : m);
  });
  return out;
}

inline std::size_t rank_over(const Ring& ring, const SmithForm& s) {
  if (ring.kind != Ring::Kind::Prime) return s.rank;
  std::size_t r = 0;
  for (const BigInt& d : s.invariant_factors) {
    if (d % ring.modulus != 0) ++r;
  }
  return r;
}

inline std::vector<BigInt> torsion_of(const SmithForm& s) {
  std::vector<BigInt> t;
  for (const BigInt& d : s.invariant_factors) {
    if (d > 1) t.push_back(d);
  }
  return t;
}

inline HomologySummary summarize(const SimplicialComplex& kc, const Ring& ring, bool cohomology,
                                 std::size_t jobs) {
  const auto bf = factor_boundaries(kc, cohomology, jobs);
  HomologySummary h;
  h.ring = ring;
  h.cohomology = cohomology;
  h.simplex_counts = bf.counts;
  const std::size_t top = bf.counts.size();
  auto rank_at = [&](std::size_t k) -> std::size_t {
    return (k == 0 || k >= top) ? 0 : rank_over(ring, bf.forms[k]);
  };
  for (std::size_t k = 0; k < top; ++k) {
    // the boundary into degree k and the one out of it
    h.rank.push_back(bf.counts[k] - rank_at(k) - rank_at(k + 1));
    std::vector<BigInt> tors;
    if (ring.kind == Ring::Kind::Integers) {
      // homology: cokernel of boundary_{k+1}; cohomology: of coboundary_{k-1}
      const std::size_t source = cohomology ? k : k + 1;
      if (source >= 1 && source < top) tors = torsion_of(bf.forms[source]);
    }
    h.torsion.push_back(std::move(tors));
  }
  return h;
}

}  // namespace detail

inline HomologySummary homology(const SimplicialComplex& kc, const Ring& ring,
                                std::size_t jobs = 1) {
  return detail::summarize(kc, ring, false, jobs);
}

inline HomologySummary cohomology(const SimplicialComplex& kc, const Ring& ring,
                                  std::size_t jobs = 1) {
  return detail::summarize(kc, ring, true, jobs);
}

/// Every boundary composite vanishes.
inline bool boundary_squares_to_zero(const SimplicialComplex& kc) {
  for (int k = 2; k <= kc.dimension(); ++k) {
    const auto prod = multiply_exact(boundary_matrix(kc, static_cast<std::size_t>(k) - 1),
                                     boundary_matrix(kc, static_cast<std::size_t>(k)));
    if (!prod.is_zero()) return false;
  }
  return true;
}

struct ProbeResult {
  Ring ring;
  int top_degree = -1;
  bool added_for_torsion = false;
};

/// Largest degree with a nonvanishing group over the probed rings. Only a
/// lower bound for the supremum over all coefficient modules; the dimension
/// of the complex bounds that supremum from above.
struct DimensionEstimate {
  int lower_bound = -1;
  int upper_bound = -1;
  std::vector<ProbeResult> probes;
  std::vector<BigInt> torsion_primes;  // primes dividing any integral torsion
};

namespace detail {

inline std::vector<BigInt> prime_divisors(BigInt n) {
  std::vector<BigInt> out;
  for (BigInt d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline DimensionEstimate estimate_dimension(const SimplicialComplex& kc, std::vector<Ring> probes,
                                            bool cohomological, bool expand_torsion) {
  if (probes.empty()) throw PreconditionError("at least one coefficient probe is required");
  auto run = [&](const Ring& r) { return cohomological ? cohomology(kc, r) : homology(kc, r); };
  DimensionEstimate est;
  est.upper_bound = kc.dimension();
  const HomologySummary integral = run(Ring::integers());
  std::set<BigInt> primes;
  for (const auto& level : integral.torsion) {
    for (const BigInt& t : level) {
      for (const BigInt& p : prime_divisors(t)) primes.insert(p);
    }
  }
  est.torsion_primes.assign(primes.begin(), primes.end());
  const std::size_t requested = probes.size();
  if (expand_torsion) {
    for (const BigInt& p : primes) {
      Ring r = Ring::prime(static_cast<std::uint64_t>(p));
      if (std::find(probes.begin(), probes.end(), r) == probes.end()) probes.push_back(r);
    }
  }
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const Ring& r = probes[i];
    const int top = r.kind == Ring::Kind::Integers ? integral.top_degree() : run(r).top_degree();
    est.probes.push_back({r, top, i >= requested});
    est.lower_bound = std::max(est.lower_bound, top);
  }
  return est;
}

}  // namespace detail

inline DimensionEstimate cd_space(const SimplicialComplex& kc, const std::vector<Ring>& probes,
                                  bool expand_torsion = true) {
  return detail::estimate_dimension(kc, probes, true, expand_torsion);
}

inline DimensionEstimate hd_space(const SimplicialComplex& kc, const std::vector<Ring>& probes,
                                  bool expand_torsion = true) {
  return detail::estimate_dimension(kc, probes, false, expand_torsion);
}

inline std::vector<Ring> default_probes() { return {Ring::integers(), Ring::rationals()}; }

}  // namespace fintop
