#pragma once

#include <string>
#include <vector>

#include "fintop/fintop.hpp"
#include "oracles.hpp"

namespace testing_support {

using namespace fintop;

inline SpacePtr space(std::vector<std::string> labels,
                      std::vector<std::pair<std::string, std::string>> covers) {
  return make_space(FiniteSpace::from_covers(std::move(labels), covers));
}

inline SpacePtr point() { return space({"p"}, {}); }
inline SpacePtr chain2() { return space({"a", "b"}, {{"a", "b"}}); }
inline SpacePtr discrete2() { return space({"a", "b"}, {}); }

inline SpacePtr pseudocircle() {
  return space({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
}

/// Pseudocircle with one point above everything.
inline SpacePtr cone() {
  return space({"a", "b", "c", "d", "t"},
               {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "t"}, {"d", "t"}});
}

inline oracle::Assignment to_oracle(const std::vector<Point>& a) {
  return oracle::Assignment(a.begin(), a.end());
}

/// Oracle tuple index (base-n digits, digit j = coordinate j) of a point of X^r.
inline std::size_t oracle_tuple(const ProductSpace& prod, Point p) {
  const std::size_t n = prod.factors().front()->size();
  std::size_t t = 0;
  std::size_t scale = 1;
  for (std::size_t j = 0; j < prod.arity(); ++j) {
    t += prod.coordinate(p, j) * scale;
    scale *= n;
  }
  return t;
}

inline std::vector<std::size_t> oracle_tuples(const ProductSpace& prod, PointSet u) {
  std::vector<std::size_t> out;
  bits::for_each(u, [&](Point p) { out.push_back(oracle_tuple(prod, p)); });
  return out;
}

/// 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
inline SimplicialComplex torus() {
  std::vector<std::string> labels;
  for (int i = 0; i < 7; ++i) labels.push_back("v" + std::to_string(i));
  std::vector<Simplex> facets;
  for (std::uint32_t i = 0; i < 7; ++i) {
    Simplex a{i, (i + 1) % 7, (i + 3) % 7};
    Simplex b{i, (i + 2) % 7, (i + 3) % 7};
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    facets.push_back(a);
    facets.push_back(b);
  }
  return SimplicialComplex::from_index_facets(labels, facets, true);
}

/// 6-vertex projective plane (hemi-icosahedron).
inline SimplicialComplex projective_plane() {
  std::vector<std::string> labels{"1", "2", "3", "4", "5", "6"};
  std::vector<Simplex> facets{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                              {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}};
  return SimplicialComplex::from_index_facets(labels, facets, true);
}

inline SimplicialComplex circle_complex() { return order_complex(*pseudocircle()); }

}  // namespace testing_support
