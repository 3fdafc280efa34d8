#pragma once

#include <optional>
#include <string>

#include "fintop/finspace.hpp"

namespace fintop {

/// A map f: X -> Y together with retractions r_X: X -> X', r_Y: Y -> Y'
/// onto induced subspaces such that f' o r_X = r_Y o f, where f' is f
/// restricted to X' with codomain Y'.
struct RetractionSquare {
  SpaceMap f;
  Subspace x_sub;
  Subspace y_sub;
  SpaceMap f_prime;
  SpaceMap r_x;
  SpaceMap r_y;
};

namespace detail {

inline bool fixes_subspace(const SpaceMap& r, const Subspace& sub) {
  for (Point i = 0; i < sub.embedding.size(); ++i) {
    if (r(sub.embedding[i]) != i) return false;
  }
  return true;
}

/// Describes the first broken component of a square, if any. Commutation is
/// not checked here.
inline std::optional<std::string> square_component_problem(const RetractionSquare& s) {
  if (!same_space(s.x_sub.parent, s.f.domain())) return "X' is not a subspace of the domain of f";
  if (!same_space(s.y_sub.parent, s.f.codomain())) return "Y' is not a subspace of the codomain of f";
  if (!same_space(s.r_x.domain(), s.f.domain()) || !same_space(s.r_x.codomain(), s.x_sub.space)) {
    return "r_X does not map X to X'";
  }
  if (!same_space(s.r_y.domain(), s.f.codomain()) || !same_space(s.r_y.codomain(), s.y_sub.space)) {
    return "r_Y does not map Y to Y'";
  }
  if (!fixes_subspace(s.r_x, s.x_sub)) return "r_X does not fix X' pointwise";
  if (!fixes_subspace(s.r_y, s.y_sub)) return "r_Y does not fix Y' pointwise";
  if (!same_space(s.f_prime.domain(), s.x_sub.space) ||
      !same_space(s.f_prime.codomain(), s.y_sub.space)) {
    return "f' does not map X' to Y'";
  }
  for (Point i = 0; i < s.x_sub.embedding.size(); ++i) {
    if (s.y_sub.embedding[s.f_prime(i)] != s.f(s.x_sub.embedding[i])) {
      return "f' is not the restriction of f at '" + s.x_sub.space->label(i) + "'";
    }
  }
  return std::nullopt;
}

/// First point of X where f' o r_X and r_Y o f disagree.
inline std::optional<Point> square_failure(const RetractionSquare& s) {
  for (Point x = 0; x < s.f.domain()->size(); ++x) {
    if (s.f_prime(s.r_x(x)) != s.r_y(s.f(x))) return x;
  }
  return std::nullopt;
}

}  // namespace detail

}  // namespace fintop
