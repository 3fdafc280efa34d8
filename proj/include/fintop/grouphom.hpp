#pragma once

// Homomorphisms Z^n -> Z^m as integer matrices (acting on column vectors):
// their cohomological and homological dimension at trivial integer
// coefficients, restriction to split subgroups, and the two audits over
// subhomomorphisms and retraction squares.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fintop/error.hpp"
#include "fintop/parallel.hpp"
#include "fintop/snf.hpp"

namespace fintop {

/// With trivial coefficients Z the induced map in degree k is the k-th
/// exterior power of the transpose, nonzero exactly up to the rank. The
/// value is therefore a lower bound for the supremum over all modules.
inline std::size_t cd_trivial(const IntMatrix& a) { return integer_rank(a); }

inline std::size_t hd_trivial(const IntMatrix& a) { return integer_rank(a); }

/// The unique A' with A * sub_domain = sub_codomain * A'. The inclusions
/// must be injective; throws ImageError when A maps the domain subgroup
/// outside the codomain subgroup.
inline IntMatrix restrict_hom(const IntMatrix& a, const IntMatrix& sub_domain,
                              const IntMatrix& sub_codomain) {
  if (a.cols() != sub_domain.rows() || a.rows() != sub_codomain.rows()) {
    throw ShapeError("inclusions do not match the homomorphism");
  }
  const SmithForm s = smith_normal_form(sub_codomain);
  if (s.rank != sub_codomain.cols()) throw PreconditionError("codomain inclusion is not injective");
  // U * I * V = D, so D * (V^-1 A') = U * A * I_domain
  const BigMatrix rhs = s.left * multiply_exact(a, sub_domain);
  BigMatrix y(sub_codomain.cols(), sub_domain.cols());
  for (std::size_t i = 0; i < rhs.rows(); ++i) {
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
      if (i < s.rank) {
        if (rhs(i, j) % s.invariant_factors[i] != 0) {
          throw ImageError("image of the subgroup is not contained in the target subgroup");
        }
        y(i, j) = rhs(i, j) / s.invariant_factors[i];
      } else if (rhs(i, j) != 0) {
        throw ImageError("image of the subgroup is not contained in the target subgroup");
      }
    }
  }
  const BigMatrix result = s.right * y;
  IntMatrix out(result.rows(), result.cols());
  for (std::size_t i = 0; i < result.rows(); ++i) {
    for (std::size_t j = 0; j < result.cols(); ++j) {
      if (result(i, j) > INT64_MAX || result(i, j) < INT64_MIN) {
        throw PreconditionError("restricted homomorphism does not fit in 64 bits");
      }
      out(i, j) = static_cast<std::int64_t>(result(i, j));
    }
  }
  return out;
}

/// phi' o r_domain = r_codomain o phi for split subgroups with inclusions
/// and retractions.
struct HomSquare {
  IntMatrix a;
  IntMatrix a_prime;
  IntMatrix r_domain;
  IntMatrix r_codomain;
  IntMatrix i_domain;
  IntMatrix i_codomain;
};

struct HomSquareCheck {
  bool shapes = false;
  bool domain_retracts = false;    // r_domain * i_domain = 1
  bool codomain_retracts = false;  // r_codomain * i_codomain = 1
  bool commutes = false;           // a' * r_domain = r_codomain * a
  bool restricts = false;          // a * i_domain = i_codomain * a'
  bool valid() const { return shapes && domain_retracts && codomain_retracts && commutes && restricts; }
  std::string first_failure() const {
    if (!shapes) return "matrix shapes are inconsistent";
    if (!domain_retracts) return "domain retraction does not split the inclusion";
    if (!codomain_retracts) return "codomain retraction does not split the inclusion";
    if (!commutes) return "square does not commute";
    if (!restricts) return "a' is not the restriction of a";
    return "";
  }
};

inline HomSquareCheck check_square(const HomSquare& s) {
  HomSquareCheck c;
  const std::size_t n = s.a.cols();
  const std::size_t m = s.a.rows();
  const std::size_t n1 = s.a_prime.cols();
  const std::size_t m1 = s.a_prime.rows();
  c.shapes = s.i_domain.rows() == n && s.i_domain.cols() == n1 && s.r_domain.rows() == n1 &&
             s.r_domain.cols() == n && s.i_codomain.rows() == m && s.i_codomain.cols() == m1 &&
             s.r_codomain.rows() == m1 && s.r_codomain.cols() == m;
  if (!c.shapes) return c;
  c.domain_retracts = multiply_exact(s.r_domain, s.i_domain) == BigMatrix::identity(n1);
  c.codomain_retracts = multiply_exact(s.r_codomain, s.i_codomain) == BigMatrix::identity(m1);
  c.commutes = multiply_exact(s.a_prime, s.r_domain) == multiply_exact(s.r_codomain, s.a);
  c.restricts = multiply_exact(s.a, s.i_domain) == multiply_exact(s.i_codomain, s.a_prime);
  return c;
}

inline void validate_square(const HomSquare& s) {
  const HomSquareCheck c = check_square(s);
  if (!c.valid()) throw SquareInvalid(c.first_failure());
}

enum class Comparison { Equal, StrictLess, Greater };

inline const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::Equal: return "equal";
    case Comparison::StrictLess: return "strict-less";
    case Comparison::Greater: return "greater";
  }
  return "?";
}

inline Comparison compare_ranks(std::size_t sub, std::size_t whole) {
  if (sub == whole) return Comparison::Equal;
  return sub < whole ? Comparison::StrictLess : Comparison::Greater;
}

struct SubhomInstance {
  std::string name;
  IntMatrix a;
  IntMatrix i_domain;
  IntMatrix i_codomain;
};

struct SubhomRecord {
  std::size_t index = 0;
  std::string name;
  bool restricted = false;  // false when the image condition fails
  IntMatrix a_prime;
  std::size_t cd_a = 0;
  std::size_t cd_a_prime = 0;
  Comparison comparison = Comparison::Equal;
};

struct SubhomAudit {
  std::size_t instances = 0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;  // no restriction exists
  std::size_t equal = 0;
  std::size_t strict_less = 0;
  std::size_t violations = 0;
  std::vector<SubhomRecord> records;  // violations always, everything when requested
};

inline SubhomAudit audit_lemma31(const std::vector<SubhomInstance>& corpus, std::size_t jobs = 1,
                                 bool keep_records = false) {
  auto rows = parallel_map(corpus.size(), jobs, [&](std::size_t i) {
    SubhomRecord r;
    r.index = i;
    r.name = corpus[i].name;
    try {
      r.a_prime = restrict_hom(corpus[i].a, corpus[i].i_domain, corpus[i].i_codomain);
      r.restricted = true;
    } catch (const ImageError&) {
      return r;
    }
    r.cd_a = cd_trivial(corpus[i].a);
    r.cd_a_prime = cd_trivial(r.a_prime);
    r.comparison = compare_ranks(r.cd_a_prime, r.cd_a);
    return r;
  });
  SubhomAudit out;
  out.instances = corpus.size();
  for (auto& r : rows) {
    if (!r.restricted) {
      ++out.skipped;
      continue;
    }
    ++out.evaluated;
    switch (r.comparison) {
      case Comparison::Equal: ++out.equal; break;
      case Comparison::StrictLess: ++out.strict_less; break;
      case Comparison::Greater: ++out.violations; break;
    }
    if (keep_records || r.comparison == Comparison::Greater) out.records.push_back(std::move(r));
  }
  return out;
}

struct SquareRecord {
  std::size_t index = 0;
  std::string name;
  HomSquareCheck check;
  std::size_t cd_a = 0;
  std::size_t cd_a_prime = 0;
  Comparison comparison = Comparison::Equal;
};

struct SquareAudit {
  std::size_t squares = 0;
  std::size_t invalid = 0;
  std::size_t equal = 0;
  std::size_t strict_less = 0;
  std::size_t greater = 0;
  std::vector<SquareRecord> records;  // every square that is not `equal`, or all when requested
};

struct NamedSquare {
  std::string name;
  HomSquare square;
};

/// Descriptive: unequal dimensions are reported, never thrown.
inline SquareAudit audit_theorem32(const std::vector<NamedSquare>& corpus, std::size_t jobs = 1,
                                   bool keep_records = false) {
  auto rows = parallel_map(corpus.size(), jobs, [&](std::size_t i) {
    SquareRecord r;
    r.index = i;
    r.name = corpus[i].name;
    r.check = check_square(corpus[i].square);
    if (r.check.valid()) {
      r.cd_a = cd_trivial(corpus[i].square.a);
      r.cd_a_prime = cd_trivial(corpus[i].square.a_prime);
      r.comparison = compare_ranks(r.cd_a_prime, r.cd_a);
    }
    return r;
  });
  SquareAudit out;
  out.squares = corpus.size();
  for (auto& r : rows) {
    bool keep = keep_records;
    if (!r.check.valid()) {
      ++out.invalid;
      keep = true;
    } else {
      switch (r.comparison) {
        case Comparison::Equal: ++out.equal; break;
        case Comparison::StrictLess: ++out.strict_less; keep = true; break;
        case Comparison::Greater: ++out.greater; keep = true; break;
      }
    }
    if (keep) out.records.push_back(std::move(r));
  }
  return out;
}

// Corpora

namespace detail {

inline IntMatrix columns_of(const IntMatrix& m, std::size_t count) {
  IntMatrix out(m.rows(), count);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < count; ++j) out(i, j) = m(i, j);
  }
  return out;
}

inline IntMatrix rows_of(const IntMatrix& m, std::size_t count) {
  IntMatrix out(count, m.cols());
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  }
  return out;
}

/// Coordinate inclusion of the basis vectors selected by `mask`.
inline IntMatrix coordinate_inclusion(std::size_t n, unsigned mask) {
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask & (1U << i)) picked.push_back(i);
  }
  IntMatrix out(n, picked.size());
  for (std::size_t j = 0; j < picked.size(); ++j) out(picked[j], j) = 1;
  return out;
}

inline IntMatrix product64(const IntMatrix& a, const IntMatrix& b) {
  const BigMatrix p = multiply_exact(a, b);
  IntMatrix out(p.rows(), p.cols());
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) out(i, j) = static_cast<std::int64_t>(p(i, j));
  }
  return out;
}

/// A random unimodular matrix and its inverse, built from a few elementary
/// operations with small multipliers.
inline std::pair<IntMatrix, IntMatrix> random_unimodular(std::size_t n, std::mt19937_64& rng) {
  IntMatrix p = IntMatrix::identity(n);
  IntMatrix inv = IntMatrix::identity(n);
  if (n < 2) return {p, inv};
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> mult(-1, 1);
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    if (i == j) j = (j + 1) % n;
    const int k = mult(rng);
    if (k == 0) continue;
    // P <- P * E where E adds k * column i to column j; inverse E^-1 on the left
    for (std::size_t r = 0; r < n; ++r) p(r, j) += k * p(r, i);
    for (std::size_t c = 0; c < n; ++c) inv(i, c) -= k * inv(j, c);
  }
  return {p, inv};
}

inline std::string matrix_tag(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ";" : "";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? "," : "") + std::to_string(m(i, j));
  }
  return s + "]";
}

}  // namespace detail

/// Every m x n matrix with entries in [-bound, bound], in odometer order.
inline std::vector<IntMatrix> all_matrices(std::size_t m, std::size_t n, int bound) {
  std::vector<IntMatrix> out;
  IntMatrix cur(m, n, -bound);
  while (true) {
    out.push_back(cur);
    std::size_t k = m * n;
    while (k > 0) {
      --k;
      auto& v = cur(k / n, k % n);
      if (v < bound) {
        ++v;
        break;
      }
      v = -bound;
      if (k == 0) return out;
    }
    if (m * n == 0) return out;
  }
}

/// All A with dims <= 2 and entries in [-2, 2] paired with every nonempty
/// coordinate subgroup on both sides, then all A with a dimension 3 and
/// entries in [-1, 1] paired with the prefix subgroups span(e_1..e_j).
inline std::vector<SubhomInstance> exhaustive_subhom_corpus() {
  std::vector<SubhomInstance> out;
  for (std::size_t m = 1; m <= 3; ++m) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const bool small = m <= 2 && n <= 2;
      std::vector<unsigned> dom_masks;
      std::vector<unsigned> cod_masks;
      for (unsigned mask = 1; mask < (1U << n); ++mask) {
        if (small || (mask & (mask + 1)) == 0) dom_masks.push_back(mask);
      }
      for (unsigned mask = 1; mask < (1U << m); ++mask) {
        if (small || (mask & (mask + 1)) == 0) cod_masks.push_back(mask);
      }
      for (const IntMatrix& a : all_matrices(m, n, small ? 2 : 1)) {
        for (unsigned dm : dom_masks) {
          for (unsigned cm : cod_masks) {
            out.push_back({"", a, detail::coordinate_inclusion(n, dm),
                           detail::coordinate_inclusion(m, cm)});
          }
        }
      }
    }
  }
  return out;
}

/// Seeded instances with dims in [1, 5]. Subgroups are spanned by the first
/// columns of random unimodular matrices and A is built block upper
/// triangular in those bases, so every instance admits a restriction.
inline std::vector<SubhomInstance> random_subhom_corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  std::uniform_int_distribution<int> entry(-3, 3);
  std::vector<SubhomInstance> out;
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t n = dim(rng);
    const std::size_t m = dim(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, n)(rng);
    const std::size_t l = std::uniform_int_distribution<std::size_t>(1, m)(rng);
    auto [p, p_inv] = detail::random_unimodular(n, rng);
    auto [q, q_inv] = detail::random_unimodular(m, rng);
    IntMatrix block(m, n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) block(i, j) = (j < k && i >= l) ? 0 : entry(rng);
    }
    const IntMatrix a = detail::product64(detail::product64(q, block), p_inv);
    out.push_back({"random#" + std::to_string(t), a, detail::columns_of(p, k),
                   detail::columns_of(q, l)});
  }
  return out;
}

/// Builds the square for A = Q * diag(X, Z) * P^-1 with the first k columns
/// of P and first l columns of Q spanning the subgroups.
inline HomSquare block_square(const IntMatrix& p, const IntMatrix& p_inv, const IntMatrix& q,
                              const IntMatrix& q_inv, const IntMatrix& top_left,
                              const IntMatrix& bottom_right) {
  const std::size_t k = top_left.cols();
  const std::size_t l = top_left.rows();
  IntMatrix block(l + bottom_right.rows(), k + bottom_right.cols());
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < k; ++j) block(i, j) = top_left(i, j);
  }
  for (std::size_t i = 0; i < bottom_right.rows(); ++i) {
    for (std::size_t j = 0; j < bottom_right.cols(); ++j) block(l + i, k + j) = bottom_right(i, j);
  }
  HomSquare s;
  s.a = detail::product64(detail::product64(q, block), p_inv);
  s.a_prime = top_left;
  s.i_domain = detail::columns_of(p, k);
  s.r_domain = detail::rows_of(p_inv, k);
  s.i_codomain = detail::columns_of(q, l);
  s.r_codomain = detail::rows_of(q_inv, l);
  return s;
}

/// The identity on Z^2 restricted to the first factor, with coordinate
/// projections as retractions.
inline HomSquare projection_square() {
  const IntMatrix id = IntMatrix::identity(2);
  return block_square(id, id, id, id, IntMatrix::identity(1), IntMatrix::identity(1));
}

/// Named squares: the identity square, the projection square, all
/// coordinate block-diagonal squares on Z^2 with 1 x 1 blocks in [-2, 2],
/// and `random_count` seeded squares with dims up to 5.
inline std::vector<NamedSquare> square_corpus(std::size_t random_count, std::uint64_t seed) {
  std::vector<NamedSquare> out;
  {
    const IntMatrix id = IntMatrix::identity(2);
    out.push_back({"identity", {id, id, id, id, id, id}});
  }
  out.push_back({"projection", projection_square()});
  const IntMatrix id2 = IntMatrix::identity(2);
  for (const IntMatrix& x : all_matrices(1, 1, 2)) {
    for (const IntMatrix& z : all_matrices(1, 1, 2)) {
      out.push_back({"block X=" + detail::matrix_tag(x) + " Z=" + detail::matrix_tag(z),
                     block_square(id2, id2, id2, id2, x, z)});
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (std::size_t t = 0; t < random_count; ++t) {
    const std::size_t n = dim(rng);
    const std::size_t m = dim(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, n)(rng);
    const std::size_t l = std::uniform_int_distribution<std::size_t>(1, m)(rng);
    auto [p, p_inv] = detail::random_unimodular(n, rng);
    auto [q, q_inv] = detail::random_unimodular(m, rng);
    IntMatrix x(l, k);
    IntMatrix z(m - l, n - k);
    for (std::size_t i = 0; i < l; ++i) {
      for (std::size_t j = 0; j < k; ++j) x(i, j) = entry(rng);
    }
    for (std::size_t i = 0; i < m - l; ++i) {
      for (std::size_t j = 0; j < n - k; ++j) z(i, j) = entry(rng);
    }
    out.push_back({"random#" + std::to_string(t), block_square(p, p_inv, q, q_inv, x, z)});
  }
  return out;
}

}  // namespace fintop
