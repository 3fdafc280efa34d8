#pragma once

// Cup products of simplicial cochains, the cohomology ring over a field,
// cup-length and zero-divisor cup-length.

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "fintop/chains.hpp"
#include "fintop/error.hpp"
#include "fintop/field.hpp"

namespace fintop {

template <typename F>
struct Cochain {
  std::size_t degree = 0;
  Vec<F> values;  // indexed by the degree-simplices of the complex
};

template <typename F>
Cochain<F> zero_cochain(const F& f, const SimplicialComplex& kc, std::size_t degree) {
  return {degree, Vec<F>(kc.count(degree), f.zero())};
}

/// The cochain that is 1 on every vertex.
template <typename F>
Cochain<F> unit_cochain(const F& f, const SimplicialComplex& kc) {
  return {0, Vec<F>(kc.count(0), f.one())};
}

template <typename F>
Cochain<F> coboundary(const F& f, const SimplicialComplex& kc, const Cochain<F>& a) {
  if (a.values.size() != kc.count(a.degree)) throw ShapeError("cochain length does not match degree");
  Cochain<F> out = zero_cochain(f, kc, a.degree + 1);
  const auto& upper = kc.simplices(a.degree + 1);
  for (std::size_t j = 0; j < upper.size(); ++j) {
    const Simplex& s = upper[j];
    auto acc = f.zero();
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<long>(i));
      const auto& v = a.values[*kc.index_of(face)];
      acc = (i % 2 == 0) ? f.add(acc, v) : f.sub(acc, v);
    }
    out.values[j] = acc;
  }
  return out;
}

/// Front p-face times back q-face on each (p+q)-simplex.
template <typename F>
Cochain<F> cup_product(const F& f, const SimplicialComplex& kc, const Cochain<F>& a,
                       const Cochain<F>& b) {
  if (!kc.ordered()) throw OrderMissing("cup products need a fixed vertex order");
  if (a.values.size() != kc.count(a.degree) || b.values.size() != kc.count(b.degree)) {
    throw ShapeError("cochain length does not match degree");
  }
  const std::size_t p = a.degree;
  Cochain<F> out = zero_cochain(f, kc, p + b.degree);
  const auto& top = kc.simplices(p + b.degree);
  for (std::size_t j = 0; j < top.size(); ++j) {
    const Simplex& s = top[j];
    Simplex front(s.begin(), s.begin() + static_cast<long>(p) + 1);
    Simplex back(s.begin() + static_cast<long>(p), s.end());
    out.values[j] = f.mul(a.values[*kc.index_of(front)], b.values[*kc.index_of(back)]);
  }
  return out;
}

/// Cohomology with a chosen basis of cocycle representatives per degree.
/// Classes are numbered degree by degree; `product[i][j]` holds the
/// coordinates of class_i * class_j.
template <typename F>
class CohomologyRing {
 public:
  CohomologyRing(F field, const SimplicialComplex& kc) : f_(std::move(field)), kc_(kc) {
    if (!kc.ordered()) throw OrderMissing("cup products need a fixed vertex order");
    const std::size_t top = static_cast<std::size_t>(kc.dimension() + 1);
    for (std::size_t k = 0; k < top; ++k) {
      // cocycles: kernel of coboundary_k, whose matrix is boundary_{k+1}^T
      const IntMatrix cob = boundary_matrix(kc, k + 1).transpose();
      auto cocycles = cob.rows() == 0
                          ? identity_rows(kc.count(k))
                          : nullspace(f_, to_field_rows(f_, cob), kc.count(k));
      // coboundaries: image of coboundary_{k-1}, spanned by columns of boundary_k^T
      std::vector<Vec<F>> images;
      if (k > 0) {
        const IntMatrix prev = boundary_matrix(kc, k);  // columns = k-simplices
        for (std::size_t r = 0; r < prev.rows(); ++r) {
          Vec<F> v(kc.count(k), f_.zero());
          for (std::size_t c = 0; c < prev.cols(); ++c) v[c] = f_.from_int(prev(r, c));
          images.push_back(std::move(v));
        }
        reduce_rows(f_, images, kc.count(k));
      }
      auto reps = complement_basis(f_, images, cocycles, kc.count(k));
      std::vector<Vec<F>> family = images;
      family.insert(family.end(), reps.begin(), reps.end());
      coords_.emplace_back(f_, family, kc.count(k));
      boundary_count_.push_back(images.size());
      for (auto& v : reps) classes_.push_back({k, std::move(v)});
    }
    degree_start_.assign(top + 1, 0);
    for (const auto& c : classes_) ++degree_start_[c.degree + 1];
    for (std::size_t k = 1; k <= top; ++k) degree_start_[k] += degree_start_[k - 1];
    const std::size_t n = classes_.size();
    product_.assign(n, std::vector<Vec<F>>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        product_[i][j] = class_coordinates(cup_product(f_, kc_, classes_[i], classes_[j]));
      }
    }
  }

  const F& field() const { return f_; }
  std::size_t dimension() const { return classes_.size(); }
  std::size_t degree_of(std::size_t cls) const { return classes_[cls].degree; }
  std::size_t betti(std::size_t k) const {
    return k + 1 < degree_start_.size() ? degree_start_[k + 1] - degree_start_[k] : 0;
  }
  const Cochain<F>& representative(std::size_t cls) const { return classes_[cls]; }
  const Vec<F>& product_coordinates(std::size_t i, std::size_t j) const { return product_[i][j]; }

  /// Coordinates (over all classes) of the class of a cocycle; throws if
  /// the cochain is not a cocycle.
  Vec<F> class_coordinates(const Cochain<F>& c) const {
    Vec<F> out(classes_.size(), f_.zero());
    if (c.degree >= coords_.size()) return out;
    auto sol = coords_[c.degree].solve(c.values);
    if (!sol) throw PreconditionError("cochain is not a cocycle");
    const std::size_t skip = boundary_count_[c.degree];
    for (std::size_t i = skip; i < sol->size(); ++i) {
      out[degree_start_[c.degree] + i - skip] = (*sol)[i];
    }
    return out;
  }

  bool is_coboundary(const Cochain<F>& c) const {
    for (const auto& v : class_coordinates(c)) {
      if (!f_.is_zero(v)) return false;
    }
    return true;
  }

  /// Product of two elements given in class coordinates.
  Vec<F> multiply(const Vec<F>& x, const Vec<F>& y) const {
    Vec<F> out(classes_.size(), f_.zero());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (f_.is_zero(x[i])) continue;
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (f_.is_zero(y[j])) continue;
        const auto k = f_.mul(x[i], y[j]);
        const auto& pr = product_[i][j];
        for (std::size_t t = 0; t < out.size(); ++t) out[t] = f_.add(out[t], f_.mul(k, pr[t]));
      }
    }
    return out;
  }

 private:
  std::vector<Vec<F>> identity_rows(std::size_t n) const {
    std::vector<Vec<F>> out(n, Vec<F>(n, f_.zero()));
    for (std::size_t i = 0; i < n; ++i) out[i][i] = f_.one();
    return out;
  }

  F f_;
  const SimplicialComplex& kc_;
  std::vector<Cochain<F>> classes_;
  std::vector<Coordinates<F>> coords_;
  std::vector<std::size_t> boundary_count_;
  std::vector<std::size_t> degree_start_;
  std::vector<std::vector<Vec<F>>> product_;
};

namespace detail {

/// Given a spanning set of a subspace S (rows over `width` coordinates),
/// repeatedly forms span(S_m * generators) until it vanishes; returns the
/// last m with S_m nonzero.
template <typename F, typename Mul>
std::size_t nilpotency(const F& f, std::vector<Vec<F>> generators, std::size_t width, Mul mul,
                       std::size_t limit) {
  reduce_rows(f, generators, width);
  if (generators.empty()) return 0;
  std::size_t m = 1;
  std::vector<Vec<F>> current = generators;
  while (m <= limit) {
    std::vector<Vec<F>> next;
    for (const auto& a : current) {
      for (const auto& b : generators) next.push_back(mul(a, b));
    }
    reduce_rows(f, next, width);
    if (next.empty()) return m;
    current = std::move(next);
    ++m;
  }
  throw PreconditionError("product filtration did not terminate");
}

}  // namespace detail

template <typename F>
std::size_t cup_length(const CohomologyRing<F>& ring) {
  const F& f = ring.field();
  std::vector<Vec<F>> positive;
  for (std::size_t i = 0; i < ring.dimension(); ++i) {
    if (ring.degree_of(i) == 0) continue;
    Vec<F> e(ring.dimension(), f.zero());
    e[i] = f.one();
    positive.push_back(std::move(e));
  }
  return detail::nilpotency(
      f, positive, ring.dimension(), [&](const Vec<F>& a, const Vec<F>& b) { return ring.multiply(a, b); },
      ring.dimension() + 1);
}

/// The r-fold tensor power of a cohomology ring with the Koszul sign rule.
template <typename F>
class TensorPower {
 public:
  TensorPower(const CohomologyRing<F>& ring, std::size_t r) : ring_(ring), r_(r) {
    const std::size_t d = ring.dimension();
    std::size_t total = 1;
    for (std::size_t i = 0; i < r; ++i) {
      total *= d;
      if (total > 4096) throw PreconditionError("tensor power too large");
    }
    size_ = total;
  }

  std::size_t size() const { return size_; }
  std::vector<std::size_t> factors(std::size_t index) const {
    std::vector<std::size_t> out(r_);
    for (std::size_t i = r_; i-- > 0;) {
      out[i] = index % ring_.dimension();
      index /= ring_.dimension();
    }
    return out;
  }
  std::size_t index(const std::vector<std::size_t>& factors) const {
    std::size_t idx = 0;
    for (auto c : factors) idx = idx * ring_.dimension() + c;
    return idx;
  }

  Vec<F> multiply(const Vec<F>& x, const Vec<F>& y) const {
    const F& f = ring_.field();
    Vec<F> out(size_, f.zero());
    for (std::size_t i = 0; i < size_; ++i) {
      if (f.is_zero(x[i])) continue;
      const auto a = factors(i);
      for (std::size_t j = 0; j < size_; ++j) {
        if (f.is_zero(y[j])) continue;
        const auto b = factors(j);
        // moving b_s past a_t for t > s
        std::size_t swaps = 0;
        for (std::size_t s = 0; s < r_; ++s) {
          for (std::size_t t = s + 1; t < r_; ++t) {
            swaps += ring_.degree_of(b[s]) * ring_.degree_of(a[t]);
          }
        }
        auto coeff = f.mul(x[i], y[j]);
        if (swaps % 2 == 1) coeff = f.neg(coeff);
        // expand the factorwise products
        std::vector<std::pair<std::vector<std::size_t>, typename F::Elem>> terms{{{}, coeff}};
        for (std::size_t s = 0; s < r_; ++s) {
          const auto& pr = ring_.product_coordinates(a[s], b[s]);
          std::vector<std::pair<std::vector<std::size_t>, typename F::Elem>> grown;
          for (const auto& [idx, c] : terms) {
            for (std::size_t t = 0; t < pr.size(); ++t) {
              if (f.is_zero(pr[t])) continue;
              auto next = idx;
              next.push_back(t);
              grown.emplace_back(std::move(next), f.mul(c, pr[t]));
            }
          }
          terms = std::move(grown);
        }
        for (const auto& [idx, c] : terms) {
          const std::size_t k = index(idx);
          out[k] = f.add(out[k], c);
        }
      }
    }
    return out;
  }

  /// Multiplication map onto the ring: a_1 x ... x a_r -> a_1 ... a_r.
  Vec<F> collapse(std::size_t basis_index) const {
    const F& f = ring_.field();
    const auto a = factors(basis_index);
    Vec<F> acc(ring_.dimension(), f.zero());
    acc[a[0]] = f.one();
    for (std::size_t s = 1; s < r_; ++s) {
      Vec<F> e(ring_.dimension(), f.zero());
      e[a[s]] = f.one();
      acc = ring_.multiply(acc, e);
    }
    return acc;
  }

  /// Basis of the kernel of the multiplication map.
  std::vector<Vec<F>> zero_divisors() const {
    const F& f = ring_.field();
    // matrix of the map: rows = ring coordinates, columns = tensor basis
    std::vector<Vec<F>> rows(ring_.dimension(), Vec<F>(size_, f.zero()));
    for (std::size_t j = 0; j < size_; ++j) {
      const auto image = collapse(j);
      for (std::size_t i = 0; i < image.size(); ++i) rows[i][j] = image[i];
    }
    return nullspace(f, rows, size_);
  }

 private:
  const CohomologyRing<F>& ring_;
  std::size_t r_;
  std::size_t size_ = 0;
};

template <typename F>
std::size_t zero_divisor_cup_length(const CohomologyRing<F>& ring, std::size_t r) {
  if (r < 2) throw PreconditionError("zero-divisor cup-length needs r >= 2");
  if (ring.betti(0) != 1) throw PreconditionError("zero-divisor cup-length needs a connected complex");
  TensorPower<F> tp(ring, r);
  return detail::nilpotency(
      ring.field(), tp.zero_divisors(), tp.size(),
      [&](const Vec<F>& a, const Vec<F>& b) { return tp.multiply(a, b); }, tp.size() + 1);
}

/// Runtime choice of coefficient field for the entry points below.
using AnyField = std::variant<RationalField, PrimeField>;

inline AnyField make_field(const Ring& ring) {
  switch (ring.kind) {
    case Ring::Kind::Rationals: return RationalField{};
    case Ring::Kind::Prime: return PrimeField(ring.modulus);
    case Ring::Kind::Integers: break;
  }
  throw PreconditionError("cup products need field coefficients (Q or Zp:<p>)");
}

inline std::size_t cup_length(const SimplicialComplex& kc, const Ring& ring) {
  return std::visit([&](const auto& f) { return cup_length(CohomologyRing(f, kc)); },
                    make_field(ring));
}

inline std::size_t zero_divisor_cup_length(const SimplicialComplex& kc, const Ring& ring,
                                           std::size_t r) {
  return std::visit(
      [&](const auto& f) { return zero_divisor_cup_length(CohomologyRing(f, kc), r); },
      make_field(ring));
}

}  // namespace fintop
