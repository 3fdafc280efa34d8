#pragma once

// Coefficient rings and dense linear algebra over the prime fields and Q.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fintop/error.hpp"
#include "fintop/snf.hpp"

namespace fintop {

using Rational = boost::multiprecision::cpp_rational;

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

/// Z, Q or Z/p. Parsed from "Z", "Q", "Zp:<p>".
struct Ring {
  enum class Kind { Integers, Rationals, Prime };
  Kind kind = Kind::Integers;
  std::uint64_t modulus = 0;

  static Ring integers() { return {Kind::Integers, 0}; }
  static Ring rationals() { return {Kind::Rationals, 0}; }
  static Ring prime(std::uint64_t p) {
    if (!is_prime(p)) throw NonPrimeModulus("modulus " + std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 31)) throw PreconditionError("modulus must be below 2^31");
    return {Kind::Prime, p};
  }
  static Ring parse(const std::string& text) {
    if (text == "Z") return integers();
    if (text == "Q") return rationals();
    if (text.rfind("Zp:", 0) == 0 && text.size() > 3) {
      std::size_t used = 0;
      unsigned long long p = 0;
      try {
        p = std::stoull(text.substr(3), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == text.size() - 3) return prime(p);
    }
    throw PreconditionError("unknown ring '" + text + "', expected Z, Q or Zp:<p>");
  }

  bool is_field() const { return kind != Kind::Integers; }
  std::string to_string() const {
    switch (kind) {
      case Kind::Integers: return "Z";
      case Kind::Rationals: return "Q";
      case Kind::Prime: return "Zp:" + std::to_string(modulus);
    }
    return "?";
  }
  friend bool operator==(const Ring&, const Ring&) = default;
};

/// Z/p with elements stored as residues in [0, p).
class PrimeField {
 public:
  using Elem = std::int64_t;
  explicit PrimeField(std::uint64_t p) : p_(static_cast<std::int64_t>(Ring::prime(p).modulus)) {}

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p_; }
  Elem from_int(std::int64_t v) const { return ((v % p_) + p_) % p_; }
  Elem from_big(const BigInt& v) const {
    BigInt r = v % p_;
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
  }
  Elem add(Elem a, Elem b) const { return (a + b) % p_; }
  Elem sub(Elem a, Elem b) const { return (a - b + p_) % p_; }
  Elem neg(Elem a) const { return (p_ - a) % p_; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
  Elem inv(Elem a) const {
    if (a == 0) throw PreconditionError("inverse of zero");
    Elem result = 1;
    Elem base = a;
    for (Elem e = p_ - 2; e > 0; e >>= 1) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
    }
    return result;
  }
  bool is_zero(Elem a) const { return a == 0; }
  std::int64_t modulus() const { return p_; }
  std::string name() const { return "Zp:" + std::to_string(p_); }

 private:
  std::int64_t p_;
};

class RationalField {
 public:
  using Elem = Rational;
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const { return v; }
  Elem from_big(const BigInt& v) const { return Rational(v); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw PreconditionError("inverse of zero");
    return 1 / a;
  }
  bool is_zero(const Elem& a) const { return a == 0; }
  std::string name() const { return "Q"; }
};

template <typename F>
using Vec = std::vector<typename F::Elem>;

/// Row-reduces `rows` in place to reduced echelon form, choosing pivots
/// among the first `width` columns only, and returns the pivot columns.
template <typename F>
std::vector<std::size_t> reduce_rows(const F& f, std::vector<Vec<F>>& rows, std::size_t width) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && f.is_zero(rows[p][c])) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    const auto scale = f.inv(rows[r][c]);
    for (auto& v : rows[r]) v = f.mul(v, scale);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || f.is_zero(rows[i][c])) continue;
      const auto k = rows[i][c];
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        rows[i][j] = f.sub(rows[i][j], f.mul(k, rows[r][j]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

template <typename F>
std::size_t rank_of(const F& f, std::vector<Vec<F>> rows, std::size_t width) {
  return reduce_rows(f, rows, width).size();
}

/// Basis of {x : M x = 0} where M is given by rows of length `width`.
template <typename F>
std::vector<Vec<F>> nullspace(const F& f, std::vector<Vec<F>> rows, std::size_t width) {
  const auto pivots = reduce_rows(f, rows, width);
  std::vector<bool> is_pivot(width, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec<F>> basis;
  for (std::size_t free = 0; free < width; ++free) {
    if (is_pivot[free]) continue;
    Vec<F> x(width, f.zero());
    x[free] = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = f.neg(rows[i][free]);
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Coordinates of a vector with respect to a fixed, linearly independent
/// family. Vectors outside the span have no coordinates.
template <typename F>
class Coordinates {
 public:
  Coordinates(F field, const std::vector<Vec<F>>& family, std::size_t width)
      : f_(std::move(field)), width_(width), count_(family.size()) {
    // augmented rows [v | e_i], reduced on the first `width` columns
    for (std::size_t i = 0; i < family.size(); ++i) {
      Vec<F> row = family[i];
      row.resize(width + count_, f_.zero());
      row[width + i] = f_.one();
      rows_.push_back(std::move(row));
    }
    pivots_ = reduce_rows(f_, rows_, width);
    if (pivots_.size() != count_) throw PreconditionError("family is not linearly independent");
  }

  std::optional<Vec<F>> solve(Vec<F> v) const {
    Vec<F> coeff(count_, f_.zero());
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      const auto k = v[pivots_[i]];
      if (f_.is_zero(k)) continue;
      for (std::size_t j = 0; j < width_; ++j) v[j] = f_.sub(v[j], f_.mul(k, rows_[i][j]));
      for (std::size_t j = 0; j < count_; ++j) {
        coeff[j] = f_.add(coeff[j], f_.mul(k, rows_[i][width_ + j]));
      }
    }
    for (const auto& x : v) {
      if (!f_.is_zero(x)) return std::nullopt;
    }
    return coeff;
  }

  std::size_t size() const { return count_; }

 private:
  F f_;
  std::size_t width_;
  std::size_t count_;
  std::vector<Vec<F>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Extends a basis of `sub` (assumed inside span(`whole`)) by vectors drawn
/// from `whole`; returns only the added vectors.
template <typename F>
std::vector<Vec<F>> complement_basis(const F& f, const std::vector<Vec<F>>& sub,
                                     const std::vector<Vec<F>>& whole, std::size_t width) {
  std::vector<Vec<F>> current;
  for (const auto& v : sub) {
    auto trial = current;
    trial.push_back(v);
    if (rank_of(f, trial, width) == trial.size()) current.push_back(v);
  }
  std::vector<Vec<F>> added;
  for (const auto& v : whole) {
    auto trial = current;
    trial.push_back(v);
    if (rank_of(f, trial, width) == trial.size()) {
      current.push_back(v);
      added.push_back(v);
    }
  }
  return added;
}

template <typename F>
Vec<F> to_field(const F& f, const std::vector<std::int64_t>& v) {
  Vec<F> out;
  out.reserve(v.size());
  for (auto x : v) out.push_back(f.from_int(x));
  return out;
}

template <typename F>
std::vector<Vec<F>> to_field_rows(const F& f, const IntMatrix& m) {
  std::vector<Vec<F>> rows(m.rows(), Vec<F>(m.cols(), f.zero()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = f.from_int(m(i, j));
  }
  return rows;
}

}  // namespace fintop
