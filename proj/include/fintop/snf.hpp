#pragma once

// Dense integer matrices and Smith normal form with a unimodular
// certificate. Elimination starts in checked int64 and restarts with
// arbitrary precision when an intermediate value would overflow.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fintop/error.hpp"

namespace fintop {

using BigInt = boost::multiprecision::cpp_int;

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw ShapeError("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out(rows_, std::vector<T>(cols_));
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
    }
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  bool is_zero() const {
    for (const T& v : data_) {
      if (v != 0) return false;
    }
    return true;
  }

  template <typename U>
  Matrix<U> cast() const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = U((*this)(i, j));
    }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using BigMatrix = Matrix<BigInt>;

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw ShapeError("matrix product dimension mismatch");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

inline BigMatrix to_big(const IntMatrix& m) { return m.cast<BigInt>(); }

/// Exact product of int64 matrices, computed in arbitrary precision.
inline BigMatrix multiply_exact(const IntMatrix& a, const IntMatrix& b) {
  return to_big(a) * to_big(b);
}

/// Fraction-free Gaussian elimination.
inline BigInt bareiss_determinant(BigMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw ShapeError("determinant of a non-square matrix");
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

struct SmithForm {
  BigMatrix left;      // U
  BigMatrix diagonal;  // D = U * A * V
  BigMatrix right;     // V
  std::vector<BigInt> invariant_factors;  // positive, each divides the next
  std::size_t rank = 0;
  bool promoted = false;  // arbitrary precision was needed
};

namespace detail {

struct Overflow {};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }
inline std::int64_t abs_value(std::int64_t a) { return a < 0 ? checked_neg(a) : a; }

inline BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt checked_add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt checked_neg(const BigInt& a) { return -a; }
inline BigInt abs_value(const BigInt& a) { return abs(a); }

template <typename T>
struct SmithWork {
  Matrix<T> a;
  Matrix<T> u;
  Matrix<T> v;

  // row_i += k * row_j on A and U
  void add_row(std::size_t i, std::size_t j, const T& k) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      a(i, c) = checked_add(a(i, c), checked_mul(k, a(j, c)));
    }
    for (std::size_t c = 0; c < u.cols(); ++c) {
      u(i, c) = checked_add(u(i, c), checked_mul(k, u(j, c)));
    }
  }
  // col_i += k * col_j on A and V
  void add_col(std::size_t i, std::size_t j, const T& k) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
      a(r, i) = checked_add(a(r, i), checked_mul(k, a(r, j)));
    }
    for (std::size_t r = 0; r < v.rows(); ++r) {
      v(r, i) = checked_add(v(r, i), checked_mul(k, v(r, j)));
    }
  }
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = checked_neg(a(i, c));
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = checked_neg(u(i, c));
  }
};

template <typename T>
void smith_in_place(SmithWork<T>& w) {
  Matrix<T>& a = w.a;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      // smallest nonzero |entry| in the trailing block goes to (t, t)
      std::size_t pi = m;
      std::size_t pj = n;
      T best = 0;
      for (std::size_t i = t; i < m; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (a(i, j) == 0) continue;
          T mag = abs_value(a(i, j));
          if (pi == m || mag < best) {
            best = mag;
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == m) return;
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
      const T pivot = a(t, t);
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        const T q = a(i, t) / pivot;
        w.add_row(i, t, checked_neg(q));
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        const T q = a(t, j) / pivot;
        w.add_col(j, t, checked_neg(q));
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) continue;
      // divisibility: pull a non-multiple into row t and go again
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a(i, j) % pivot != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad == m) break;
      w.add_row(t, bad, T(1));
    }
    if (a(t, t) < 0) w.negate_row(t);
  }
}

template <typename T>
SmithForm run_smith(const Matrix<T>& input) {
  SmithWork<T> w{input, Matrix<T>::identity(input.rows()), Matrix<T>::identity(input.cols())};
  smith_in_place(w);
  SmithForm out;
  out.left = w.u.template cast<BigInt>();
  out.diagonal = w.a.template cast<BigInt>();
  out.right = w.v.template cast<BigInt>();
  for (std::size_t i = 0; i < std::min(input.rows(), input.cols()); ++i) {
    if (out.diagonal(i, i) == 0) break;
    out.invariant_factors.push_back(out.diagonal(i, i));
  }
  out.rank = out.invariant_factors.size();
  return out;
}

}  // namespace detail

inline SmithForm smith_normal_form(const BigMatrix& a) {
  SmithForm out = detail::run_smith(a);
  out.promoted = true;
  return out;
}

inline SmithForm smith_normal_form(const IntMatrix& a) {
  try {
    return detail::run_smith(a);
  } catch (const detail::Overflow&) {
    return smith_normal_form(to_big(a));
  }
}

/// Empty when U*A*V = D, D is diagonal with nonnegative divisibility chain
/// and U, V have determinant +-1; otherwise the first failed check.
inline std::optional<std::string> smith_certificate_problem(const BigMatrix& a,
                                                            const SmithForm& s) {
  if (s.left.rows() != a.rows() || s.left.cols() != a.rows() || s.right.rows() != a.cols() ||
      s.right.cols() != a.cols() || s.diagonal.rows() != a.rows() ||
      s.diagonal.cols() != a.cols()) {
    return "certificate shapes do not match";
  }
  if (s.left * a * s.right != s.diagonal) return "U*A*V differs from D";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j && s.diagonal(i, j) != 0) return "D has an off-diagonal entry";
    }
  }
  for (std::size_t i = 0; i < s.invariant_factors.size(); ++i) {
    if (s.invariant_factors[i] <= 0) return "nonpositive invariant factor";
    if (i > 0 && s.invariant_factors[i] % s.invariant_factors[i - 1] != 0) {
      return "invariant factors do not form a divisibility chain";
    }
  }
  if (abs(bareiss_determinant(s.left)) != 1) return "U is not unimodular";
  if (abs(bareiss_determinant(s.right)) != 1) return "V is not unimodular";
  return std::nullopt;
}

inline std::optional<std::string> smith_certificate_problem(const IntMatrix& a,
                                                            const SmithForm& s) {
  return smith_certificate_problem(to_big(a), s);
}

inline std::size_t integer_rank(const IntMatrix& a) { return smith_normal_form(a).rank; }

}  // namespace fintop
