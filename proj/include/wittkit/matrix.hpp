#pragma once

// Dense matrices and the W_m(R)-valued linear algebra used by displays.

#include <algorithm>
#include <bit>
#include <functional>
#include <ostream>
#include <unordered_map>
#include <vector>

#include "wittkit/error.hpp"
#include "wittkit/witt.hpp"

namespace wittkit {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const T& fill = T()) : r_(rows), c_(cols), d_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const noexcept { return r_; }
  int cols() const noexcept { return c_; }
  bool square() const noexcept { return r_ == c_; }

  T& operator()(int i, int j) { return d_[static_cast<std::size_t>(i) * c_ + j]; }
  const T& operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * c_ + j]; }

  const std::vector<T>& data() const noexcept { return d_; }

  template <class F>
  auto map(F f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> out;
    out = Matrix<U>::from_fn(r_, c_, [&](int i, int j) { return f((*this)(i, j)); });
    return out;
  }

  template <class F>
  static Matrix from_fn(int rows, int cols, F f) {
    Matrix m;
    m.r_ = rows;
    m.c_ = cols;
    m.d_.reserve(static_cast<std::size_t>(rows) * cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.d_.push_back(f(i, j));
    return m;
  }

  Matrix transpose() const {
    return from_fn(c_, r_, [&](int i, int j) { return (*this)(j, i); });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_; }

 private:
  template <class>
  friend class Matrix;
  int r_ = 0, c_ = 0;
  std::vector<T> d_;
};

using WMatrix = Matrix<WittVector>;

inline WMatrix wm_zero(const RingPtr& r, int rows, int cols, int m) {
  return WMatrix(rows, cols, WittVector::zero(r, m));
}

inline WMatrix wm_identity(const RingPtr& r, int n, int m) {
  return WMatrix::from_fn(n, n, [&](int i, int j) { return i == j ? WittVector::one(r, m) : WittVector::zero(r, m); });
}

inline WMatrix wm_from_ints(const RingPtr& r, int m, const std::vector<std::vector<i64>>& rows) {
  const int n = static_cast<int>(rows.size()), c = n ? static_cast<int>(rows[0].size()) : 0;
  return WMatrix::from_fn(n, c, [&](int i, int j) { return WittVector::from_int(r, m, rows[i][j]); });
}

inline WMatrix wm_diag(const std::vector<WittVector>& d) {
  const int n = static_cast<int>(d.size());
  return WMatrix::from_fn(n, n, [&](int i, int j) { return i == j ? d[i] : WittVector::zero(d[i].ring(), d[i].len()); });
}

/// Minimal coordinate length over all entries (the certified precision).
inline int wm_len(const WMatrix& a) {
  int m = 1 << 20;
  for (const auto& x : a.data()) m = std::min(m, x.len());
  return m;
}

inline WMatrix wm_truncate(const WMatrix& a, int m) {
  return a.map([&](const WittVector& x) { return x.truncate(std::min(m, x.len())); });
}

inline WMatrix operator+(const WMatrix& a, const WMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::Usage, "matrix shape mismatch");
  return WMatrix::from_fn(a.rows(), a.cols(), [&](int i, int j) { return a(i, j) + b(i, j); });
}

inline WMatrix operator-(const WMatrix& a, const WMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::Usage, "matrix shape mismatch");
  return WMatrix::from_fn(a.rows(), a.cols(), [&](int i, int j) { return a(i, j) - b(i, j); });
}

inline WMatrix operator*(const WMatrix& a, const WMatrix& b) {
  require(a.cols() == b.rows(), ErrorKind::Usage, "matrix shape mismatch");
  require(a.cols() > 0, ErrorKind::Usage, "empty inner dimension");
  return WMatrix::from_fn(a.rows(), b.cols(), [&](int i, int j) {
    WittVector acc = a(i, 0) * b(0, j);
    for (int k = 1; k < a.cols(); ++k) acc = acc + a(i, k) * b(k, j);
    return acc;
  });
}

inline WMatrix operator*(const WittVector& s, const WMatrix& a) {
  return a.map([&](const WittVector& x) { return s * x; });
}

/// Equality on the common certified prefix of each entry.
inline bool wm_eq(const WMatrix& a, const WMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!eq_prefix(a(i, j), b(i, j))) return false;
  return true;
}

inline WMatrix wm_frobenius(const WMatrix& a) { return a.map([](const WittVector& x) { return frobenius(x); }); }

inline WMatrix wm_frobenius_pow(const WMatrix& a, int k) {
  WMatrix r = a;
  for (int i = 0; i < k; ++i) r = wm_frobenius(r);
  return r;
}

inline WMatrix wm_kron(const WMatrix& a, const WMatrix& b) {
  return WMatrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), [&](int i, int j) {
    return a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
  });
}

/// Division-free determinant over any commutative ring: Laplace expansion along
/// rows with memoization on the set of remaining columns.
template <class T, class Mul, class Add, class Neg>
T laplace_det(const Matrix<T>& a, const T& one, const T& zero, Mul mul, Add add, Neg neg) {
  const int n = a.rows();
  require(a.square(), ErrorKind::Usage, "determinant of a non-square matrix");
  require(n <= 20, ErrorKind::SizeCap, "determinant size cap");
  if (n == 0) return one;
  std::unordered_map<std::uint32_t, T> memo;
  std::function<T(std::uint32_t)> rec = [&](std::uint32_t cols) -> T {
    const int row = n - std::popcount(cols);
    if (row == n) return one;
    auto it = memo.find(cols);
    if (it != memo.end()) return it->second;
    T acc = zero;
    int sign_pos = 0;
    for (int j = 0; j < n; ++j) {
      if (!(cols >> j & 1u)) continue;
      T term = mul(a(row, j), rec(cols & ~(1u << j)));
      acc = add(acc, (sign_pos % 2) ? neg(term) : term);
      ++sign_pos;
    }
    memo.emplace(cols, acc);
    return acc;
  };
  return rec((n == 32 ? 0u : (1u << n)) - 1u);
}

inline WittVector wm_det(const WMatrix& a) {
  require(a.rows() > 0, ErrorKind::Usage, "determinant of an empty matrix");
  const auto& r = a(0, 0).ring();
  const int m = wm_len(a);
  return laplace_det<WittVector>(
      a, WittVector::one(r, m), WittVector::zero(r, m), [](const WittVector& x, const WittVector& y) { return x * y; },
      [](const WittVector& x, const WittVector& y) { return x + y; }, [](const WittVector& x) { return -x; });
}

inline WMatrix wm_minor(const WMatrix& a, int skip_row, int skip_col) {
  return WMatrix::from_fn(a.rows() - 1, a.cols() - 1, [&](int i, int j) {
    return a(i < skip_row ? i : i + 1, j < skip_col ? j : j + 1);
  });
}

inline WMatrix wm_adjugate(const WMatrix& a) {
  const int n = a.rows();
  const auto& r = a(0, 0).ring();
  const int m = wm_len(a);
  if (n == 1) return wm_identity(r, 1, m);
  return WMatrix::from_fn(n, n, [&](int i, int j) {
    WittVector d = wm_det(wm_minor(a, j, i));
    return ((i + j) % 2) ? -d : d;
  });
}

inline bool wm_is_invertible(const WMatrix& a) { return a.square() && a.rows() > 0 && wm_det(a).is_unit(); }

inline WMatrix wm_inverse(const WMatrix& a) {
  require(a.square(), ErrorKind::NotInvertible, "non-square matrix");
  const WittVector d = wm_det(a);
  if (!d.is_unit()) fail(ErrorKind::NotInvertible, "determinant is not a unit");
  return d.inv() * wm_adjugate(a);
}

inline std::ostream& operator<<(std::ostream& os, const WMatrix& a) {
  os << "[";
  for (int i = 0; i < a.rows(); ++i) {
    os << (i ? "," : "") << "[";
    for (int j = 0; j < a.cols(); ++j) os << (j ? "," : "") << a(i, j);
    os << "]";
  }
  return os << "]";
}

template <class Rng>
WMatrix wm_random(const RingPtr& r, int rows, int cols, int m, Rng& rng) {
  return WMatrix::from_fn(rows, cols, [&](int, int) { return witt_random(r, m, rng); });
}

template <class Rng>
WMatrix wm_random_invertible(const RingPtr& r, int n, int m, Rng& rng) {
  for (;;) {
    WMatrix a = wm_random(r, n, n, m, rng);
    if (wm_is_invertible(a)) return a;
  }
}

}  // namespace wittkit
