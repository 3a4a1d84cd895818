#pragma once

// Small dense real linear algebra: just what the zero computations need.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "legzeros/error.hpp"

namespace legzeros {

/// Row-major dense matrix. `T` is double for public results and long double
/// for the ill-conditioned intermediate steps of the spectral route.
template <typename T>
class BasicMatrix {
 public:
  BasicMatrix() = default;
  BasicMatrix(std::size_t rows, std::size_t cols, T fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  BasicMatrix(std::initializer_list<std::initializer_list<T>> init);

  static BasicMatrix identity(std::size_t n);
  static BasicMatrix diagonal(std::span<const T> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  BasicMatrix transpose() const;
  T frobenius_norm() const;
  T max_abs() const;

  template <typename U>
  BasicMatrix<U> cast() const {
    BasicMatrix<U> out(rows_, cols_);
    std::transform(data_.begin(), data_.end(), out.data().begin(),
                   [](T v) { return static_cast<U>(v); });
    return out;
  }

  friend bool operator==(const BasicMatrix&, const BasicMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Matrix = BasicMatrix<double>;
using WideMatrix = BasicMatrix<long double>;

template <typename T>
BasicMatrix<T> operator*(const BasicMatrix<T>& a, const BasicMatrix<T>& b);
template <typename T>
BasicMatrix<T> operator+(const BasicMatrix<T>& a, const BasicMatrix<T>& b);
template <typename T>
BasicMatrix<T> operator-(const BasicMatrix<T>& a, const BasicMatrix<T>& b);

struct EigenResult {
  std::vector<double> values;  // descending
  int sweeps = 0;
};

inline constexpr double kDefaultEigenTol = 1e-12;
inline constexpr int kDefaultSweepBudget = 64;

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
///
/// A pair (p,q) is rotated while |a_pq| > (tol/n)·sqrt(|a_pp·a_qq|), so the
/// final off-diagonal Frobenius norm is below tol·‖A‖_F and, for matrices
/// whose off-diagonal coupling is small relative to the diagonal, eigenvalues
/// of tiny magnitude come out with small relative error.
EigenResult sym_eigenvalues(const Matrix& m, double tol = kDefaultEigenTol,
                            int max_sweeps = kDefaultSweepBudget);

/// Solves a·X = b by Gaussian elimination with partial pivoting.
template <typename T>
BasicMatrix<T> solve_linear(const BasicMatrix<T>& a, const BasicMatrix<T>& b);

/// Determinant via LU with partial pivoting; returns 0 for exactly singular
/// input instead of throwing.
template <typename T>
T determinant(const BasicMatrix<T>& a);

}  // namespace legzeros
