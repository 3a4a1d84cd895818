#include "legzeros/numkit.hpp"

#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

namespace legzeros {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid input";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::singular_matrix: return "singular matrix";
    case ErrorKind::pole: return "pole";
    case ErrorKind::range: return "range";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::wrong_branch: return "wrong branch";
    case ErrorKind::stiffness: return "stiffness";
    case ErrorKind::io: return "i/o";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

template <typename T>
BasicMatrix<T>::BasicMatrix(std::initializer_list<std::initializer_list<T>> init)
    : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : init) {
    if (row.size() != cols_) fail(ErrorKind::invalid_input, "ragged matrix initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

template <typename T>
BasicMatrix<T> BasicMatrix<T>::identity(std::size_t n) {
  BasicMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
  return m;
}

template <typename T>
BasicMatrix<T> BasicMatrix<T>::diagonal(std::span<const T> diag) {
  BasicMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

template <typename T>
BasicMatrix<T> BasicMatrix<T>::transpose() const {
  BasicMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

template <typename T>
T BasicMatrix<T>::frobenius_norm() const {
  // Scaled accumulation so entries near the overflow threshold stay finite.
  T scale = max_abs();
  if (scale == T(0)) return T(0);
  T sum = 0;
  for (T v : data_) sum += (v / scale) * (v / scale);
  return scale * std::sqrt(sum);
}

template <typename T>
T BasicMatrix<T>::max_abs() const {
  T m = 0;
  for (T v : data_) m = std::max(m, std::abs(v));
  return m;
}

template <typename T>
BasicMatrix<T> operator*(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
  if (a.cols() != b.rows()) fail(ErrorKind::invalid_input, "matrix product: shape mismatch");
  BasicMatrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T(0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

template <typename T>
BasicMatrix<T> operator+(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::invalid_input, "matrix sum: shape mismatch");
  BasicMatrix<T> out = a;
  auto o = out.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += bd[i];
  return out;
}

template <typename T>
BasicMatrix<T> operator-(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::invalid_input, "matrix difference: shape mismatch");
  BasicMatrix<T> out = a;
  auto o = out.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] -= bd[i];
  return out;
}

namespace {

// In-place LU with partial pivoting. Returns the permutation sign, or 0 when
// a pivot falls below `pivot_floor`.
template <typename T>
int lu_decompose(BasicMatrix<T>& lu, std::vector<std::size_t>& perm, T pivot_floor) {
  const std::size_t n = lu.rows();
  perm.resize(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    T best = std::abs(lu(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(lu(r, k)) > best) {
        best = std::abs(lu(r, k));
        piv = r;
      }
    }
    if (!(best > pivot_floor)) return 0;
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(k, c), lu(piv, c));
      std::swap(perm[k], perm[piv]);
      sign = -sign;
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const T f = lu(r, k) / lu(k, k);
      lu(r, k) = f;
      if (f == T(0)) continue;
      for (std::size_t c = k + 1; c < n; ++c) lu(r, c) -= f * lu(k, c);
    }
  }
  return sign;
}

}  // namespace

template <typename T>
BasicMatrix<T> solve_linear(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
  if (!a.square()) fail(ErrorKind::invalid_input, "solve_linear: matrix is not square");
  if (b.rows() != a.rows()) fail(ErrorKind::invalid_input, "solve_linear: right-hand side shape mismatch");
  const std::size_t n = a.rows();
  const T scale = a.max_abs();
  BasicMatrix<T> lu = a;
  std::vector<std::size_t> perm;
  if (n == 0 || lu_decompose(lu, perm, static_cast<T>(1e-13) * scale) == 0)
    fail(ErrorKind::singular_matrix, "solve_linear: pivot below 1e-13 of matrix scale");

  BasicMatrix<T> x(n, b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    std::vector<T> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      T s = b(perm[i], c);
      for (std::size_t k = 0; k < i; ++k) s -= lu(i, k) * y[k];
      y[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      T s = y[i];
      for (std::size_t k = i + 1; k < n; ++k) s -= lu(i, k) * x(k, c);
      x(i, c) = s / lu(i, i);
    }
  }
  return x;
}

template <typename T>
T determinant(const BasicMatrix<T>& a) {
  if (!a.square()) fail(ErrorKind::invalid_input, "determinant: matrix is not square");
  BasicMatrix<T> lu = a;
  std::vector<std::size_t> perm;
  const int sign = lu_decompose(lu, perm, T(0));
  if (sign == 0) return T(0);
  T det = static_cast<T>(sign);
  for (std::size_t i = 0; i < a.rows(); ++i) det *= lu(i, i);
  return det;
}

EigenResult sym_eigenvalues(const Matrix& m, double tol, int max_sweeps) {
  if (!m.square() || m.rows() == 0)
    fail(ErrorKind::invalid_input, "sym_eigenvalues: matrix must be square and non-empty");
  if (!(tol > 0)) fail(ErrorKind::invalid_input, "sym_eigenvalues: tolerance must be positive");
  const std::size_t n = m.rows();
  const double scale = m.max_abs();
  for (double v : m.data())
    if (!std::isfinite(v)) fail(ErrorKind::invalid_input, "sym_eigenvalues: non-finite entry");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol * scale) {
        std::ostringstream os;
        os << "sym_eigenvalues: asymmetry at (" << i << ',' << j << ") exceeds tolerance";
        fail(ErrorKind::invalid_input, os.str());
      }

  Matrix a = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (m(i, j) + m(j, i));

  const double pair_tol = tol / static_cast<double>(n);
  constexpr double tiny = std::numeric_limits<double>::min();
  EigenResult result;
  bool rotated = true;
  while (rotated) {
    if (result.sweeps == max_sweeps)
      fail(ErrorKind::non_convergence, "sym_eigenvalues: sweep budget exhausted");
    ++result.sweeps;
    rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= tiny ||
            std::abs(apq) <= pair_tol * std::sqrt(std::abs(a(p, p)) * std::abs(a(q, q)))) {
          continue;
        }
        rotated = true;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double g = a(r, p);
          const double h = a(r, q);
          a(r, p) = a(p, r) = g - s * (h + g * tau);
          a(r, q) = a(q, r) = h + s * (g - h * tau);
        }
      }
    }
  }
  result.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.values[i] = a(i, i);
  std::sort(result.values.begin(), result.values.end(), std::greater<>());
  return result;
}

template class BasicMatrix<double>;
template class BasicMatrix<long double>;
template Matrix operator*(const Matrix&, const Matrix&);
template WideMatrix operator*(const WideMatrix&, const WideMatrix&);
template Matrix operator+(const Matrix&, const Matrix&);
template WideMatrix operator+(const WideMatrix&, const WideMatrix&);
template Matrix operator-(const Matrix&, const Matrix&);
template WideMatrix operator-(const WideMatrix&, const WideMatrix&);
template Matrix solve_linear(const Matrix&, const Matrix&);
template WideMatrix solve_linear(const WideMatrix&, const WideMatrix&);
template double determinant(const Matrix&);
template long double determinant(const WideMatrix&);

}  // namespace legzeros
