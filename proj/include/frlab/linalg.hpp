#pragma once

// Dense complex linear algebra at desk scale (dimensions up to ~1k).
//
// Inner products are linear in the first argument and conjugate-linear in
// the second: dot(u, v) = sum_i u_i * conj(v_i). All tolerances are relative
// to the largest spectral magnitude of the operand.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "frlab/errors.hpp"

namespace frlab {

using Complex = std::complex<double>;

class ComplexVector {
public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t dim) : data_(dim, Complex{0.0, 0.0}) {}
  ComplexVector(std::initializer_list<Complex> values) : data_(values) {}
  explicit ComplexVector(std::vector<Complex> values) : data_(std::move(values)) {}

  static ComplexVector basis(std::size_t dim, std::size_t k) {
    ComplexVector v(dim);
    v[k] = 1.0;
    return v;
  }

  std::size_t dim() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }

  std::span<Complex> values() noexcept { return data_; }
  std::span<const Complex> values() const noexcept { return data_; }
  const std::vector<Complex>& raw() const noexcept { return data_; }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  double squared_norm() const noexcept {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return s;
  }
  double norm() const noexcept { return std::sqrt(squared_norm()); }

  ComplexVector& operator+=(const ComplexVector& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  ComplexVector& operator-=(const ComplexVector& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ComplexVector& operator*=(Complex a) {
    for (auto& z : data_) z *= a;
    return *this;
  }

  /// this += a * x
  void axpy(Complex a, const ComplexVector& x) {
    check_same(x);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += a * x.data_[i];
  }

  friend ComplexVector operator+(ComplexVector a, const ComplexVector& b) { return a += b; }
  friend ComplexVector operator-(ComplexVector a, const ComplexVector& b) { return a -= b; }
  friend ComplexVector operator*(Complex s, ComplexVector a) { return a *= s; }
  friend ComplexVector operator*(ComplexVector a, Complex s) { return a *= s; }

private:
  void check_same(const ComplexVector& o) const {
    if (o.dim() != dim())
      throw ContractError("vector dimension mismatch: " + std::to_string(dim()) +
                          " vs " + std::to_string(o.dim()));
  }

  std::vector<Complex> data_;
};

/// <u, v> = sum u_i conj(v_i)
inline Complex dot(const ComplexVector& u, const ComplexVector& v) {
  if (u.dim() != v.dim()) throw ContractError("dot: dimension mismatch");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < u.dim(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

inline ComplexVector conj(const ComplexVector& v) {
  ComplexVector out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = std::conj(v[i]);
  return out;
}

class ComplexMatrix {
public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static ComplexMatrix diagonal(std::initializer_list<double> d) {
    std::vector<double> v(d);
    return diagonal(std::span<const double>(v));
  }

  /// Rows of the result are the given vectors.
  static ComplexMatrix from_rows(std::span<const ComplexVector> rows) {
    if (rows.empty()) return {};
    ComplexMatrix m(rows.size(), rows.front().dim());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].dim() != m.cols_) throw ContractError("from_rows: ragged rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * m.cols_);
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Complex> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Complex> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  ComplexVector row_vector(std::size_t i) const {
    auto r = row(i);
    return ComplexVector(std::vector<Complex>(r.begin(), r.end()));
  }
  ComplexVector column(std::size_t j) const {
    ComplexVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
  }

  double frobenius_norm() const noexcept {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  std::vector<double> real_diagonal() const {
    std::vector<double> d(std::min(rows_, cols_));
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (*this)(i, i).real();
    return d;
  }

  /// Leading principal block.
  ComplexMatrix leading_block(std::size_t n) const {
    if (n > rows_ || n > cols_) throw ContractError("leading_block out of range");
    ComplexMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = (*this)(i, j);
    return b;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ComplexMatrix& operator*=(Complex a) {
    for (auto& z : data_) z *= a;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_)
      throw ContractError("matrix product shape mismatch: " + std::to_string(a.rows_) + "x" +
                          std::to_string(a.cols_) + " * " + std::to_string(b.rows_) + "x" +
                          std::to_string(b.cols_));
    ComplexMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      Complex* ci = c.data_.data() + i * c.cols_;
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{0.0, 0.0}) continue;
        const Complex* bk = b.data_.data() + k * b.cols_;
        for (std::size_t j = 0; j < b.cols_; ++j) ci[j] += aik * bk[j];
      }
    }
    return c;
  }

  friend ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& x) {
    if (a.cols_ != x.dim()) throw ContractError("matrix-vector shape mismatch");
    ComplexVector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      Complex s{0.0, 0.0};
      const Complex* ai = a.data_.data() + i * a.cols_;
      for (std::size_t j = 0; j < a.cols_; ++j) s += ai[j] * x[j];
      y[i] = s;
    }
    return y;
  }

private:
  void check_same(const ComplexMatrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw ContractError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// ||m - m*||_F / ||m||_F (0 for the zero matrix).
inline double hermitian_residual(const ComplexMatrix& m) {
  if (!m.square()) return std::numeric_limits<double>::infinity();
  double diff = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) diff += std::norm(m(i, j) - std::conj(m(j, i)));
  const double scale = m.frobenius_norm();
  return scale == 0.0 ? 0.0 : std::sqrt(diff) / scale;
}

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kDefaultRankTolerance = 1e-12;

inline void require_hermitian(const ComplexMatrix& m, const char* op) {
  if (!m.square())
    throw ContractError(std::string(op) + ": matrix is not square (" + std::to_string(m.rows()) +
                        "x" + std::to_string(m.cols()) + ")");
  const double r = hermitian_residual(m);
  if (r > kHermitianTolerance)
    throw ContractError(std::string(op) + ": matrix is not Hermitian, symmetry residual " +
                        std::to_string(r));
}

/// (m + m*) / 2
inline ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  if (!m.square()) throw ContractError("hermitian_part: non-square matrix");
  ComplexMatrix h(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return h;
}

struct HermitianEig {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are eigenvectors
};

namespace detail {

// Parameters of the 2x2 unitary rotation J = [[c, s e], [-s conj(e), c]] that
// annihilates the off-diagonal entry `off` of [[app, off], [conj(off), aqq]].
struct Rotation {
  double c;
  double s;
  Complex e;
  double t;
};

inline Rotation jacobi_rotation(double app, double aqq, Complex off) {
  const double r = std::abs(off);
  const Complex e = off / r;
  const double tau = (aqq - app) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, t * c, e, t};
}

}  // namespace detail

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
inline HermitianEig hermitian_eig(const ComplexMatrix& m) {
  require_hermitian(m, "hermitian_eig");
  const std::size_t n = m.rows();
  ComplexMatrix a = hermitian_part(m);
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = a.frobenius_norm();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) <= std::numeric_limits<double>::epsilon() * scale) break;
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Negligible relative to both diagonal entries: drop it.
        if (sweep > 3 && std::abs(app) + 100.0 * r == std::abs(app) &&
            std::abs(aqq) + 100.0 * r == std::abs(aqq)) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const auto rot = detail::jacobi_rotation(app, aqq, apq);
        const Complex se = rot.s * rot.e;
        const Complex sec = rot.s * std::conj(rot.e);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = rot.c * akp - sec * akq;
          a(k, q) = se * akp + rot.c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = rot.c * apk - se * aqk;
          a(q, k) = sec * apk + rot.c * aqk;
        }
        a(p, p) = app - rot.t * r;
        a(q, q) = aqq + rot.t * r;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = rot.c * vkp - sec * vkq;
          v(k, q) = se * vkp + rot.c * vkq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });
  HermitianEig out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  return hermitian_eig(m).values;
}

/// Thin singular value decomposition m = U diag(s) V*, s descending.
struct Svd {
  ComplexMatrix u;  // rows x k
  std::vector<double> s;
  ComplexMatrix v;  // cols x k
};

namespace detail {

// One-sided (Hestenes) Jacobi on the columns of m, rows >= cols.
inline Svd svd_tall(const ComplexMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  // w holds the columns of m as rows for contiguous access.
  ComplexMatrix w = m.adjoint();
  for (std::size_t j = 0; j < n; ++j)
    for (auto& z : w.row(j)) z = std::conj(z);
  ComplexMatrix vt = ComplexMatrix::identity(n);  // rows are columns of V

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        auto wp = w.row(p);
        auto wq = w.row(q);
        double alpha = 0.0, beta = 0.0;
        Complex gamma{0.0, 0.0};
        for (std::size_t i = 0; i < rows; ++i) {
          alpha += std::norm(wp[i]);
          beta += std::norm(wq[i]);
          gamma += std::conj(wp[i]) * wq[i];
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const auto rot = jacobi_rotation(alpha, beta, gamma);
        const Complex se = rot.s * rot.e;
        const Complex sec = rot.s * std::conj(rot.e);
        for (std::size_t i = 0; i < rows; ++i) {
          const Complex x = wp[i];
          const Complex y = wq[i];
          wp[i] = rot.c * x - sec * y;
          wq[i] = se * x + rot.c * y;
        }
        auto vp = vt.row(p);
        auto vq = vt.row(q);
        for (std::size_t i = 0; i < n; ++i) {
          const Complex x = vp[i];
          const Complex y = vq[i];
          vp[i] = rot.c * x - sec * y;
          vq[i] = se * x + rot.c * y;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (const auto& z : w.row(j)) s += std::norm(z);
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  Svd out{ComplexMatrix(rows, n), std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.s[k] = sigma[j];
    const auto wj = w.row(j);
    for (std::size_t i = 0; i < rows; ++i)
      out.u(i, k) = sigma[j] > 0.0 ? wj[i] / sigma[j] : Complex{0.0, 0.0};
    const auto vj = vt.row(j);
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = vj[i];
  }
  return out;
}

}  // namespace detail

inline Svd svd(const ComplexMatrix& m) {
  if (m.rows() >= m.cols()) return detail::svd_tall(m);
  Svd t = detail::svd_tall(m.adjoint());
  return {std::move(t.v), std::move(t.s), std::move(t.u)};
}

inline std::vector<double> singular_values(const ComplexMatrix& m) { return svd(m).s; }

/// Moore-Penrose pseudo-inverse. Singular values at or below
/// rank_tol * sigma_max are treated as zero.
inline ComplexMatrix pinv(const ComplexMatrix& m, double rank_tol = kDefaultRankTolerance) {
  if (!(rank_tol > 0.0)) throw ContractError("pinv: rank_tol must be positive");
  const Svd d = svd(m);
  ComplexMatrix out(m.cols(), m.rows());
  if (d.s.empty() || d.s.front() == 0.0) return out;
  const double cut = rank_tol * d.s.front();
  for (std::size_t k = 0; k < d.s.size(); ++k) {
    if (d.s[k] <= cut) break;
    const double inv = 1.0 / d.s[k];
    for (std::size_t i = 0; i < m.cols(); ++i) {
      const Complex vik = d.v(i, k) * inv;
      if (vik == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < m.rows(); ++j) out(i, j) += vik * std::conj(d.u(j, k));
    }
  }
  return out;
}

/// Number of singular values above rank_tol * sigma_max.
inline std::size_t numerical_rank(const ComplexMatrix& m, double rank_tol = kDefaultRankTolerance) {
  const auto s = singular_values(m);
  if (s.empty() || s.front() == 0.0) return 0;
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [&](double x) { return x > rank_tol * s.front(); }));
}

inline double op_norm(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return svd(m).s.front();
}

/// sigma_max / sigma_min; infinite for rank-deficient input.
inline double condition_number(const ComplexMatrix& m) {
  const auto s = singular_values(m);
  if (s.empty()) return 1.0;
  if (s.back() == 0.0) return std::numeric_limits<double>::infinity();
  return s.front() / s.back();
}

/// Unique Hermitian PSD square root.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const HermitianEig e = hermitian_eig(m);
  const std::size_t n = m.rows();
  if (n == 0) return {};
  const double lmax = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
  if (e.values.front() < -kPsdTolerance * lmax) throw PsdViolation(e.values.front(), lmax);
  ComplexMatrix r(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double root = std::sqrt(std::max(e.values[k], 0.0));
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = e.vectors(i, k) * root;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * std::conj(e.vectors(j, k));
    }
  }
  return hermitian_part(r);
}

/// LU factorisation with partial pivoting, P A = L U.
class LuDecomposition {
public:
  explicit LuDecomposition(ComplexMatrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
    if (!lu_.square()) throw ContractError("LU: non-square matrix");
    const std::size_t n = lu_.rows();
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      double best = std::abs(lu_(k, k));
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::abs(lu_(i, k)) > best) best = std::abs(lu_(i, k)), piv = i;
      if (best == 0.0) {
        singular_ = true;
        continue;
      }
      if (piv != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
        std::swap(perm_[k], perm_[piv]);
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        const Complex f = lu_(i, k) / lu_(k, k);
        lu_(i, k) = f;
        if (f == Complex{0.0, 0.0}) continue;
        for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
      }
    }
  }

  bool singular() const noexcept { return singular_; }

  ComplexVector solve(const ComplexVector& b) const {
    if (singular_) throw ConditioningError(std::numeric_limits<double>::infinity(),
                                           "LU solve on a singular matrix");
    const std::size_t n = lu_.rows();
    if (b.dim() != n) throw ContractError("LU solve: dimension mismatch");
    ComplexVector x(n);
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = b[perm_[i]];
      for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
      x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      Complex s = x[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
      x[i] = s / lu_(i, i);
    }
    return x;
  }

  ComplexMatrix solve(const ComplexMatrix& b) const {
    ComplexMatrix x(b.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
      const auto col = solve(b.column(j));
      for (std::size_t i = 0; i < b.rows(); ++i) x(i, j) = col[i];
    }
    return x;
  }

private:
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;
  bool singular_ = false;
};

inline ComplexMatrix inverse(const ComplexMatrix& a) {
  return LuDecomposition(a).solve(ComplexMatrix::identity(a.rows()));
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ContractError("shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace frlab
