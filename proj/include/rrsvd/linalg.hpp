#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <utility>
#include <vector>

#include "rrsvd/errors.hpp"

namespace rrsvd {

/// Tolerances shared across the library. All sit far above double-precision
/// noise for the matrix sizes in scope (n up to ~16).
namespace tol {
inline constexpr double jacobi = 1e-12;  // relative off-diagonal Gram residual
inline constexpr double orth = 1e-9;     // orthonormality slack
inline constexpr double recon = 1e-9;    // reconstruction slack, relative
inline constexpr double sign = 1e-9;     // nonnegativity slack for the dominant pair
inline constexpr double oracle = 1e-6;   // slack against independent oracles
inline constexpr int max_sweeps = 64;
}  // namespace tol

/// Dense row-major matrix of doubles. Shapes are at least 1x1 and entries
/// are validated finite when constructed from data.
class DenseMatrix {
public:
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0) throw ShapeError("matrix dimensions must be at least 1x1");
  }

  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw ShapeError("matrix dimensions must be at least 1x1");
    if (entries_.size() != rows * cols)
      throw ShapeError("entry count does not match matrix dimensions");
    for (double x : entries_)
      if (!std::isfinite(x)) throw ShapeError("matrix entries must be finite");
  }

  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    if (rows.size() == 0) throw ShapeError("matrix dimensions must be at least 1x1");
    const std::size_t cols = rows.begin()->size();
    std::vector<double> data;
    data.reserve(rows.size() * cols);
    for (const auto& row : rows) {
      if (row.size() != cols) throw ShapeError("rows must all have the same length");
      data.insert(data.end(), row.begin(), row.end());
    }
    return DenseMatrix(rows.size(), cols, std::move(data));
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  const std::vector<double>& entries() const noexcept { return entries_; }

  DenseMatrix transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<double> column(std::size_t j) const {
    std::vector<double> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void set_column(std::size_t j, const std::vector<double>& c) {
    if (c.size() != rows_) throw ShapeError("column length does not match row count");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
};

inline DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("matrix addition requires equal shapes");
  DenseMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

inline DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("matrix subtraction requires equal shapes");
  DenseMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

/// Standard matrix product; throws ShapeError when inner dimensions differ.
inline DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("matrix product requires a.cols == b.rows");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline DenseMatrix operator*(double s, const DenseMatrix& a) {
  DenseMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

inline double frobenius_norm(const DenseMatrix& a) {
  double sum = 0.0;
  for (double x : a.entries()) sum += x * x;
  return std::sqrt(sum);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ShapeError("dot product requires equal lengths");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

inline double l2_norm(const std::vector<double>& v) { return std::sqrt(dot(v, v)); }

/// sigma * u * v^T, the rank-one building block of the decomposition.
/// Expects sigma >= 0 and unit u, v; does not itself enforce them.
inline DenseMatrix rank_one(double sigma, const std::vector<double>& u,
                            const std::vector<double>& v) {
  DenseMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = sigma * u[i] * v[j];
  return m;
}

/// Result of a full singular value decomposition A = U D V^T.
///
/// Columns of `u` and `v` are the left/right singular vectors, in the order
/// of the non-increasing `sigma`. Both column sets are orthonormal and the
/// sum of sigma_i * u_i * v_i^T reconstructs the input. `rank_hint` counts
/// singular values above tol::recon relative to the largest.
struct SvdResult {
  DenseMatrix u;
  std::vector<double> sigma;
  DenseMatrix v;
  std::size_t rank_hint = 0;

  std::vector<double> u_column(std::size_t i) const { return u.column(i); }
  std::vector<double> v_column(std::size_t i) const { return v.column(i); }
};

/// Flip each (u_i, v_i) pair so the largest-magnitude entry of u_i is
/// positive; ties on magnitude go to the lowest index. Flips are applied to
/// both vectors at once, so every rank-one term is unchanged.
inline SvdResult sign_normalize(SvdResult s) {
  for (std::size_t j = 0; j < s.sigma.size(); ++j) {
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < s.u.rows(); ++i) {
      const double mag = std::abs(s.u(i, j));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if (s.u(arg, j) < 0.0) {
      for (std::size_t i = 0; i < s.u.rows(); ++i) s.u(i, j) = -s.u(i, j);
      for (std::size_t i = 0; i < s.v.rows(); ++i) s.v(i, j) = -s.v(i, j);
    }
  }
  return s;
}

struct SvdOptions {
  double gram_tol = tol::jacobi;
  int max_sweeps = tol::max_sweeps;
};

namespace detail {

// Replace (numerically) zero columns of u with unit vectors orthogonal to
// every other column, drawn from the canonical basis. Keeps U orthonormal
// when the input is rank deficient.
inline void complete_orthonormal(DenseMatrix& u, const std::vector<bool>& needs_fill) {
  const std::size_t m = u.rows();
  const std::size_t k = u.cols();
  for (std::size_t j = 0; j < k; ++j) {
    if (!needs_fill[j]) continue;
    std::vector<double> best_residual;
    double best_norm = -1.0;
    for (std::size_t cand = 0; cand < m; ++cand) {
      std::vector<double> r(m, 0.0);
      r[cand] = 1.0;
      for (std::size_t c = 0; c < k; ++c) {
        if (c == j || (needs_fill[c] && c > j)) continue;  // later holes are still zero
        double proj = 0.0;
        for (std::size_t i = 0; i < m; ++i) proj += r[i] * u(i, c);
        for (std::size_t i = 0; i < m; ++i) r[i] -= proj * u(i, c);
      }
      const double nrm = l2_norm(r);
      if (nrm > best_norm) {
        best_norm = nrm;
        best_residual = std::move(r);
      }
    }
    // second orthogonalization pass for numerical hygiene
    for (std::size_t c = 0; c < k; ++c) {
      if (c == j || (needs_fill[c] && c > j)) continue;
      double proj = 0.0;
      for (std::size_t i = 0; i < m; ++i) proj += best_residual[i] * u(i, c);
      for (std::size_t i = 0; i < m; ++i) best_residual[i] -= proj * u(i, c);
    }
    const double nrm = l2_norm(best_residual);
    for (std::size_t i = 0; i < m; ++i) u(i, j) = best_residual[i] / nrm;
  }
}

}  // namespace detail

/// Full SVD by one-sided Jacobi rotations on columns (cyclic sweeps).
///
/// Columns are rotated pairwise until every off-diagonal entry of the Gram
/// matrix falls below `gram_tol` relative to the participating column norms;
/// the column norms are then the singular values. Results come back sorted
/// by descending sigma and sign-normalized. Throws ConvergenceError when
/// the sweep budget runs out.
inline SvdResult svd(const DenseMatrix& a, const SvdOptions& opts = {}) {
  if (a.rows() < a.cols()) {
    SvdResult t = svd(a.transposed(), opts);
    return SvdResult{std::move(t.v), std::move(t.sigma), std::move(t.u), t.rank_hint};
  }
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  DenseMatrix b = a;
  DenseMatrix v = DenseMatrix::identity(n);

  double worst = 0.0;
  bool converged = false;
  for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
    worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += b(i, p) * b(i, p);
          beta += b(i, q) * b(i, q);
          gamma += b(i, p) * b(i, q);
        }
        const double denom = std::sqrt(alpha * beta);
        if (denom == 0.0) continue;  // zero columns are orthogonal to everything
        const double rel = std::abs(gamma) / denom;
        worst = std::max(worst, rel);
        if (rel <= opts.gram_tol) continue;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double bp = b(i, p), bq = b(i, q);
          b(i, p) = c * bp - s * bq;
          b(i, q) = s * bp + c * bq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    converged = worst <= opts.gram_tol;
  }
  if (!converged && n > 1) throw ConvergenceError(worst, opts.max_sweeps);

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = l2_norm(b.column(j));
  const double sigma_max = *std::max_element(sigma.begin(), sigma.end());

  DenseMatrix u(m, n);
  std::vector<bool> needs_fill(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    if (sigma[j] <= sigma_max * 1e-13 || sigma[j] == 0.0) {
      needs_fill[j] = true;  // direction is noise; rebuilt below
      continue;
    }
    for (std::size_t i = 0; i < m; ++i) u(i, j) = b(i, j) / sigma[j];
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  SvdResult result{DenseMatrix(m, n), std::vector<double>(n), DenseMatrix(n, n), 0};
  std::vector<bool> fill_sorted(n);
  for (std::size_t j = 0; j < n; ++j) {
    result.sigma[j] = sigma[order[j]];
    fill_sorted[j] = needs_fill[order[j]];
    if (!needs_fill[order[j]]) result.u.set_column(j, u.column(order[j]));
    result.v.set_column(j, v.column(order[j]));
  }
  detail::complete_orthonormal(result.u, fill_sorted);

  const double rank_threshold = tol::recon * sigma_max;
  for (double s : result.sigma)
    if (s > rank_threshold) ++result.rank_hint;

  return sign_normalize(std::move(result));
}

/// Sum of the k leading rank-one terms, sigma_i * u_i * v_i^T for i < k.
inline DenseMatrix truncated_sum(const SvdResult& s, std::size_t k) {
  if (k < 1 || k > s.sigma.size())
    throw ParameterError("truncation rank must lie in [1, " + std::to_string(s.sigma.size()) + "]");
  DenseMatrix acc(s.u.rows(), s.v.rows());
  for (std::size_t i = 0; i < k; ++i) {
    const auto ui = s.u_column(i);
    const auto vi = s.v_column(i);
    for (std::size_t r = 0; r < acc.rows(); ++r)
      for (std::size_t c = 0; c < acc.cols(); ++c) acc(r, c) += s.sigma[i] * ui[r] * vi[c];
  }
  return acc;
}

}  // namespace rrsvd
