#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "hstab/errors.hpp"

namespace hstab::numkernel {

using cplx = std::complex<double>;

/// Dense square matrix of complex doubles. Norm conventions follow the
/// normalized trace: hs_norm(identity) = 1 regardless of dimension.
class CMatrix {
public:
  explicit CMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, cplx(0.0, 0.0)) {}

  static CMatrix identity(int n) {
    CMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  static CMatrix from_data(int n, std::vector<cplx> data) {
    CMatrix m(n);
    if (data.size() != static_cast<size_t>(n) * n)
      throw std::invalid_argument("CMatrix::from_data: size mismatch");
    m.a_ = std::move(data);
    m.ensure_finite();
    return m;
  }

  int dim() const { return n_; }

  cplx& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const cplx& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

  const std::vector<cplx>& data() const { return a_; }

  friend CMatrix operator*(const CMatrix& x, const CMatrix& y) {
    check_dims(x, y);
    CMatrix r(x.n_);
    const int n = x.n_;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const cplx xik = x.at(i, k);
        if (xik == 0.0) continue;
        const cplx* yk = &y.a_[static_cast<size_t>(k) * n];
        cplx* ri = &r.a_[static_cast<size_t>(i) * n];
        for (int j = 0; j < n; ++j) ri[j] += xik * yk[j];
      }
    return r;
  }

  friend CMatrix operator+(const CMatrix& x, const CMatrix& y) {
    check_dims(x, y);
    CMatrix r = x;
    for (size_t t = 0; t < r.a_.size(); ++t) r.a_[t] += y.a_[t];
    return r;
  }

  friend CMatrix operator-(const CMatrix& x, const CMatrix& y) {
    check_dims(x, y);
    CMatrix r = x;
    for (size_t t = 0; t < r.a_.size(); ++t) r.a_[t] -= y.a_[t];
    return r;
  }

  CMatrix scaled(cplx s) const {
    CMatrix r = *this;
    for (cplx& v : r.a_) v *= s;
    return r;
  }

  CMatrix adjoint() const {
    CMatrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (int i = 0; i < n_; ++i) t += at(i, i);
    return t;
  }

  cplx normalized_trace() const { return trace() / static_cast<double>(n_); }

  void apply(const cplx* x, cplx* y) const { // y = A x
    for (int i = 0; i < n_; ++i) {
      cplx acc = 0.0;
      const cplx* row = &a_[static_cast<size_t>(i) * n_];
      for (int j = 0; j < n_; ++j) acc += row[j] * x[j];
      y[i] = acc;
    }
  }

  void apply_adjoint(const cplx* x, cplx* y) const { // y = A* x
    for (int i = 0; i < n_; ++i) y[i] = 0.0;
    for (int i = 0; i < n_; ++i) {
      const cplx* row = &a_[static_cast<size_t>(i) * n_];
      const cplx xi = std::conj(x[i]);
      for (int j = 0; j < n_; ++j) y[j] += std::conj(row[j] * xi);
    }
  }

  void ensure_finite() const {
    for (const cplx& v : a_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DomainError("CMatrix: non-finite entry");
  }

private:
  static void check_dims(const CMatrix& x, const CMatrix& y) {
    if (x.n_ != y.n_) throw std::invalid_argument("CMatrix: dimension mismatch");
  }

  int n_;
  std::vector<cplx> a_;
};

/// Normalized Hilbert-Schmidt norm: sqrt(Tr_n(A*A)) = Frobenius / sqrt(n).
inline double hs_norm(const CMatrix& a) {
  double s = 0.0;
  for (const cplx& v : a.data()) s += std::norm(v);
  return std::sqrt(s / a.dim());
}

struct OpNormResult {
  double value = 0.0;
  bool converged = true;
};

/// Largest singular value by power iteration on A*A. Deterministic start:
/// the normalized all-ones vector; if an iterate collapses to exactly zero
/// (the start can sit in the kernel, e.g. for differences of permutation
/// matrices, whose rows sum to zero), restart from the next canonical basis
/// vector. Relative tolerance on the Rayleigh quotient; iteration cap 10^4.
inline OpNormResult op_norm(const CMatrix& a, double tol = 1e-8, int max_iters = 10000) {
  const int n = a.dim();
  if (n == 0) return {0.0, true};
  std::vector<cplx> v(n, cplx(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
  std::vector<cplx> w(n), u(n);
  int restarts = 0;
  double lambda = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    a.apply(v.data(), w.data());
    a.apply_adjoint(w.data(), u.data());
    double nrm = 0.0;
    for (const cplx& x : u) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) {
      if (restarts >= n) return {0.0, true}; // A*A annihilates a full basis
      for (cplx& x : v) x = 0.0;
      v[restarts++] = 1.0;
      lambda = 0.0;
      continue;
    }
    double wnorm2 = 0.0; // Rayleigh quotient v*(A*A)v = |Av|^2 for unit v
    for (const cplx& x : w) wnorm2 += std::norm(x);
    for (int i = 0; i < n; ++i) v[i] = u[i] / nrm;
    if (it > 0 && std::abs(wnorm2 - lambda) <= tol * std::max(wnorm2, 1e-300)) {
      return {std::sqrt(wnorm2), true};
    }
    lambda = wnorm2;
  }
  return {std::sqrt(lambda), false};
}

// ---------------------------------------------------------------------------
// LU machinery (partial pivoting)
// ---------------------------------------------------------------------------

struct LUDecomposition {
  CMatrix lu;
  std::vector<int> piv;
  bool singular = false;

  explicit LUDecomposition(int n) : lu(n), piv(static_cast<size_t>(n)) {}
};

inline LUDecomposition lu_factor(const CMatrix& a) {
  const int n = a.dim();
  LUDecomposition d(n);
  d.lu = a;
  for (int i = 0; i < n; ++i) d.piv[static_cast<size_t>(i)] = i;
  for (int k = 0; k < n; ++k) {
    int pr = k;
    double best = std::abs(d.lu.at(k, k));
    for (int i = k + 1; i < n; ++i)
      if (std::abs(d.lu.at(i, k)) > best) {
        best = std::abs(d.lu.at(i, k));
        pr = i;
      }
    if (best == 0.0) {
      d.singular = true;
      return d;
    }
    if (pr != k) {
      for (int j = 0; j < n; ++j) std::swap(d.lu.at(k, j), d.lu.at(pr, j));
      std::swap(d.piv[static_cast<size_t>(k)], d.piv[static_cast<size_t>(pr)]);
    }
    const cplx pivot = d.lu.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      cplx f = d.lu.at(i, k) / pivot;
      d.lu.at(i, k) = f;
      if (f == 0.0) continue;
      for (int j = k + 1; j < n; ++j) d.lu.at(i, j) -= f * d.lu.at(k, j);
    }
  }
  return d;
}

inline void lu_solve(const LUDecomposition& d, const cplx* b, cplx* x) {
  const int n = d.lu.dim();
  for (int i = 0; i < n; ++i) x[i] = b[d.piv[static_cast<size_t>(i)]];
  for (int i = 1; i < n; ++i)
    for (int k = 0; k < i; ++k) x[i] -= d.lu.at(i, k) * x[k];
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) x[i] -= d.lu.at(i, k) * x[k];
    x[i] /= d.lu.at(i, i);
  }
}

/// Inverse via partial-pivoted elimination. Throws DomainError on an exactly
/// singular pivot.
inline CMatrix inverse(const CMatrix& a) {
  LUDecomposition d = lu_factor(a);
  if (d.singular) throw DomainError("inverse: singular matrix");
  const int n = a.dim();
  CMatrix r(n);
  std::vector<cplx> b(n), x(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) b[static_cast<size_t>(i)] = (i == j) ? 1.0 : 0.0;
    lu_solve(d, b.data(), x.data());
    for (int i = 0; i < n; ++i) r.at(i, j) = x[static_cast<size_t>(i)];
  }
  return r;
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition (cyclic Jacobi with exact 2x2 diagonalization)
// ---------------------------------------------------------------------------

struct HermEig {
  std::vector<double> values; // ascending
  CMatrix vectors;            // columns; H = V diag(values) V*

  explicit HermEig(int n) : values(static_cast<size_t>(n)), vectors(n) {}
};

/// Jacobi eigendecomposition of a Hermitian matrix. Each rotation
/// diagonalizes one 2x2 principal block exactly (closed-form eigenvectors of
/// [[a, h], [conj h, b]]); sweeps run until the off-diagonal mass is below
/// tol * ||H||_F.
inline HermEig hermitian_eig(const CMatrix& h_in, double tol = 1e-13, int max_sweeps = 60) {
  const int n = h_in.dim();
  CMatrix h = h_in;
  CMatrix v = CMatrix::identity(n);
  double fro = 0.0;
  for (const cplx& x : h.data()) fro += std::norm(x);
  fro = std::sqrt(fro);
  const double off_target = tol * std::max(fro, 1e-300);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * std::norm(h.at(i, j));
    if (std::sqrt(off) <= off_target) break;

    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const cplx hpq = h.at(p, q);
        if (std::abs(hpq) <= off_target / (n * n + 1.0)) continue;
        const double app = h.at(p, p).real();
        const double aqq = h.at(q, q).real();
        const double d = 0.5 * (aqq - app);
        const double habs2 = std::norm(hpq);
        const double rad = std::hypot(d, std::abs(hpq));
        // eigenvector (hpq, y) of the 2x2 block for the root nearest app:
        // |y| <= |hpq| keeps the rotation angle below pi/4 (required for
        // Jacobi convergence); the quotient form avoids cancellation.
        const double y = d >= 0 ? -habs2 / (d + rad) : habs2 / (rad - d);
        const double nrm = std::sqrt(habs2 + y * y);
        const cplx c1 = hpq / nrm;
        const double c2 = y / nrm;
        // columns of the plane rotation: (c1, c2) and (-c2, conj c1)
        for (int i = 0; i < n; ++i) { // H <- J* H J, applied to columns then rows
          const cplx hip = h.at(i, p), hiq = h.at(i, q);
          h.at(i, p) = hip * c1 + hiq * c2;
          h.at(i, q) = -hip * c2 + hiq * std::conj(c1);
        }
        for (int j = 0; j < n; ++j) {
          const cplx hpj = h.at(p, j), hqj = h.at(q, j);
          h.at(p, j) = std::conj(c1) * hpj + c2 * hqj;
          h.at(q, j) = -c2 * hpj + c1 * hqj;
        }
        for (int i = 0; i < n; ++i) {
          const cplx vip = v.at(i, p), viq = v.at(i, q);
          v.at(i, p) = vip * c1 + viq * c2;
          v.at(i, q) = -vip * c2 + viq * std::conj(c1);
        }
      }
  }

  HermEig out(n);
  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
  std::vector<double> diag(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) diag[static_cast<size_t>(i)] = h.at(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return diag[static_cast<size_t>(x)] < diag[static_cast<size_t>(y)]; });
  for (int k = 0; k < n; ++k) {
    int src = order[static_cast<size_t>(k)];
    out.values[static_cast<size_t>(k)] = diag[static_cast<size_t>(src)];
    for (int i = 0; i < n; ++i) out.vectors.at(i, k) = v.at(i, src);
  }
  return out;
}

namespace detail {

/// Singular values below this laterally indistinguishable from exact zeros:
/// a true zero eigenvalue of the formed Gram matrix A*A perturbs by about
/// n * eps * lambda_max, i.e. sqrt of that in singular-value scale.
inline double sigma_noise_floor(double sigma_max) { return 2e-7 * sigma_max; }

} // namespace detail

/// |A| = (A*A)^{1/2} through the Hermitian eigendecomposition. Singular
/// values under the Gram noise floor are flattened to exact zeros.
inline CMatrix absolute_value(const CMatrix& a) {
  HermEig eig = hermitian_eig(a.adjoint() * a);
  const int n = a.dim();
  double smax = 0.0;
  for (double v : eig.values) smax = std::max(smax, std::sqrt(std::max(v, 0.0)));
  const double floor = detail::sigma_noise_floor(smax);
  CMatrix r(n);
  for (int k = 0; k < n; ++k) {
    double s = std::sqrt(std::max(eig.values[static_cast<size_t>(k)], 0.0));
    if (s <= floor) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        r.at(i, j) += s * eig.vectors.at(i, k) * std::conj(eig.vectors.at(j, k));
  }
  return r;
}

namespace detail {

/// Smallest singular value estimate via inverse power iteration on
/// (A*A)^{-1} (two triangular solves per step through the LU of A and A*).
/// Returns 0 when the LU factorization hits an exactly zero pivot.
inline double smallest_singular_value(const CMatrix& a, int iters = 200, double tol = 1e-6) {
  LUDecomposition lu_a = lu_factor(a);
  if (lu_a.singular) return 0.0;
  LUDecomposition lu_ah = lu_factor(a.adjoint());
  if (lu_ah.singular) return 0.0;
  const int n = a.dim();
  std::vector<cplx> v(static_cast<size_t>(n), cplx(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
  std::vector<cplx> t(static_cast<size_t>(n)), u(static_cast<size_t>(n));
  double lambda = 0.0;
  int restarts = 0;
  for (int it = 0; it < iters; ++it) {
    lu_solve(lu_ah, v.data(), t.data()); // t = A^-* v
    lu_solve(lu_a, t.data(), u.data());  // u = A^-1 A^-* v
    double nrm = 0.0;
    for (const cplx& x : u) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) {
      if (restarts >= n) return 0.0;
      for (cplx& x : v) x = 0.0;
      v[static_cast<size_t>(restarts++)] = 1.0;
      lambda = 0.0;
      continue;
    }
    double lam_new = nrm; // |(A*A)^{-1} v| for unit v
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = u[static_cast<size_t>(i)] / nrm;
    if (it > 0 && std::abs(lam_new - lambda) <= tol * lam_new)
      return 1.0 / std::sqrt(lam_new);
    lambda = lam_new;
  }
  return lambda > 0.0 ? 1.0 / std::sqrt(lambda) : 0.0;
}

} // namespace detail

/// Unitary factor of the polar decomposition A = U |A|.
///
/// Invertible branch (smallest singular value > tol * largest): Newton
/// iteration X <- (X + X^-*)/2, quadratically convergent, run to 1e-12.
/// Singular branch: the canonical completion. With A w_i = s_i u_i from the
/// eigendecomposition of A*A, U maps w_i to u_i on the range and matches the
/// remaining eigenvectors (kernel, ascending eigenvalue order) to the
/// orthonormal complement of the u_i, built from canonical basis vectors in
/// ascending index order. Always satisfies U*U = I and U|A| = A to 1e-10.
inline CMatrix polar_unitary(const CMatrix& a, double tol = 1e-10) {
  const int n = a.dim();
  OpNormResult top = op_norm(a, 1e-10);
  if (top.value == 0.0) return CMatrix::identity(n); // |A| = 0; canonical choice

  const double smin = detail::smallest_singular_value(a);
  if (smin > tol * top.value) {
    CMatrix x = a;
    for (int it = 0; it < 100; ++it) {
      CMatrix next = (x + inverse(x).adjoint()).scaled(0.5);
      double delta = hs_norm(next - x);
      x = next;
      if (delta <= 1e-12) break;
    }
    return x;
  }

  // Completion branch.
  HermEig eig = hermitian_eig(a.adjoint() * a);
  const double cutoff = std::max(tol * top.value, detail::sigma_noise_floor(top.value));
  CMatrix u(n);
  std::vector<std::vector<cplx>> range_basis; // u_i = A w_i / s_i
  std::vector<int> kernel_cols;
  for (int k = 0; k < n; ++k) {
    double s = std::sqrt(std::max(eig.values[static_cast<size_t>(k)], 0.0));
    if (s <= cutoff) {
      kernel_cols.push_back(k);
      continue;
    }
    std::vector<cplx> w(static_cast<size_t>(n)), img(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] = eig.vectors.at(i, k);
    a.apply(w.data(), img.data());
    for (cplx& x : img) x /= s;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        u.at(i, j) += img[static_cast<size_t>(i)] * std::conj(eig.vectors.at(j, k));
    range_basis.push_back(std::move(img));
  }

  // Orthonormal complement of the range, from e_1, e_2, ... in order.
  std::vector<std::vector<cplx>> cokernel;
  for (int cand = 0; cand < n && cokernel.size() < kernel_cols.size(); ++cand) {
    std::vector<cplx> vct(static_cast<size_t>(n), 0.0);
    vct[static_cast<size_t>(cand)] = 1.0;
    for (int pass = 0; pass < 2; ++pass) { // re-orthogonalize once for stability
      for (const auto& b : range_basis) {
        cplx ip = 0.0;
        for (int i = 0; i < n; ++i) ip += std::conj(b[static_cast<size_t>(i)]) * vct[static_cast<size_t>(i)];
        for (int i = 0; i < n; ++i) vct[static_cast<size_t>(i)] -= ip * b[static_cast<size_t>(i)];
      }
      for (const auto& b : cokernel) {
        cplx ip = 0.0;
        for (int i = 0; i < n; ++i) ip += std::conj(b[static_cast<size_t>(i)]) * vct[static_cast<size_t>(i)];
        for (int i = 0; i < n; ++i) vct[static_cast<size_t>(i)] -= ip * b[static_cast<size_t>(i)];
      }
    }
    double nrm = 0.0;
    for (const cplx& x : vct) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    if (nrm < 1e-8) continue; // candidate already inside the span
    for (cplx& x : vct) x /= nrm;
    cokernel.push_back(std::move(vct));
  }
  if (cokernel.size() != kernel_cols.size())
    throw DomainError("polar_unitary: completion basis construction failed");

  for (size_t t = 0; t < kernel_cols.size(); ++t) {
    int k = kernel_cols[t];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        u.at(i, j) += cokernel[t][static_cast<size_t>(i)] * std::conj(eig.vectors.at(j, k));
  }
  return u;
}

/// Permutation matrix agreeing with a 0/1 partial permutation on its support;
/// free rows are matched to free columns in ascending index order. Satisfies
/// U |A| = A exactly.
inline CMatrix complete_partial_permutation(const CMatrix& a) {
  const int n = a.dim();
  std::vector<int> row_of_col(static_cast<size_t>(n), -1);
  std::vector<bool> row_used(static_cast<size_t>(n), false);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx v = a.at(i, j);
      if (v == 0.0) continue;
      if (v != cplx(1.0, 0.0))
        throw NotPartialPermutation("entry not in {0,1}");
      if (row_used[static_cast<size_t>(i)] || row_of_col[static_cast<size_t>(j)] != -1)
        throw NotPartialPermutation("more than one 1 in a row or column");
      row_used[static_cast<size_t>(i)] = true;
      row_of_col[static_cast<size_t>(j)] = i;
    }
  std::vector<int> free_rows;
  for (int i = 0; i < n; ++i)
    if (!row_used[static_cast<size_t>(i)]) free_rows.push_back(i);
  CMatrix u(n);
  size_t next_free = 0;
  for (int j = 0; j < n; ++j) {
    int i = row_of_col[static_cast<size_t>(j)];
    if (i == -1) i = free_rows[next_free++];
    u.at(i, j) = 1.0;
  }
  return u;
}

} // namespace hstab::numkernel
