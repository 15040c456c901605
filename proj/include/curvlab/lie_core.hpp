// so(n) / so(n,C) substrate: the map phi, the lexicographic X_ij basis, the
// trace form and its Hermitian extension, structure constants, complex-bilinear
// Gram-Schmidt, and one-parameter boost subgroups of SO(n,C).
//
// Conventions (used by every module downstream):
//   * basis ordering is lexicographic on 0-based pairs (i,j), i < j;
//   * X_ij = phi(e_i ^ e_j) maps e_i to e_j (entry +1 at row j, col i);
//   * <A,B> = -1/2 tr(A B), Hermitian extension <A,B>_H = -1/2 tr(A conj(B)).
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "curvlab/rng.hpp"

namespace curvlab {

using Complex = std::complex<double>;
using RealVec = Eigen::VectorXd;
using CplxVec = Eigen::VectorXcd;
using RealMat = Eigen::MatrixXd;
using CplxMat = Eigen::MatrixXcd;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Pivot with (v,v) = 0 within tolerance; carries the offending position.
struct IsotropicPivot : std::runtime_error {
  explicit IsotropicPivot(int idx)
      : std::runtime_error("isotropic pivot at position " + std::to_string(idx)), index(idx) {}
  int index;
};

inline int so_dim(int n) { return n * (n - 1) / 2; }

struct IndexPair {
  int i, j;
};

/// Lexicographic pair list (0,1),(0,2),...,(n-2,n-1).
inline std::vector<IndexPair> pair_basis(int n) {
  std::vector<IndexPair> ps;
  ps.reserve(so_dim(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) ps.push_back({i, j});
  return ps;
}

inline int pair_index(int n, int i, int j) {
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw std::out_of_range("pair_index");
  if (i > j) std::swap(i, j);
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

/// Complex-bilinear form (u,v) = sum u_k v_k, no conjugation.
inline Complex bilinear(const CplxVec& u, const CplxVec& v) {
  if (u.size() != v.size()) throw DimensionMismatch("bilinear: size mismatch");
  return u.cwiseProduct(v).sum();
}

/// phi(u ^ v): the skew matrix of x -> (u,x) v - (v,x) u.
inline CplxMat phi(const CplxVec& u, const CplxVec& v) {
  if (u.size() != v.size()) throw DimensionMismatch("phi: size mismatch");
  if (u.size() < 2) throw DimensionMismatch("phi: need n >= 2");
  return v * u.transpose() - u * v.transpose();
}

inline RealMat phi_real(const RealVec& u, const RealVec& v) {
  if (u.size() != v.size()) throw DimensionMismatch("phi: size mismatch");
  return v * u.transpose() - u * v.transpose();
}

/// Basis element X_ij (real), i < j not required.
inline RealMat basis_element(int n, int i, int j) {
  RealMat m = RealMat::Zero(n, n);
  m(j, i) = 1.0;
  m(i, j) = -1.0;
  return m;
}

inline std::vector<RealMat> basis_so_n(int n) {
  if (n < 2) throw DimensionMismatch("basis_so_n: need n >= 2");
  std::vector<RealMat> b;
  b.reserve(so_dim(n));
  for (const auto& p : pair_basis(n)) b.push_back(basis_element(n, p.i, p.j));
  return b;
}

/// <A,B> = -1/2 tr(A B) (complex-bilinear branch).
inline Complex inner_bilinear(const CplxMat& a, const CplxMat& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("inner: size mismatch");
  return -0.5 * (a * b).trace();
}

/// <A,B>_H = -1/2 tr(A conj(B)); positive definite on so(n,C).
inline Complex inner_hermitian(const CplxMat& a, const CplxMat& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("inner: size mismatch");
  return -0.5 * (a * b.conjugate()).trace();
}

inline double norm_h_sq(const CplxMat& a) { return 0.5 * a.squaredNorm(); }
inline double norm_h(const CplxMat& a) { return std::sqrt(norm_h_sq(a)); }

/// Coefficients of a skew matrix in the X_ij basis: c_(ij) = X(j,i).
inline CplxVec skew_coefficients(const CplxMat& x) {
  const int n = static_cast<int>(x.rows());
  CplxVec c(so_dim(n));
  int a = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c(a++) = x(j, i);
  return c;
}

inline CplxMat skew_from_coefficients(const CplxVec& c, int n) {
  CplxMat x = CplxMat::Zero(n, n);
  int a = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      x(j, i) = c(a);
      x(i, j) = -c(a);
      ++a;
    }
  return x;
}

inline CplxMat bracket(const CplxMat& a, const CplxMat& b) { return a * b - b * a; }

// Structure constants c_{ab,g} = <[b_a, b_b], b_g> over the lexicographic basis.
// Stored as one antisymmetric d x d matrix per output index g; entries are 0 or +-1.
// Closed form: [X_ij, X_kl] = d_il X_kj + d_jk X_li - d_ik X_lj - d_jl X_ki.
struct StructureConstants {
  int n = 0;
  std::vector<RealMat> c;  // c[g](a,b)

  double operator()(int a, int b, int g) const { return c[g](a, b); }
};

inline StructureConstants structure_constants(int n) {
  if (n < 2) throw DimensionMismatch("structure_constants: need n >= 2");
  const int d = so_dim(n);
  StructureConstants sc;
  sc.n = n;
  sc.c.assign(d, RealMat::Zero(d, d));
  const auto pairs = pair_basis(n);
  auto add = [&](int a, int b, int p, int q, double s) {
    if (p == q) return;
    if (p < q) {
      sc.c[pair_index(n, p, q)](a, b) += s;
    } else {
      sc.c[pair_index(n, q, p)](a, b) -= s;
    }
  };
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const int i = pairs[a].i, j = pairs[a].j;
      const int k = pairs[b].i, l = pairs[b].j;
      if (i == l) add(a, b, k, j, 1.0);
      if (j == k) add(a, b, l, i, 1.0);
      if (i == k) add(a, b, l, j, -1.0);
      if (j == l) add(a, b, k, i, -1.0);
    }
  }
  return sc;
}

/// Gram-Schmidt for the complex-bilinear form; output satisfies (w_i,w_j) = d_ij.
/// Throws IsotropicPivot when a pivot has |(v,v)| below iso_tol * ||v||_h^2.
inline std::vector<CplxVec> gram_schmidt_bilinear(std::vector<CplxVec> vs,
                                                  double iso_tol = 1e-12) {
  std::vector<CplxVec> ws;
  ws.reserve(vs.size());
  for (int k = 0; k < static_cast<int>(vs.size()); ++k) {
    CplxVec w = vs[k];
    for (const auto& prev : ws) w -= bilinear(prev, w) * prev;
    const double hn = w.squaredNorm();
    if (hn == 0.0) throw IsotropicPivot(k);
    const Complex q = bilinear(w, w);
    if (std::abs(q) <= iso_tol * hn) throw IsotropicPivot(k);
    ws.push_back(w / std::sqrt(q));
  }
  return ws;
}

/// Retry wrapper: perturbs an isotropic pivot by delta * e_m (delta = 1e-6 ||v||,
/// m cycling through coordinates), up to three attempts per pivot.
inline std::vector<CplxVec> gram_schmidt_perturbed(std::vector<CplxVec> vs,
                                                   double iso_tol = 1e-12) {
  const int n = vs.empty() ? 0 : static_cast<int>(vs[0].size());
  for (int attempt = 0; attempt <= 3; ++attempt) {
    try {
      return gram_schmidt_bilinear(vs, iso_tol);
    } catch (const IsotropicPivot& p) {
      if (attempt == 3) throw;
      const int m = attempt % n;
      const double delta = 1e-6 * std::max(vs[p.index].norm(), 1.0);
      vs[p.index](m) += delta;
    }
  }
  return {};  // unreachable
}

/// Extends `given` (assumed (,)-orthonormal) to a full (,)-orthonormal basis of C^n.
inline std::vector<CplxVec> complete_bilinear_basis(const std::vector<CplxVec>& given,
                                                    std::mt19937_64& eng) {
  if (given.empty()) throw std::invalid_argument("complete_bilinear_basis: empty seed");
  const int n = static_cast<int>(given[0].size());
  std::vector<CplxVec> ws = given;
  int guard = 0;
  while (static_cast<int>(ws.size()) < n) {
    CplxVec cand = (guard < n) ? CplxVec(CplxVec::Unit(n, guard)) : random_complex_vector(eng, n);
    ++guard;
    if (guard > 8 * n) throw std::runtime_error("complete_bilinear_basis: no progress");
    CplxVec w = cand;
    for (const auto& prev : ws) w -= bilinear(prev, w) * prev;
    if (w.norm() < 1e-8 * cand.norm()) continue;
    const Complex q = bilinear(w, w);
    if (std::abs(q) <= 1e-10 * w.squaredNorm()) {
      // isotropic leftover; nudge and retry per the perturbation policy
      std::vector<CplxVec> trial = ws;
      trial.push_back(cand);
      try {
        trial = gram_schmidt_perturbed(trial);
        ws.push_back(trial.back());
      } catch (const IsotropicPivot&) {
        continue;
      }
      continue;
    }
    ws.push_back(w / std::sqrt(q));
  }
  return ws;
}

/// Residual of P being complex orthogonal: ||P^T P - I||.
inline double orthogonality_residual(const CplxMat& p) {
  const int n = static_cast<int>(p.rows());
  return (p.transpose() * p - CplxMat::Identity(n, n)).norm();
}

inline bool is_special_orthogonal(const CplxMat& p, double tol = 1e-10) {
  return orthogonality_residual(p) <= tol && std::abs(p.determinant() - 1.0) <= tol;
}

/// One-parameter boost exp(i t phi(f1 ^ f2)) in SO(n,C):
/// f1 -> cosh(t) f1 + i sinh(t) f2,  f2 -> cosh(t) f2 - i sinh(t) f1,
/// identity on the (,)-orthogonal complement. Requires (f1,f1) = (f2,f2) = 1,
/// (f1,f2) = 0; real orthonormal inputs satisfy this.
inline CplxMat boost(const CplxVec& f1, const CplxVec& f2, double t, double pre_tol = 1e-8) {
  if (f1.size() != f2.size()) throw DimensionMismatch("boost: size mismatch");
  if (std::abs(bilinear(f1, f1) - 1.0) > pre_tol || std::abs(bilinear(f2, f2) - 1.0) > pre_tol ||
      std::abs(bilinear(f1, f2)) > pre_tol)
    throw std::invalid_argument("boost: frame not (,)-orthonormal");
  const int n = static_cast<int>(f1.size());
  const double ch = std::cosh(t), sh = std::sinh(t);
  CplxMat p = CplxMat::Identity(n, n);
  p += (ch - 1.0) * (f1 * f1.transpose() + f2 * f2.transpose());
  p += Complex(0.0, sh) * (f2 * f1.transpose() - f1 * f2.transpose());
  return p;
}

inline CplxMat boost(const RealVec& f1, const RealVec& f2, double t) {
  return boost(CplxVec(f1.cast<Complex>()), CplxVec(f2.cast<Complex>()), t);
}

/// Numerically nilpotent test helper: degree of the minimal polynomial via
/// Krylov ranks (relative singular-value threshold).
inline int minimal_polynomial_degree(const CplxMat& x, std::mt19937_64& eng,
                                     double rel_tol = 1e-6) {
  const int n = static_cast<int>(x.rows());
  int best = 1;
  for (int trial = 0; trial < 3; ++trial) {
    CplxVec w = random_complex_vector(eng, n);
    CplxMat krylov(n, n + 1);
    CplxVec cur = w;
    for (int k = 0; k <= n; ++k) {
      krylov.col(k) = cur;
      cur = x * cur;
    }
    for (int p = 1; p <= n; ++p) {
      Eigen::JacobiSVD<CplxMat> svd(krylov.leftCols(p + 1));
      const auto& s = svd.singularValues();
      if (s(p) <= rel_tol * s(0)) {
        best = std::max(best, p);
        break;
      }
      if (p == n) best = n;
    }
  }
  return best;
}

/// Numerical rank with relative threshold rel_tol * sigma_max.
inline int numerical_rank(const CplxMat& a, double rel_tol = 1e-6) {
  Eigen::JacobiSVD<CplxMat> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (int k = 0; k < s.size(); ++k)
    if (s(k) > rel_tol * s(0)) ++r;
  return r;
}

}  // namespace curvlab
