// Algebraic curvature operators on so(n): Hermitian quadratic form, component
// access, Kulkarni-Nomizu product, Hamilton's R# via structure constants, an
// RK4 integrator for R' = R^2 + R# with blow-up detection, and model operators.
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "curvlab/lie_core.hpp"

namespace curvlab {

// Symmetric endomorphism of so(n) in the lexicographic X_ij basis.
// Component convention: R_ijkl = <R(X_ij), X_kl>, so the round sphere (R = Id)
// has K_ij = R_ijij = +1.
class CurvatureOperator {
 public:
  CurvatureOperator(int n, RealMat m) : n_(n), m_(std::move(m)) {
    const int d = so_dim(n);
    if (m_.rows() != d || m_.cols() != d)
      throw DimensionMismatch("CurvatureOperator: matrix size != n(n-1)/2");
    symmetrize();
  }

  int n() const { return n_; }
  int dim() const { return so_dim(n_); }
  const RealMat& matrix() const { return m_; }
  RealMat& matrix() { return m_; }

  void symmetrize() { m_ = (0.5 * (m_ + m_.transpose())).eval(); }

  double operator_norm() const {
    Eigen::SelfAdjointEigenSolver<RealMat> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }

  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<RealMat> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  /// R applied to a (complex) skew matrix, via coefficient expansion.
  CplxMat apply(const CplxMat& x) const {
    if (x.rows() != n_) throw DimensionMismatch("apply: ambient dimension mismatch");
    return skew_from_coefficients(m_ * skew_coefficients(x), n_);
  }

  // -- models --------------------------------------------------------------

  static CurvatureOperator sphere(int n) {
    return CurvatureOperator(n, RealMat::Identity(so_dim(n), so_dim(n)));
  }

  /// Projection onto span{X_ij : i,j >= 1}; the S^{n-1} x R cylinder operator.
  static CurvatureOperator cylinder(int n) {
    RealMat m = RealMat::Zero(so_dim(n), so_dim(n));
    int a = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++a)
        if (i >= 1) m(a, a) = 1.0;
    return CurvatureOperator(n, m);
  }

  /// Complementary projection onto span{X_0j}.
  static CurvatureOperator radial_projector(int n) {
    RealMat m = RealMat::Identity(so_dim(n), so_dim(n)) - cylinder(n).matrix();
    return CurvatureOperator(n, m);
  }

  /// S^p(1) x S^q(1): K = 1 inside each factor, 0 on mixed planes.
  static CurvatureOperator sphere_product(int p, int q) {
    const int n = p + q;
    if (p < 2 || q < 2) throw std::invalid_argument("sphere_product: factors need dim >= 2");
    RealMat m = RealMat::Zero(so_dim(n), so_dim(n));
    int a = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++a)
        if ((i < p && j < p) || (i >= p && j >= p)) m(a, a) = 1.0;
    return CurvatureOperator(n, m);
  }

  static CurvatureOperator diagonal(int n, const RealVec& diag) {
    if (diag.size() != so_dim(n)) throw DimensionMismatch("diagonal: length != n(n-1)/2");
    return CurvatureOperator(n, RealMat(diag.asDiagonal()));
  }

  int n_ = 0;

 private:
  RealMat m_;
};

/// <R(X), X>_H for complex skew X; real because R is real symmetric.
inline double qform(const CurvatureOperator& r, const CplxMat& x) {
  if (x.rows() != r.n()) throw DimensionMismatch("qform: ambient dimension mismatch");
  const CplxVec c = skew_coefficients(x);
  return (c.adjoint() * (r.matrix() * c)).real()(0);
}

/// R(X(a,b)), X(c,d) component for arbitrary vectors (frame slots or basis).
inline double q4(const CurvatureOperator& r, const RealVec& a, const RealVec& b,
                 const RealVec& c, const RealVec& d) {
  const CplxMat xab = phi_real(a, b).cast<Complex>();
  const CplxMat xcd = phi_real(c, d).cast<Complex>();
  return inner_hermitian(r.apply(xab), xcd).real();
}

/// Component accessor: R_ijkl and K_ij in the standard frame.
class Components {
 public:
  explicit Components(const CurvatureOperator& r) : r_(r) {}

  double R(int i, int j, int k, int l) const {
    check(i); check(j); check(k); check(l);
    if (i == j || k == l) return 0.0;
    double sign = 1.0;
    if (i > j) { std::swap(i, j); sign = -sign; }
    if (k > l) { std::swap(k, l); sign = -sign; }
    const int n = r_.n();
    return sign * r_.matrix()(pair_index(n, i, j), pair_index(n, k, l));
  }

  double K(int i, int j) const { return R(i, j, i, j); }

 private:
  void check(int i) const {
    if (i < 0 || i >= r_.n()) throw std::out_of_range("Components: frame index");
  }
  const CurvatureOperator& r_;
};

/// Kulkarni-Nomizu product of symmetric 2-tensors, mapped through the
/// component convention: entry[(ij),(kl)] = a_ik b_jl + a_jl b_ik - a_il b_jk - a_jk b_il.
inline CurvatureOperator kulkarni_nomizu(const RealMat& a, const RealMat& b) {
  if (a.rows() != b.rows() || a.rows() != a.cols() || b.rows() != b.cols())
    throw DimensionMismatch("kulkarni_nomizu: size mismatch");
  const int n = static_cast<int>(a.rows());
  const auto pairs = pair_basis(n);
  const int d = so_dim(n);
  RealMat m(d, d);
  for (int p = 0; p < d; ++p) {
    const int i = pairs[p].i, j = pairs[p].j;
    for (int q = 0; q < d; ++q) {
      const int k = pairs[q].i, l = pairs[q].j;
      m(p, q) = a(i, k) * b(j, l) + a(j, l) * b(i, k) - a(i, l) * b(j, k) - a(j, k) * b(i, l);
    }
  }
  return CurvatureOperator(n, m);
}

/// Hamilton sharp: (R#)_ab = 1/2 sum_{gdez} R_ge R_dz c_gda c_ezb.
/// Computed as 1/2 <C_a, R C_b R>_F with (C_a)_gd = c_gda.
inline CurvatureOperator rsharp(const CurvatureOperator& r, const StructureConstants& sc) {
  if (sc.n != r.n()) throw DimensionMismatch("rsharp: structure constants for wrong n");
  const int d = r.dim();
  const RealMat& m = r.matrix();
  RealMat out(d, d);
  std::vector<RealMat> sandwiched(d);
  for (int b = 0; b < d; ++b) sandwiched[b] = m * sc.c[b] * m;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) out(a, b) = 0.5 * (sc.c[a].array() * sandwiched[b].array()).sum();
  return CurvatureOperator(r.n(), out);
}

struct FlowTrace {
  std::vector<double> times;
  std::vector<CurvatureOperator> operators;
  std::optional<double> blow_up_time;
};

/// Classical RK4 for R' = R^2 + R#, re-symmetrizing each step. Stops at t_max
/// or when the operator norm exceeds norm_cap (recorded, not an error).
inline FlowTrace flow(const CurvatureOperator& r0, double dt, double t_max, double norm_cap,
                      int record_every = 1) {
  if (dt <= 0.0) throw std::invalid_argument("flow: dt must be positive");
  if (norm_cap <= r0.operator_norm()) throw std::invalid_argument("flow: norm_cap below ||R0||");
  const StructureConstants sc = structure_constants(r0.n());
  auto rhs = [&](const RealMat& m) -> RealMat {
    CurvatureOperator r(r0.n(), m);
    return (m * m + rsharp(r, sc).matrix()).eval();
  };
  FlowTrace trace;
  RealMat m = r0.matrix();
  double t = 0.0;
  trace.times.push_back(t);
  trace.operators.emplace_back(r0.n(), m);
  long step = 0;
  while (t + 0.5 * dt < t_max) {
    const RealMat k1 = rhs(m);
    const RealMat k2 = rhs(m + 0.5 * dt * k1);
    const RealMat k3 = rhs(m + 0.5 * dt * k2);
    const RealMat k4 = rhs(m + dt * k3);
    RealMat next = m + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    next = (0.5 * (next + next.transpose())).eval();
    if (!next.allFinite()) {
      trace.blow_up_time = t;
      return trace;
    }
    CurvatureOperator cand(r0.n(), next);
    if (cand.operator_norm() > norm_cap) {
      trace.blow_up_time = t;
      return trace;
    }
    m = next;
    t += dt;
    ++step;
    if (step % record_every == 0) {
      trace.times.push_back(t);
      trace.operators.emplace_back(r0.n(), m);
    }
  }
  if (trace.times.back() != t) {
    trace.times.push_back(t);
    trace.operators.emplace_back(r0.n(), m);
  }
  return trace;
}

// Quarter-pinched family: R = (1/2 g(x)g + eps g(x)h) / (1 + eps) with
// h = diag(1,-1,0,...,0). Sectional curvatures lie in [(1-eps)/(1+eps), 1], so
// the weak quarter-pinching K in [1/4, 1] holds exactly for eps <= 3/5.
inline CurvatureOperator quarter_pinched(int n, double eps) {
  if (n < 4) throw std::invalid_argument("quarter_pinched: need n >= 4");
  if (eps < 0.0 || eps > 0.6)
    throw std::invalid_argument("quarter_pinched: eps outside [0, 3/5] violates the pinching");
  const RealMat g = RealMat::Identity(n, n);
  RealMat h = RealMat::Zero(n, n);
  h(0, 0) = 1.0;
  h(1, 1) = -1.0;
  RealMat m = 0.5 * kulkarni_nomizu(g, g).matrix() + eps * kulkarni_nomizu(g, h).matrix();
  return CurvatureOperator(n, (m / (1.0 + eps)).eval());
}

/// Named model dispatch used by the CLI.
inline CurvatureOperator model(const std::string& name, int n,
                               const std::vector<double>& params = {}) {
  if (name == "sphere") return CurvatureOperator::sphere(n);
  if (name == "cylinder") return CurvatureOperator::cylinder(n);
  if (name == "sphere_product") {
    if (params.size() != 2) throw std::invalid_argument("sphere_product needs (p, q)");
    const int p = static_cast<int>(params[0]), q = static_cast<int>(params[1]);
    if (p + q != n) throw std::invalid_argument("sphere_product: p + q != n");
    return CurvatureOperator::sphere_product(p, q);
  }
  if (name == "quarter_pinched") {
    if (params.size() != 1) throw std::invalid_argument("quarter_pinched needs (eps)");
    return quarter_pinched(n, params[0]);
  }
  if (name == "diagonal") {
    RealVec d(params.size());
    for (size_t k = 0; k < params.size(); ++k) d(static_cast<int>(k)) = params[k];
    return CurvatureOperator::diagonal(n, d);
  }
  throw std::invalid_argument("unknown model: " + name);
}

}  // namespace curvlab
