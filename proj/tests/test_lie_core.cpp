#include <catch2/catch_amalgamated.hpp>

#include "curvlab/lie_core.hpp"

using namespace curvlab;
using Catch::Approx;

namespace {

CplxVec unit(int n, int k) { return CplxVec::Unit(n, k); }

// Independent oracle: structure constant by dense bracket arithmetic.
double bracket_constant(int n, int a, int b, int g) {
  const auto basis = basis_so_n(n);
  const CplxMat br = bracket(basis[a].cast<Complex>(), basis[b].cast<Complex>());
  return inner_bilinear(br, basis[g].cast<Complex>()).real();
}

}  // namespace

TEST_CASE("phi on basis vectors matches the defining formula") {
  const CplxMat x = phi(unit(3, 0), unit(3, 1));
  CHECK(x(1, 0) == Approx(1.0));
  CHECK(x(0, 1) == Approx(-1.0));
  CHECK(x.cwiseAbs().sum() == Approx(2.0));

  // antisymmetry: phi(u,u) = 0
  std::mt19937_64 eng = rng_stream(7, 0);
  const CplxVec u = random_complex_vector(eng, 5);
  CHECK(phi(u, u).norm() == Approx(0.0).margin(1e-14));
}

TEST_CASE("phi of an isotropic plane is square-zero of rank 2") {
  const int n = 4;
  const CplxVec u = unit(n, 0) + Complex(0, 1) * unit(n, 1);
  const CplxVec v = unit(n, 2) + Complex(0, 1) * unit(n, 3);
  const CplxMat x = phi(u, v);
  CHECK((x * x).norm() == Approx(0.0).margin(1e-12));  // matrix-multiplication oracle
  CHECK(numerical_rank(x) == 2);
}

TEST_CASE("phi rejects mismatched dimensions") {
  CHECK_THROWS_AS(phi(CplxVec::Zero(3), CplxVec::Zero(4)), DimensionMismatch);
}

TEST_CASE("basis_so_n ordering and orthonormality") {
  CHECK(basis_so_n(2).size() == 1);
  const auto pairs = pair_basis(4);
  REQUIRE(pairs.size() == 6);
  const int expect[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (int k = 0; k < 6; ++k) {
    CHECK(pairs[k].i == expect[k][0]);
    CHECK(pairs[k].j == expect[k][1]);
  }

  for (int n : {3, 5, 8}) {
    const auto basis = basis_so_n(n);
    for (size_t a = 0; a < basis.size(); ++a)
      for (size_t b = 0; b < basis.size(); ++b) {
        const double gram =
            inner_bilinear(basis[a].cast<Complex>(), basis[b].cast<Complex>()).real();
        CHECK(gram == (a == b ? 1.0 : 0.0));  // exact in integer arithmetic
      }
  }
}

TEST_CASE("inner product values") {
  const auto b4 = basis_so_n(4);
  const int i01 = pair_index(4, 0, 1), i23 = pair_index(4, 2, 3);
  CHECK(inner_bilinear(b4[i01].cast<Complex>(), b4[i01].cast<Complex>()).real() == Approx(1.0));
  CHECK(inner_bilinear(b4[i01].cast<Complex>(), b4[i23].cast<Complex>()).real() == Approx(0.0));

  const Complex c(1.3, -0.7);
  const CplxMat cx = c * b4[i01].cast<Complex>();
  CHECK(inner_hermitian(cx, cx).real() == Approx(std::norm(c)));
  CHECK(std::abs(inner_hermitian(cx, cx).imag()) < 1e-15);
}

TEST_CASE("structure constants: values, antisymmetry, disjoint brackets") {
  for (int n : {3, 4, 5}) {
    const auto sc = structure_constants(n);
    const int d = so_dim(n);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int g = 0; g < d; ++g) {
          CHECK(sc(a, b, g) == Approx(bracket_constant(n, a, b, g)).margin(1e-14));
          CHECK(sc(a, b, g) == Approx(-sc(b, a, g)).margin(1e-14));
        }
  }

  const auto sc3 = structure_constants(3);
  const double c = sc3(pair_index(3, 0, 1), pair_index(3, 1, 2), pair_index(3, 0, 2));
  CHECK(std::abs(c) == Approx(1.0));

  const auto sc4 = structure_constants(4);
  const int a01 = pair_index(4, 0, 1), a23 = pair_index(4, 2, 3);
  for (int g = 0; g < so_dim(4); ++g) CHECK(sc4(a01, a23, g) == 0.0);
}

TEST_CASE("Jacobi identity holds through structure constants") {
  for (int n : {3, 4, 6}) {
    const auto sc = structure_constants(n);
    const int d = so_dim(n);
    std::mt19937_64 eng = rng_stream(11, n);
    std::uniform_int_distribution<int> pick(0, d - 1);
    for (int trial = 0; trial < 200; ++trial) {
      const int a = pick(eng), b = pick(eng), g = pick(eng), dd = pick(eng);
      double s = 0.0;
      for (int e = 0; e < d; ++e)
        s += sc(a, b, e) * sc(e, g, dd) + sc(b, g, e) * sc(e, a, dd) + sc(g, a, e) * sc(e, b, dd);
      CHECK(std::abs(s) <= 1e-12);
    }
  }
}

TEST_CASE("gram_schmidt_bilinear basic contracts") {
  const int n = 4;
  // already orthonormal
  auto ws = gram_schmidt_bilinear({unit(n, 0), unit(n, 1)});
  CHECK((ws[0] - unit(n, 0)).norm() == Approx(0.0).margin(1e-14));
  CHECK((ws[1] - unit(n, 1)).norm() == Approx(0.0).margin(1e-14));

  // {2 e0, e0 + e1} -> {e0, e1}
  ws = gram_schmidt_bilinear({2.0 * unit(n, 0), unit(n, 0) + unit(n, 1)});
  CHECK((ws[0] - unit(n, 0)).norm() == Approx(0.0).margin(1e-14));
  CHECK((ws[1] - unit(n, 1)).norm() == Approx(0.0).margin(1e-14));

  // isotropic pivot
  CHECK_THROWS_AS(gram_schmidt_bilinear({unit(n, 0) + Complex(0, 1) * unit(n, 1)}),
                  IsotropicPivot);
}

TEST_CASE("gram_schmidt_bilinear randomized property") {
  std::mt19937_64 eng = rng_stream(23, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4 + static_cast<int>(trial % 4);
    std::vector<CplxVec> vs;
    for (int k = 0; k < n - 1; ++k) vs.push_back(random_complex_vector(eng, n));
    std::vector<CplxVec> ws;
    try {
      ws = gram_schmidt_bilinear(vs);
    } catch (const IsotropicPivot&) {
      ws = gram_schmidt_perturbed(vs);
    }
    for (size_t a = 0; a < ws.size(); ++a)
      for (size_t b = 0; b <= a; ++b) {
        const Complex g = bilinear(ws[a], ws[b]);
        CHECK(std::abs(g - (a == b ? 1.0 : 0.0)) <= 1e-10);
      }
  }
}

TEST_CASE("boost properties") {
  const int n = 4;
  const RealVec f1 = RealVec::Unit(n, 0), f2 = RealVec::Unit(n, 1);

  CHECK((boost(f1, f2, 0.0) - CplxMat::Identity(n, n)).norm() == Approx(0.0).margin(1e-14));

  for (double t : {0.3, 1.0, 2.5}) {
    const CplxMat p = boost(f1, f2, t);
    CHECK(is_special_orthogonal(p, 1e-10));
    const CplxVec pf1 = p * f1.cast<Complex>();
    CHECK(std::abs(bilinear(pf1, pf1) - 1.0) < 1e-12);  // cosh^2 - sinh^2 = 1
  }

  // Euclidean growth at t = 1: cosh(1)^2 + sinh(1)^2
  const CplxMat p1 = boost(RealVec(RealVec::Unit(2, 0)), RealVec(RealVec::Unit(2, 1)), 1.0);
  const double growth = (p1 * CplxVec(CplxVec::Unit(2, 0))).squaredNorm();
  CHECK(growth == Approx(std::cosh(1.0) * std::cosh(1.0) + std::sinh(1.0) * std::sinh(1.0)));
  CHECK(growth == Approx(3.7622).epsilon(1e-4));

  CHECK_THROWS_AS(boost(f1, 2.0 * f2, 1.0), std::invalid_argument);
}

TEST_CASE("equivariance: P phi(u,v) P^{-1} = phi(Pu, Pv)") {
  std::mt19937_64 eng = rng_stream(31, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + trial % 3;
    const CplxVec u = random_complex_vector(eng, n), v = random_complex_vector(eng, n);
    // boosts give generic SO(n,C) elements for this check
    const RealVec f1 = RealVec::Unit(n, trial % n), f2 = RealVec::Unit(n, (trial + 1) % n);
    const CplxMat p = boost(f1, f2, 0.7);
    const CplxMat lhs = p * phi(u, v) * p.inverse();
    const CplxMat rhs = phi(p * u, p * v);
    CHECK((lhs - rhs).norm() <= 1e-10 * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("form invariance under real orthogonal conjugation") {
  std::mt19937_64 eng = rng_stream(37, 0);
  const int n = 5;
  const RealMat q = Eigen::HouseholderQR<RealMat>(random_real_matrix(eng, n, n)).householderQ();
  const CplxMat qc = q.cast<Complex>();
  for (int trial = 0; trial < 20; ++trial) {
    const CplxMat a = random_skew(eng, n), b = random_skew(eng, n);
    const Complex lhs = inner_bilinear(qc * a * qc.inverse(), qc * b * qc.inverse());
    CHECK(std::abs(lhs - inner_bilinear(a, b)) <= 1e-10);
  }
}

TEST_CASE("coefficient round trip") {
  std::mt19937_64 eng = rng_stream(41, 0);
  const CplxMat x = random_skew(eng, 6);
  CHECK((skew_from_coefficients(skew_coefficients(x), 6) - x).norm() == Approx(0.0).margin(1e-14));
  CHECK(norm_h_sq(x) == Approx(skew_coefficients(x).squaredNorm()));
}

TEST_CASE("minimal polynomial degree and numerical rank") {
  std::mt19937_64 eng = rng_stream(43, 0);
  CplxMat j = CplxMat::Zero(4, 4);
  j(0, 1) = 1.0;
  j(1, 2) = 1.0;  // J3 + J1: minimal polynomial degree 3, rank 2
  CHECK(minimal_polynomial_degree(j, eng) == 3);
  CHECK(numerical_rank(j) == 2);
}
