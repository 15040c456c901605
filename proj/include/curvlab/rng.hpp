// Counter-based randomness: every stream is a pure function of (seed, counter),
// so parallel restarts reproduce bit-identically regardless of worker count.
#pragma once

#include <cstdint>
#include <random>
#include <complex>
#include <Eigen/Dense>

namespace curvlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic engine for stream `counter` of a run keyed by `seed`.
inline std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t counter) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(counter ^ 0xd1b54a32d192ed03ULL)));
}

inline Eigen::VectorXd random_real_vector(std::mt19937_64& eng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = g(eng);
  return v;
}

inline Eigen::VectorXcd random_complex_vector(std::mt19937_64& eng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = std::complex<double>(g(eng), g(eng));
  return v;
}

inline Eigen::MatrixXd random_real_matrix(std::mt19937_64& eng, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = g(eng);
  return m;
}

inline Eigen::MatrixXcd random_complex_matrix(std::mt19937_64& eng, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = std::complex<double>(g(eng), g(eng));
  return m;
}

/// Random skew-symmetric complex matrix (element of so(n,C)).
inline Eigen::MatrixXcd random_skew(std::mt19937_64& eng, int n) {
  Eigen::MatrixXcd a = random_complex_matrix(eng, n, n);
  return 0.5 * (a - a.transpose()).eval();
}

}  // namespace curvlab
