#pragma once

#include <random>

#include "siegel/ordinary.hpp"

namespace fixtures {

using siegel::Int;
using Mat = std::vector<std::vector<Int>>;

inline Mat matmul(const Mat& a, const Mat& b) {
  size_t n = a.size();
  Mat r(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k)
      for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

struct Planted {
  Mat M;      // P D P^{-1}, integral
  Mat E;      // P diag(1..1, 0..0) P^{-1}; the projector when D is diagonal
  long units;  // number of unit eigenvalues
  bool diagonal;
};

// D has `units` unit eigenvalues then d - units eigenvalues divisible by p; with noise the
// diagonal blocks also get strictly upper triangular entries.
inline Planted planted_model(std::mt19937_64& rng, long p, long d, long units, bool noise) {
  std::uniform_int_distribution<long> small(-3, 3), big(1, 40);
  Mat D(d, std::vector<Int>(d, 0)), E(d, std::vector<Int>(d, 0));
  for (long i = 0; i < d; ++i) {
    long x = big(rng);
    if (i < units) {
      while (x % p == 0) x = big(rng);
      E[i][i] = 1;
    } else {
      x = p * x;
    }
    D[i][i] = x;
  }
  if (noise)
    for (long i = 0; i < d; ++i)
      for (long j = i + 1; j < d; ++j)
        if ((i < units) == (j < units)) D[i][j] = small(rng);
  // unimodular P and its inverse from elementary row operations
  Mat P(d, std::vector<Int>(d, 0)), Pi(d, std::vector<Int>(d, 0));
  for (long i = 0; i < d; ++i) P[i][i] = Pi[i][i] = 1;
  std::uniform_int_distribution<long> idx(0, d - 1);
  for (int step = 0; step < 4 * d; ++step) {
    long i = idx(rng), j = idx(rng), c = small(rng);
    if (i == j || c == 0) continue;
    // P <- (1 + c e_ij) P, Pi <- Pi (1 - c e_ij)
    for (long k = 0; k < d; ++k) P[i][k] += c * P[j][k];
    for (long k = 0; k < d; ++k) Pi[k][j] -= c * Pi[k][i];
  }
  return {matmul(matmul(P, D), Pi), matmul(matmul(P, E), Pi), units, !noise};
}

}  // namespace fixtures
