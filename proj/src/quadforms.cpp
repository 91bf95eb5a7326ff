#include "siegel/quadforms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace siegel {

HalfIntMat::HalfIntMat(IntMatrix twoT) : two(std::move(twoT)) {
  size_t m = two.size();
  for (size_t i = 0; i < m; ++i) {
    if (two[i].size() != m) throw DomainError("2T must be square");
    if (two[i][i] % 2) throw DomainError("2T must have an even diagonal");
    for (size_t j = 0; j < i; ++j)
      if (two[i][j] != two[j][i]) throw DomainError("2T must be symmetric");
  }
}

Int det_int(const IntMatrix& a) {
  // Bareiss fraction-free elimination
  size_t n = a.size();
  if (n == 0) return 1;
  std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Int HalfIntMat::det2() const { return det_int(two); }

static IntMatrix leading(const IntMatrix& a, size_t k) {
  IntMatrix r(k, std::vector<long>(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) r[i][j] = a[i][j];
  return r;
}

bool HalfIntMat::positive_definite() const {
  for (size_t k = 1; k <= size(); ++k)
    if (det_int(leading(two, k)) <= 0) return false;
  return true;
}

bool HalfIntMat::positive_semidefinite() const {
  // every principal minor >= 0
  size_t m = size();
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < m; ++i)
      if (mask >> i & 1) idx.push_back(i);
    IntMatrix s(idx.size(), std::vector<long>(idx.size()));
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = 0; j < idx.size(); ++j) s[i][j] = two[idx[i]][idx[j]];
    if (det_int(s) < 0) return false;
  }
  return true;
}

HalfIntMat HalfIntMat::scaled(long c) const {
  IntMatrix r = two;
  for (auto& row : r)
    for (auto& x : row) x *= c;
  return HalfIntMat(r);
}

long HalfIntMat::content() const {
  long c = 0;
  for (size_t i = 0; i < size(); ++i)
    for (size_t j = 0; j < size(); ++j) c = std::gcd(c, i == j ? two[i][i] / 2 : two[i][j]);
  return c;
}

HalfIntMat BlockI::assembled() const {
  size_t n = 2 * g;
  IntMatrix m(n, std::vector<long>(n, 0));
  long L2 = L * L;
  for (long i = 0; i < g; ++i)
    for (long j = 0; j < g; ++j) {
      m[i][j] = L2 * T1.two[i][j];
      m[g + i][g + j] = L2 * T4.two[i][j];
      m[i][g + j] = T2x2[i][j];
      m[g + j][i] = T2x2[i][j];
    }
  return HalfIntMat(m);
}

std::vector<BlockI> enumerate_I(const HalfIntMat& T1, const HalfIntMat& T4, long L) {
  long g = static_cast<long>(T1.size());
  if (static_cast<long>(T4.size()) != g) throw DomainError("T1 and T4 must have the same size");
  if (!T1.positive_semidefinite() || !T4.positive_semidefinite()) throw DomainError("T1, T4 must be positive semidefinite");
  long L2 = L * L;
  // x^2 < (L^2 2T1_ii)(L^2 2T4_jj) from the 2x2 principal minors
  std::vector<long> bound(g * g);
  for (long i = 0; i < g; ++i)
    for (long j = 0; j < g; ++j) {
      long prod = L2 * T1.two[i][i] * L2 * T4.two[j][j];
      long b = static_cast<long>(std::sqrt(static_cast<double>(prod)));
      while (b * b >= prod && b > 0) --b;
      while ((b + 1) * (b + 1) < prod) ++b;
      bound[i * g + j] = prod > 0 ? b : -1;
    }
  std::vector<BlockI> out;
  for (long b : bound)
    if (b < 0) return out;
  std::vector<long> x(g * g);
  for (long k = 0; k < g * g; ++k) x[k] = -bound[k];
  while (true) {
    BlockI I{g, L, T1, T4, IntMatrix(g, std::vector<long>(g))};
    for (long k = 0; k < g * g; ++k) I.T2x2[k / g][k % g] = x[k];
    if (I.assembled().positive_definite()) out.push_back(I);
    long k = 0;
    for (; k < g * g; ++k) {
      if (++x[k] <= bound[k]) break;
      x[k] = -bound[k];
    }
    if (k == g * g) break;
  }
  return out;
}

namespace {

IntMatrix adjugate(const IntMatrix& G) {
  size_t n = G.size();
  IntMatrix adj(n, std::vector<long>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      IntMatrix minor;
      for (size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<long> row;
        for (size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(G[r][c]);
        minor.push_back(row);
      }
      long s = ((i + j) % 2) ? -1 : 1;
      adj[i][j] = s * (n == 1 ? 1 : det_int(minor).get_si());
    }
  return adj;
}

// adj(G)^t A adj(G), exact
std::vector<std::vector<Int>> congruence(const IntMatrix& A, const IntMatrix& adj) {
  size_t n = A.size();
  std::vector<std::vector<Int>> t(n, std::vector<Int>(n, 0)), r(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) t[i][j] += Int(A[i][k]) * adj[k][j];
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) r[i][j] += Int(adj[k][i]) * t[k][j];
  return r;
}

// all row-HNF matrices of size n with the given diagonal
void hnf_with_diag(const std::vector<long>& diag, const std::function<void(const IntMatrix&)>& f) {
  size_t n = diag.size();
  IntMatrix G(n, std::vector<long>(n, 0));
  for (size_t i = 0; i < n; ++i) G[i][i] = diag[i];
  std::vector<std::pair<size_t, size_t>> cells;
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < j; ++i) cells.push_back({i, j});
  std::function<void(size_t)> rec = [&](size_t c) {
    if (c == cells.size()) { f(G); return; }
    auto [i, j] = cells[c];
    for (long v = 0; v < diag[j]; ++v) {
      G[i][j] = v;
      rec(c + 1);
    }
    G[i][j] = 0;
  };
  rec(0);
}

void diagonals(long d, size_t n, std::vector<long>& cur, const std::function<void(const std::vector<long>&)>& f) {
  if (cur.size() + 1 == n) {
    cur.push_back(d);
    f(cur);
    cur.pop_back();
    return;
  }
  for (long a = 1; a <= d; ++a) {
    if (d % a) continue;
    cur.push_back(a);
    diagonals(d / a, n, cur, f);
    cur.pop_back();
  }
}

std::vector<CosetRep> cosets_impl(const HalfIntMat& I, long q) {
  if (!I.positive_definite()) throw DomainError("I must be positive definite");
  size_t n = I.size();
  Int D = I.det2();
  std::vector<CosetRep> out;
  for (long d = 1; Int(d) * d <= D; ++d) {
    if (D % (Int(d) * d) != 0) continue;
    if (q > 0) {
      long x = d;
      while (x % q == 0) x /= q;
      if (x != 1) continue;
    }
    std::vector<long> cur;
    diagonals(d, n, cur, [&](const std::vector<long>& diag) {
      hnf_with_diag(diag, [&](const IntMatrix& G) {
        if (in_D(I, G)) out.push_back({G, d});
      });
    });
  }
  std::sort(out.begin(), out.end(), [](const CosetRep& a, const CosetRep& b) {
    return a.d != b.d ? a.d < b.d : a.G < b.G;
  });
  return out;
}

}  // namespace

bool in_D(const HalfIntMat& I, const IntMatrix& G) {
  Int d = det_int(G);
  if (d == 0) return false;
  auto c = congruence(I.two, adjugate(G));
  Int d2 = d * d;
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < c.size(); ++j) {
      if (c[i][j] % d2 != 0) return false;
      if (i == j && (c[i][i] / d2) % 2 != 0) return false;
    }
  return true;
}

HalfIntMat coset_transform(const HalfIntMat& I, const IntMatrix& G) {
  if (!in_D(I, G)) throw DomainError("G is not in D(I)");
  Int d = det_int(G);
  auto c = congruence(I.two, adjugate(G));
  IntMatrix r(c.size(), std::vector<long>(c.size()));
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < c.size(); ++j) {
      Int x = c[i][j] / (d * d);
      r[i][j] = x.get_si();
    }
  return HalfIntMat(r);
}

IntMatrix hermite_normal_form(IntMatrix G) {
  // row operations only (left multiplication by GL_n(Z))
  size_t n = G.size();
  size_t row = 0;
  for (size_t col = 0; col < n && row < n; ++col) {
    // gcd-reduce column col below row
    while (true) {
      size_t piv = n;
      for (size_t r = row; r < n; ++r)
        if (G[r][col] != 0 && (piv == n || std::labs(G[r][col]) < std::labs(G[piv][col]))) piv = r;
      if (piv == n) break;
      std::swap(G[row], G[piv]);
      bool done = true;
      for (size_t r = row + 1; r < n; ++r) {
        long f = G[r][col] / G[row][col];
        if (f)
          for (size_t c = 0; c < n; ++c) G[r][c] -= f * G[row][c];
        if (G[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (G[row][col] == 0) continue;
    if (G[row][col] < 0)
      for (auto& x : G[row]) x = -x;
    for (size_t r = 0; r < row; ++r) {
      long f = G[r][col] / G[row][col];
      if (G[r][col] - f * G[row][col] < 0) --f;
      for (size_t c = 0; c < n; ++c) G[r][c] -= f * G[row][c];
    }
    ++row;
  }
  return G;
}

std::vector<CosetRep> d_cosets(const HalfIntMat& I) { return cosets_impl(I, 0); }

std::vector<CosetRep> local_cosets(const HalfIntMat& I, long q) {
  if (!is_prime(q)) throw DomainError("q must be prime");
  return cosets_impl(I, q);
}

}  // namespace siegel
