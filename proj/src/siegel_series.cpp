#include "siegel/siegel_series.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "siegel/bernoulli.hpp"

namespace siegel {

Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return poly_trim(r);
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return poly_trim(r);
}

Poly poly_scale(const Poly& a, const Rat& c) {
  Poly r = a;
  for (auto& x : r) x *= c;
  return poly_trim(r);
}

Poly poly_divexact(const Poly& a0, const Poly& b0) {
  Poly a = poly_trim(a0), b = poly_trim(b0);
  if (b.empty()) throw DomainError("division by the zero polynomial");
  if (a.empty()) return {};
  if (a.size() < b.size()) throw PrecisionError("polynomial division is not exact");
  Poly q(a.size() - b.size() + 1, Rat(0));
  for (size_t k = q.size(); k-- > 0;) {
    Rat c = a[k + b.size() - 1] / b.back();
    q[k] = c;
    for (size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  for (auto& x : a)
    if (x != 0) throw PrecisionError("polynomial division is not exact");
  return poly_trim(q);
}

Rat poly_eval(const Poly& a, const Rat& x) {
  Rat r = 0;
  for (size_t i = a.size(); i-- > 0;) r = r * x + a[i];
  return r;
}

CycNumber poly_eval(const Poly& a, const CycNumber& x) {
  CycNumber r(Rat(0));
  for (size_t i = a.size(); i-- > 0;) r = r * x + a[i];
  return r;
}

PAdic poly_eval(const Poly& a, const PAdic& x) {
  PAdic r = PAdic::zero(x.p(), x.precision());
  for (size_t i = a.size(); i-- > 0;) r = r * x + PAdic::from_rat(a[i], x.p(), x.precision());
  return r;
}

std::string poly_to_string(const Poly& a) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << a[i].get_str();
    if (i) os << "*X^" << i;
  }
  return os.str();
}

namespace {

long vq(long a, long q, long cap) {
  if (a == 0) return cap;
  long v = 0;
  while (a % q == 0) a /= q, ++v;
  return std::min(v, cap);
}

long mulmod(long a, long b, long m) { return static_cast<long>((__int128)a * b % m); }

}  // namespace

std::vector<long> elementary_divisors(const IntMatrix& S, long q, long nu) {
  long Q = ipow(q, nu).get_si();
  size_t n = S.size();
  IntMatrix a = S;
  for (auto& row : a)
    for (auto& x : row) x = ((x % Q) + Q) % Q;
  std::vector<long> ex;
  for (size_t k = 0; k < n; ++k) {
    size_t bi = k, bj = k;
    long best = nu;
    for (size_t i = k; i < n; ++i)
      for (size_t j = k; j < n; ++j) {
        long v = vq(a[i][j], q, nu);
        if (v < best) best = v, bi = i, bj = j;
      }
    if (best >= nu) {
      while (ex.size() < n) ex.push_back(nu);
      break;
    }
    std::swap(a[k], a[bi]);
    for (auto& row : a) std::swap(row[k], row[bj]);
    long qe = ipow(q, best).get_si();
    long u = a[k][k] / qe;
    long uinv = inv_mod(Int(u), Int(Q)).get_si();
    for (size_t r = k + 1; r < n; ++r) {
      long f = mulmod(a[r][k] / qe, uinv, Q);
      for (size_t c = k; c < n; ++c) a[r][c] = ((a[r][c] - mulmod(f, a[k][c], Q)) % Q + Q) % Q;
    }
    for (size_t c = k + 1; c < n; ++c) {
      long f = mulmod(a[k][c] / qe, uinv, Q);
      for (size_t r = k; r < n; ++r) a[r][c] = ((a[r][c] - mulmod(f, a[r][k], Q)) % Q + Q) % Q;
    }
    ex.push_back(best);
  }
  return ex;
}

Rat local_density(const HalfIntMat& T, long q, long nu, long rank) {
  size_t m = T.size();
  if (rank % 2 || rank < static_cast<long>(m)) throw DomainError("rank must be even and >= size");
  long Q = ipow(q, nu).get_si();
  size_t cells = rank * m;
  Int total = ipow(Q, cells);
  if (total > 50000000) throw PrecisionError("exhaustive density count too large");
  std::vector<long> x(cells, 0);  // X[r][c] = x[r*m + c]
  long count = 0;
  while (true) {
    // A = X^t (2H) X; 2H pairs coordinates (2i, 2i+1)
    bool ok = true;
    for (size_t i = 0; i < m && ok; ++i)
      for (size_t j = i; j < m && ok; ++j) {
        long s = 0;
        for (long h = 0; h < rank; h += 2)
          s += x[h * m + i] * x[(h + 1) * m + j] + x[(h + 1) * m + i] * x[h * m + j];
        long target = T.two[i][j];
        if (i == j) {
          s /= 2;
          target /= 2;
        }
        if (((s - target) % Q + Q) % Q != 0) ok = false;
      }
    if (ok) ++count;
    size_t k = 0;
    for (; k < cells; ++k) {
      if (++x[k] < Q) break;
      x[k] = 0;
    }
    if (k == cells) break;
  }
  long e = nu * (static_cast<long>(m * (m + 1) / 2) - rank * static_cast<long>(m));
  Rat r = count;
  if (e >= 0)
    r *= Rat(ipow(q, e));
  else
    r /= Rat(ipow(q, -e));
  return r;
}

Poly density_poly(const HalfIntMat& T, long q, long nu) {
  size_t m = T.size();
  long Q = ipow(q, nu).get_si();
  size_t cells = m * (m + 1) / 2;
  if (ipow(Q, cells) > 60000000) throw PrecisionError("Siegel series sum exceeds the work cap");
  std::vector<std::pair<size_t, size_t>> pos;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i; j < m; ++j) pos.push_back({i, j});
  std::vector<long> w(cells);
  for (size_t k = 0; k < cells; ++k) {
    auto [i, j] = pos[k];
    w[k] = i == j ? T.two[i][i] / 2 : T.two[i][j];
  }
  std::vector<long> acc(m * nu + 1, 0);
  std::vector<long> s(cells, 0);
  IntMatrix S(m, std::vector<long>(m, 0));
  long phiQ = Q - Q / q;
  while (true) {
    long tr = 0;
    for (size_t k = 0; k < cells; ++k) tr = (tr + mulmod(s[k], ((w[k] % Q) + Q) % Q, Q)) % Q;
    long v = vq(tr, q, nu);
    long c = v >= nu ? phiQ : (v == nu - 1 ? -Q / q : 0);  // Ramanujan sum c_Q(tr)
    if (c != 0) {
      for (size_t k = 0; k < cells; ++k) {
        auto [i, j] = pos[k];
        S[i][j] = S[j][i] = s[k];
      }
      long d = 0;
      for (long e : elementary_divisors(S, q, nu)) d += nu - e;
      acc[d] += c;
    }
    size_t k = 0;
    for (; k < cells; ++k) {
      if (++s[k] < Q) break;
      s[k] = 0;
    }
    if (k == cells) break;
  }
  Poly r(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) r[i] = Rat(acc[i], phiQ);
  for (auto& x : r) x.canonicalize();
  return poly_trim(r);
}

int xi_char(const HalfIntMat& T, long q) {
  Int D = T.det2();
  if ((T.size() / 2) % 2) D = -D;
  if (D == 0) return 0;
  QuadChar qc = quad_char_sigma(D.get_si());
  return mpz_kronecker(Int(qc.D0).get_mpz_t(), Int(q).get_mpz_t());
}

namespace {

// (1 - X) prod_{i<=m/2} (1 - q^{2i} X^2), and the numerator (1 - xi q^{m/2} X)
Poly gamma_den(long m, long q) {
  Poly r{Rat(1), Rat(-1)};
  for (long i = 1; i <= m / 2; ++i) r = poly_mul(r, Poly{Rat(1), Rat(0), Rat(-ipow(q, 2 * i))});
  return r;
}

}  // namespace

Poly siegel_F_density(const HalfIntMat& T, long q) {
  long m = static_cast<long>(T.size());
  Int D = T.det2();
  if (D == 0) throw DomainError("T must be nondegenerate");
  long nu0 = siegel::valuation(D, q) + (q == 2 ? 2 : 1);
  Poly num{Rat(1), Rat(-xi_char(T, q)) * Rat(ipow(q, m / 2))};
  Poly den = gamma_den(m, q);
  auto F_at = [&](long nu) -> Poly {
    return poly_divexact(poly_mul(density_poly(T, q, nu), num), den);
  };
  Poly prev;
  bool have_prev = false;
  for (long nu = nu0; nu <= 6; ++nu) {
    Poly cur;
    try {
      cur = F_at(nu);
    } catch (const PrecisionError& e) {
      if (std::string(e.what()).find("work cap") != std::string::npos) throw;
      have_prev = false;
      continue;
    }
    if (have_prev && cur == prev) return cur;
    prev = cur, have_prev = true;
  }
  throw PrecisionError("local density did not stabilize by nu = 6");
}

Poly siegel_F_binary(const HalfIntMat& T, long q) {
  if (T.size() != 2) throw DomainError("binary formula needs a 2x2 form");
  long a = T.two[0][0] / 2, b = T.two[0][1], c = T.two[1][1] / 2;
  long D = b * b - 4 * a * c;
  QuadChar qc = quad_char_sigma(D);
  long e = vq(std::gcd(std::gcd(a, b), c), q, 1000);
  long mf = vq(qc.f, q, 1000);
  long chi = mpz_kronecker(Int(qc.D0).get_mpz_t(), Int(q).get_mpz_t());
  Poly q3x2{Rat(0), Rat(0), Rat(ipow(q, 3))};
  Poly q2x{Rat(0), Rat(ipow(q, 2))};
  Poly F;
  Poly pw_i{Rat(1)};
  for (long i = 0; i <= e; ++i) {
    Poly s1, s2, pw{Rat(1)};
    for (long j = 0; j <= mf - i; ++j) {
      s1 = poly_add(s1, pw);
      if (j < mf - i) s2 = poly_add(s2, pw);
      pw = poly_mul(pw, q3x2);
    }
    Poly inner = poly_add(s1, poly_mul(Poly{Rat(0), Rat(-chi * q)}, s2));
    F = poly_add(F, poly_mul(pw_i, inner));
    pw_i = poly_mul(pw_i, q2x);
  }
  return F;
}

Poly siegel_F(const HalfIntMat& T, long q) {
  if (T.size() == 2) return siegel_F_binary(T, q);
  return siegel_F_density(T, q);
}

namespace {
std::mutex g_fmutex;
std::map<std::pair<IntMatrix, long>, Poly> g_fpr;
}  // namespace

Poly siegel_F_primitive(const HalfIntMat& T, long q) {
  auto key = std::make_pair(T.two, q);
  {
    std::lock_guard<std::mutex> lock(g_fmutex);
    auto it = g_fpr.find(key);
    if (it != g_fpr.end()) return it->second;
  }
  long m = static_cast<long>(T.size());
  Poly r = siegel_F(T, q);
  for (auto& cr : local_cosets(T, q)) {
    if (cr.d == 1) continue;
    long v = vq(cr.d, q, 1000);
    // (q^{m+1} X^2)^v
    Poly w(2 * v + 1, Rat(0));
    w[2 * v] = Rat(ipow(q, (m + 1) * v));
    r = poly_add(r, poly_scale(poly_mul(w, siegel_F_primitive(coset_transform(T, cr.G), q)), Rat(-1)));
  }
  std::lock_guard<std::mutex> lock(g_fmutex);
  g_fpr.emplace(key, r);
  return r;
}

Poly siegel_poly_Bq(const HalfIntMat& I, long q) {
  if (!is_prime(q)) throw DomainError("q must be prime");
  if (!I.positive_definite()) throw DomainError("I must be positive definite");
  if (I.det2() % q != 0) return {Rat(1)};
  return siegel_F_primitive(I, q);
}

Rat cohen_oracle(long r, long N) {
  if (r < 1) throw DomainError("r must be >= 1");
  if (N < 0) throw DomainError("N must be >= 0");
  if (N == 0) return -bernoulli_number(2 * r) / Rat(2 * r);
  long D = -N;
  long m4 = ((D % 4) + 4) % 4;
  if (m4 == 2 || m4 == 3) return 0;
  QuadChar qc = quad_char_sigma(D);
  Rat L = L_neg(r, qc.chi).rational_value();
  auto mu = [](long n) {
    int s = 1;
    for (auto [pr, e] : factorize(n)) {
      if (e > 1) return 0;
      s = -s;
    }
    return s;
  };
  auto sigma = [](long n, long k) {
    Int s = 0;
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) s += ipow(d, k);
    return s;
  };
  Rat sum = 0;
  for (long d = 1; d <= qc.f; ++d) {
    if (qc.f % d) continue;
    int md = mu(d);
    if (!md) continue;
    int chi = mpz_kronecker(Int(qc.D0).get_mpz_t(), Int(d).get_mpz_t());
    sum += Rat(md * chi) * Rat(ipow(d, r - 1)) * Rat(sigma(qc.f / d, 2 * r - 1));
  }
  return L * sum;
}

}  // namespace siegel
