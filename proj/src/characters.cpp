#include "siegel/characters.hpp"

#include <numeric>

namespace siegel {

namespace {

long mod_l(long a, long m) { return ((a % m) + m) % m; }

long powmod_l(long b, long e, long m) {
  long r = 1 % m;
  b = mod_l(b, m);
  while (e) {
    if (e & 1) r = static_cast<long>((__int128)r * b % m);
    b = static_cast<long>((__int128)b * b % m);
    e >>= 1;
  }
  return r;
}

// x = a mod m1, x = b mod m2 for coprime m1, m2
long crt(long a, long m1, long b, long m2) {
  Int inv = inv_mod(Int(m1), Int(m2));
  Int x = Int(a) + Int(m1) * mod_floor(Int(b - a) * inv, Int(m2));
  return mod_floor(x, Int(m1 * m2)).get_si();
}

long prime_power(long q, int e) {
  long r = 1;
  while (e--) r *= q;
  return r;
}

}  // namespace

std::vector<LocalGenerator> local_generators(long M) {
  std::vector<LocalGenerator> gens;
  for (auto [q, e] : factorize(M)) {
    long qe = prime_power(q, e), rest = M / qe;
    auto lift = [&](long g) { return crt(mod_l(g, qe), qe, 1, rest); };
    if (q == 2) {
      if (e == 1) continue;
      gens.push_back({2, e, lift(-1), 2});
      if (e >= 3) gens.push_back({2, e, lift(5), qe / 4});
    } else {
      long g = primitive_root(q);
      if (e > 1 && powmod_l(g, q - 1, q * q) == 1) g += q;
      gens.push_back({q, e, lift(g), qe / q * (q - 1)});
    }
  }
  return gens;
}

DirichletChar DirichletChar::trivial(long M) {
  if (M < 1) throw DomainError("modulus must be positive");
  DirichletChar c;
  c.M_ = M, c.K_ = 1;
  c.exps_.assign(M, 0);
  for (long a = 0; a < M; ++a)
    if (std::gcd(a, M) != 1) c.exps_[a] = -1;
  c.cond_ = 1;
  return c;
}

DirichletChar DirichletChar::from_table(long M, long K, std::vector<long> exps) {
  if (static_cast<long>(exps.size()) != M) throw DomainError("table size must equal the modulus");
  DirichletChar c;
  c.M_ = M, c.K_ = K, c.exps_ = std::move(exps);
  c.finish();
  return c;
}

DirichletChar DirichletChar::from_images(long M, const std::vector<long>& images) {
  auto gens = local_generators(M);
  if (images.size() != gens.size()) throw DomainError("need one image per local generator");
  long K = 1;
  for (auto& g : gens) K = std::lcm(K, g.order);
  std::vector<long> exps(M, -1);
  // walk the group as a mixed-radix product of the cyclic factors
  std::vector<long> digit(gens.size(), 0);
  long x = 1 % M, e = 0;
  while (true) {
    exps[x] = e;
    size_t i = 0;
    for (; i < gens.size(); ++i) {
      long step = images[i] * (K / gens[i].order);
      if (++digit[i] < gens[i].order) {
        x = static_cast<long>((__int128)x * gens[i].element % M);
        e = mod_l(e + step, K);
        break;
      }
      digit[i] = 0;
      // undo the full cycle: g^order = 1 and the exponent wraps to 0 mod K
      x = static_cast<long>((__int128)x * gens[i].element % M);
      e = mod_l(e + step, K);
    }
    if (i == gens.size()) break;
  }
  return from_table(M, K, std::move(exps));
}

void DirichletChar::finish() {
  // shrink K to the exact order of the value group
  long g = K_;
  for (long e : exps_)
    if (e > 0) g = std::gcd(g, e);
  if (g > 1) {
    for (auto& e : exps_)
      if (e > 0) e /= g;
    K_ /= g;
  }
  if (K_ == 0) K_ = 1;
  // conductor, one prime power at a time
  cond_ = 1;
  for (auto [q, e] : factorize(M_)) {
    long qe = prime_power(q, e), rest = M_ / qe;
    int f = e;
    for (int ff = 0; ff < e; ++ff) {
      long step = prime_power(q, ff);
      bool trivial_here = true;
      for (long j = 0; j < qe && trivial_here; j += step) {
        long a = mod_l(1 + j, qe);
        if (a % q == 0) continue;
        long x = crt(a, qe, 1, rest);
        if (exps_[x] != 0) trivial_here = false;
      }
      if (trivial_here) { f = ff; break; }
    }
    cond_ *= prime_power(q, f);
  }
}

DirichletChar DirichletChar::kronecker(long D0) {
  long M = D0 < 0 ? -D0 : D0;
  if (M == 1) return trivial(1);
  std::vector<long> exps(M, -1);
  for (long a = 1; a <= M; ++a) {
    int k = mpz_kronecker(Int(D0).get_mpz_t(), Int(a).get_mpz_t());
    exps[a % M] = k == 1 ? 0 : (k == -1 ? 1 : -1);
  }
  return from_table(M, 2, std::move(exps));
}

DirichletChar DirichletChar::teichmuller_char(long p) {
  if (!is_prime(p) || p == 2) throw DomainError("omega needs an odd prime");
  return from_images(p, {1});
}

std::vector<DirichletChar> DirichletChar::all(long M) {
  auto gens = local_generators(M);
  std::vector<DirichletChar> out;
  std::vector<long> img(gens.size(), 0);
  while (true) {
    out.push_back(from_images(M, img));
    size_t i = 0;
    for (; i < gens.size(); ++i) {
      if (++img[i] < gens[i].order) break;
      img[i] = 0;
    }
    if (i == gens.size()) break;
  }
  return out;
}

int DirichletChar::parity() const {
  long e = exp_at(-1);
  if (e == 0) return 1;
  if (2 * e == K_) return -1;
  throw DomainError("chi(-1) is not +-1");
}

long DirichletChar::exp_at(const Int& n) const { return exps_[mod_floor(n, Int(M_)).get_si()]; }
long DirichletChar::exp_at(long n) const { return exps_[mod_l(n, M_)]; }

CycNumber DirichletChar::operator()(const Int& n) const {
  long e = exp_at(n);
  if (e < 0) return CycNumber(Rat(0));
  if (K_ <= 2) return CycNumber(Rat(e == 0 ? 1 : -1));
  return CycNumber::root(K_, e);
}

DirichletChar DirichletChar::primitive() const {
  if (cond_ == M_) return *this;
  long C = cond_;
  std::vector<long> exps(C, -1);
  for (long a = 0; a < C; ++a) {
    if (std::gcd(a, C) != 1) continue;
    long x = a;
    while (std::gcd(x, M_) != 1) x += C;
    exps[a] = exps_[x % M_];
  }
  if (C == 1) exps[0] = 0;
  return from_table(C, K_, std::move(exps));
}

DirichletChar DirichletChar::induce(long M) const {
  if (M % M_) throw DomainError("can only induce to a multiple of the modulus");
  return *this * trivial(M);
}

DirichletChar DirichletChar::conj() const {
  auto e = exps_;
  for (auto& x : e)
    if (x > 0) x = K_ - x;
  return from_table(M_, K_, std::move(e));
}

DirichletChar DirichletChar::pow(long n) const {
  auto e = exps_;
  for (auto& x : e)
    if (x >= 0) x = mod_l(x * n, K_);
  return from_table(M_, K_, std::move(e));
}

DirichletChar operator*(const DirichletChar& a, const DirichletChar& b) {
  long M = std::lcm(a.M_, b.M_), K = std::lcm(a.K_, b.K_);
  std::vector<long> e(M, -1);
  for (long x = 0; x < M; ++x) {
    long ea = a.exps_[x % a.M_], eb = b.exps_[x % b.M_];
    if (ea < 0 || eb < 0) continue;
    e[x] = (ea * (K / a.K_) + eb * (K / b.K_)) % K;
  }
  return DirichletChar::from_table(M, K, std::move(e));
}

bool operator==(const DirichletChar& a, const DirichletChar& b) {
  return a.M_ == b.M_ && a.K_ == b.K_ && a.exps_ == b.exps_;
}

std::vector<LocalImage> DirichletChar::generator_images() const {
  std::vector<LocalImage> out;
  for (auto& g : local_generators(M_)) {
    long e = exps_[g.element];
    out.push_back({g.prime, g.power, mod_l(e * g.order / K_, g.order), g.order});
  }
  return out;
}

Decomposition decompose(const DirichletChar& chi, long N1, long R, long p) {
  if (std::gcd(N1, R) != 1 || std::gcd(N1, p) != 1 || std::gcd(R, p) != 1)
    throw DomainError("N1, R, p must be pairwise coprime");
  long M = chi.modulus();
  if (M != N1 * R * p) throw DomainError("modulus must equal N1*R*p");
  auto part = [&](long m) {
    std::vector<long> e(m, -1);
    for (long a = 0; a < m; ++a) {
      if (std::gcd(a, m) != 1) continue;
      e[a] = chi.exp_at(crt(a, m, 1, M / m));
    }
    if (m == 1) e[0] = 0;
    return DirichletChar::from_table(m, chi.order(), std::move(e));
  };
  Decomposition d{part(N1), part(R), part(p)};
  if (!d.chip.is_primitive()) throw DomainError("the R-part is not primitive mod R");
  return d;
}

CycNumber gauss_sum(const DirichletChar& chi) {
  long M = chi.modulus(), K = chi.order(), L = std::lcm(K, M);
  std::vector<Rat> acc(L, Rat(0));
  for (long a = 0; a < M; ++a) {
    long e = chi.exp_at(a);
    if (e < 0) continue;
    acc[(e * (L / K) + a * (L / M)) % L] += 1;
  }
  return CycNumber::from_powers(L, acc);
}

long det(const IntMatrix& a) {
  size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  long s = 0;
  for (size_t j = 0; j < n; ++j) {
    IntMatrix minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<long> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    s += (j % 2 ? -1 : 1) * a[0][j] * det(minor);
  }
  return s;
}

CycNumber matrix_gauss_sum(const IntMatrix& A, long N, const DirichletChar& eta, long L) {
  size_t g = A.size();
  if (N % eta.modulus()) throw DomainError("eta must be defined mod N");
  IntMatrix B = A;
  for (auto& row : B)
    for (auto& x : row) {
      if (x % L) throw DomainError("L must divide every entry of 2T2");
      x /= L;
    }
  long K = eta.order(), Lc = std::lcm(K, N);
  // counts[e] for zeta_Lc^e; brute force over all g x g matrices mod N
  std::vector<long> counts(Lc, 0);
  size_t cells = g * g;
  std::vector<long> x(cells, 0);
  while (true) {
    IntMatrix X(g, std::vector<long>(g));
    for (size_t i = 0; i < cells; ++i) X[i / g][i % g] = x[i];
    long e = eta.exp_at(det(X));
    if (e >= 0) {
      long tr = 0;
      for (size_t i = 0; i < g; ++i)
        for (size_t k = 0; k < g; ++k) tr += B[i][k] * X[k][i];
      counts[(e * (Lc / K) + mod_l(tr, N) * (Lc / N)) % Lc] += 1;
    }
    size_t i = 0;
    for (; i < cells; ++i) {
      if (++x[i] < N) break;
      x[i] = 0;
    }
    if (i == cells) break;
  }
  std::vector<Rat> acc(Lc);
  for (long e = 0; e < Lc; ++e) acc[e] = counts[e];
  return CycNumber::from_powers(Lc, acc);
}

CycNumber matrix_gauss_closed_form(const IntMatrix& A, const DirichletChar& eta, long L) {
  if (!eta.is_primitive()) throw DomainError("closed form needs a primitive character");
  long C = eta.modulus();
  long g = static_cast<long>(A.size());
  IntMatrix B = A;
  for (auto& row : B)
    for (auto& x : row) {
      if (x % L) throw DomainError("L must divide every entry of 2T2");
      x /= L;
    }
  long d = det(B);
  if (std::gcd(mod_l(d, C), C) != 1) throw DomainError("det(2T2) must be prime to the conductor");
  Rat scale = ipow(C, g * (g - 1) / 2);
  return scale * eta.conj()(d) * gauss_sum(eta).pow(g);
}

QuadChar quad_char_sigma(long D) {
  if (D == 0) throw DomainError("D = 0 has no quadratic character");
  long r = mod_l(D, 4);
  if (r == 2 || r == 3) throw DomainError("D is not a discriminant");
  long sgn = D < 0 ? -1 : 1, s = 1, f = 1;
  for (auto [q, e] : factorize(D)) {
    f *= prime_power(q, e / 2);
    if (e % 2) s *= q;
  }
  long D0 = sgn * s;
  if (mod_l(D0, 4) != 1) {
    D0 *= 4;
    f /= 2;
  }
  return {DirichletChar::kronecker(D0), D0, f};
}

}  // namespace siegel
