#include "siegel/bernoulli.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "siegel/json_io.hpp"

namespace siegel {

namespace {

std::mutex g_bmutex;
std::vector<Rat> g_bern{Rat(1)};

Int binom(long n, long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

using BKey = std::tuple<long, long, long, std::vector<long>>;
std::mutex g_gmutex;
std::map<BKey, CycNumber> g_gcache;

}  // namespace

Rat bernoulli_number(long n) {
  if (n < 0) throw DomainError("negative Bernoulli index");
  std::lock_guard<std::mutex> lock(g_bmutex);
  // sum_{j=0}^{m} C(m+1, j) B_j = 0
  while (static_cast<long>(g_bern.size()) <= n) {
    long m = static_cast<long>(g_bern.size());
    Rat s = 0;
    if (m > 1 && m % 2) {
      g_bern.push_back(Rat(0));
      continue;
    }
    for (long j = 0; j < m; ++j)
      if (g_bern[j] != 0) s += Rat(binom(m + 1, j)) * g_bern[j];
    Rat b = -s / Rat(m + 1);
    b.canonicalize();
    g_bern.push_back(b);
  }
  return g_bern[n];
}

std::vector<Rat> bernoulli_poly(long n) {
  std::vector<Rat> c(n + 1);
  for (long j = 0; j <= n; ++j) c[n - j] = Rat(binom(n, j)) * bernoulli_number(j);
  return c;
}

CycNumber gen_bernoulli(long t, const DirichletChar& eta) {
  if (t < 0) throw DomainError("t must be >= 0");
  long M = eta.modulus(), K = eta.order();
  std::vector<long> table(M);
  for (long a = 0; a < M; ++a) table[a] = eta.exp_at(a);
  BKey key{t, M, K, table};
  {
    std::lock_guard<std::mutex> lock(g_gmutex);
    auto it = g_gcache.find(key);
    if (it != g_gcache.end()) return it->second;
  }
  // B_{t,eta} = sum_j C(t,j) B_j M^{j-1} sum_a eta(a) a^{t-j}; group a by the exponent class
  std::vector<std::vector<Int>> S(t + 1, std::vector<Int>(K, 0));
  for (long a = 1; a <= M; ++a) {
    long e = table[a % M];
    if (e < 0) continue;
    Int pw = 1;
    for (long j = 0; j <= t; ++j) {
      S[j][e] += pw;
      pw *= a;
    }
  }
  std::vector<Rat> acc(K, Rat(0));
  for (long j = 0; j <= t; ++j) {
    Rat b = bernoulli_number(j);
    if (b == 0) continue;
    Rat c = Rat(binom(t, j)) * b;
    if (j >= 1)
      c *= Rat(ipow(M, j - 1));
    else
      c /= Rat(M);
    for (long e = 0; e < K; ++e)
      if (S[t - j][e] != 0) acc[e] += c * Rat(S[t - j][e]);
  }
  for (auto& x : acc) x.canonicalize();
  CycNumber r = CycNumber::from_powers(K, acc);
  std::lock_guard<std::mutex> lock(g_gmutex);
  g_gcache.emplace(std::move(key), r);
  return r;
}

CycNumber L_neg(long t, const DirichletChar& eta) {
  if (t < 1) throw DomainError("L_neg needs t >= 1");
  return Rat(-1, t) * gen_bernoulli(t, eta);
}

DirichletChar kl_character(const ArithPoint& kp, const DirichletChar& eta) {
  long p = kp.p;
  auto omega = DirichletChar::teichmuller_char(p);
  return omega.pow(kp.tame - kp.exponent) * eta * DirichletChar::trivial(p);
}

CycNumber kl_value(const ArithPoint& kp, const DirichletChar& eta, bool literal) {
  long p = kp.p, t = kp.exponent;
  if (!kp.wild_trivial()) throw UnsupportedCharacter("eps of p-power order");
  if (!eta.is_even()) throw DomainError("eta must be even");
  DirichletChar psi = kl_character(kp, eta);
  DirichletChar psi0 = psi.primitive();
  if (t == 0) {
    if (psi0.is_trivial()) {
      PAdic r = kl_residue(psi0, p, 8);
      throw PoleError("L_p has a pole at [0] for trivial combined character", padic_to_json(r).dump());
    }
    throw DomainError("t = 0 is only meaningful at the pole");
  }
  if (t < 0) throw DomainError("t must be >= 1");
  CycNumber v = L_neg(t, psi0);
  // Euler factors at primes of the modulus where psi0 is unramified
  for (auto [q, e] : factorize(psi.modulus())) {
    if (psi0.conductor() % q == 0) continue;
    if (q == p && literal) {
      v = v * (CycNumber(Rat(1)) - psi0(q));
      continue;
    }
    v = v * (CycNumber(Rat(1)) - Rat(ipow(q, t - 1)) * psi0(q));
  }
  return v;
}

PAdic kl_eval(const ArithPoint& kp, const DirichletChar& eta, long N, bool literal) {
  return kl_value(kp, eta, literal).to_padic(kp.p, N);
}

PAdic kl_residue(const DirichletChar& eta, long p, long N) {
  if (!eta.is_trivial()) throw DomainError("residue only exists for trivial eta");
  return PAdic::from_rat(Rat(1) - Rat(1, p), p, N);
}

}  // namespace siegel
