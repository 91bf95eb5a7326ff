#include "siegel/lfun.hpp"

#include <algorithm>

namespace siegel {

namespace {

PAdic ppow(long p, long e, long N) { return PAdic::from_parts(p, N, e, 1); }

long working_precision(const SatakeData& d) {
  long N = d.alpha_p.precision();
  for (auto& b : d.beta) N = std::max(N, b.precision());
  return N;
}

PAdic one(long p, long N) { return PAdic::from_int(1, p, N); }

}  // namespace

void SatakeData::validate() const {
  if (g < 1) throw DomainError("g must be positive");
  if (!is_prime(p)) throw DomainError("p must be prime");
  if (static_cast<long>(beta.size()) != g) throw DomainError("need exactly g parameters beta_i");
  if (alpha_p.p() != p || !alpha_p.is_unit()) throw DomainError("alpha_p must be a p-adic unit");
  PAdic prod = one(p, working_precision(*this));
  for (long i = 1; i <= g; ++i) {
    const PAdic& b = beta[i - 1];
    if (b.p() != p || b.is_zero()) throw DomainError("beta_" + std::to_string(i) + " must be a nonzero p-adic number");
    if (b.valuation() != i - k)
      throw DomainError("beta_" + std::to_string(i) + " p^{k-i} must be a unit (indexing)");
    prod *= b;
  }
  PAdic rhs = ppow(p, g * (g + 1) / 2 - g * k, prod.precision()) * alpha_p * alpha_p;
  if (!(prod - rhs).is_zero()) throw DomainError("prod beta_i must equal p^{g(g+1)/2 - gk} alpha_p^2");
}

CycNumber euler_Dq(long q, const SatakeData& d, const CycNumber& chi_q, long s) {
  if (!is_prime(q) || q == d.p) throw DomainError("q must be a prime different from p");
  auto it = d.alpha_q.find(q);
  if (it == d.alpha_q.end()) throw DomainError("no Satake parameters at q = " + std::to_string(q));
  Rat qs = s >= 0 ? Rat(1, ipow(q, s)) : Rat(ipow(q, -s));
  CycNumber T = chi_q * qs;
  CycNumber r(Rat(1));
  if (T.is_zero()) return r;
  if (d.bad.count(q)) {
    for (auto& a : it->second) r *= CycNumber(Rat(1)) - a * T;
    return r;
  }
  if (static_cast<long>(it->second.size()) != d.g) throw DomainError("need g parameters at a good prime");
  CycNumber ph = d.phi(q);
  r = CycNumber(Rat(1)) - ph * T;
  for (auto& a : it->second) {
    r *= CycNumber(Rat(1)) - ph * a.inverse() * T;
    r *= CycNumber(Rat(1)) - ph * a * T;
  }
  return r;
}

PAdic euler_E1(const SatakeData& d, const PAdic& c, long t) {
  d.validate();
  long N = working_precision(d);
  PAdic r = one(d.p, N);
  if (c.is_zero()) return r;
  for (auto& b : d.beta) r *= one(d.p, N) - c * b.inverse() * ppow(d.p, -t, N);
  return r;
}

PAdic euler_E(const SatakeData& d, const PAdic& c, long t) {
  PAdic r = euler_E1(d, c, t);
  if (c.is_zero()) return r;
  long N = working_precision(d);
  PAdic cbar = c.inverse();
  for (long i = 1; i <= d.g; ++i) {
    PAdic den = one(d.p, N) - cbar * d.beta[i - 1] * ppow(d.p, t - 1, N);
    if (den.is_zero()) throw PoleError("E has a vanishing denominator at i = " + std::to_string(i));
    r = r / den;
  }
  return r;
}

PAdic euler_Estar(const SatakeData& d) {
  d.validate();
  long N = working_precision(d), p = d.p;
  PAdic num = one(p, N), den = one(p, N);
  for (long i = 2; i <= d.g; ++i) num *= one(p, N) - d.beta[i - 1].inverse() * ppow(p, -1, N);
  for (long i = 1; i <= d.g; ++i) {
    PAdic f = one(p, N) - d.beta[i - 1] * ppow(p, 1, N);
    if (f.is_zero()) throw PoleError("E* has a vanishing denominator at i = " + std::to_string(i));
    den *= f;
  }
  return num / den;
}

PAdic epsilon_factor(long n, long t, long k, long g, const PAdic& alpha_p, const PAdic& gauss) {
  if (n < 0) throw DomainError("n must be nonnegative");
  if (!alpha_p.is_unit()) throw DomainError("alpha_p must be a unit");
  long p = alpha_p.p(), N = alpha_p.precision();
  PAdic top = ppow(p, n * g * (1 - t), N);
  PAdic base = ppow(p, g * (g + 1) / 2 - g * k, N) * alpha_p * alpha_p;
  return top / (gauss.pow(g) * base.pow(n));
}

SteinbergInfo detect_steinberg(const SatakeData& d) {
  d.validate();
  SteinbergInfo s;
  s.reindexed = d;
  for (long i = 1; i <= d.g; ++i) {
    PAdic x = d.beta[i - 1] * ppow(d.p, 1, d.beta[i - 1].precision() + 1);
    if (x.precision() <= 0) throw PrecisionError("beta_" + std::to_string(i) + " is not known well enough to decide");
    if ((x - one(d.p, x.precision())).is_zero()) {
      s.index = i;
      break;
    }
  }
  if (s.index) {
    std::swap(s.reindexed.beta[s.index - 1], s.reindexed.beta[d.g - 1]);
    s.steinberg = d.monodromy_nonzero;
  }
  return s;
}

PSeries series_mul(const PSeries& a, const PSeries& b, size_t order) {
  if (a.empty() || b.empty()) throw DomainError("empty series");
  long p = a[0].p(), N = std::min(a[0].precision(), b[0].precision());
  PSeries r(order, PAdic::zero(p, N));
  for (size_t i = 0; i < a.size() && i < order; ++i)
    for (size_t j = 0; j < b.size() && i + j < order; ++j) r[i + j] += a[i] * b[j];
  return r;
}

PSeries series_inverse(const PSeries& a, size_t order) {
  if (a.empty() || !a[0].is_unit()) throw DomainError("series inverse needs a unit constant term");
  long p = a[0].p(), N = a[0].precision();
  PSeries r(order, PAdic::zero(p, N));
  PAdic inv = a[0].inverse();
  r[0] = inv;
  for (size_t n = 1; n < order; ++n) {
    PAdic s = PAdic::zero(p, N);
    for (size_t j = 1; j <= n && j < a.size(); ++j) s += a[j] * r[n - j];
    r[n] = -(s * inv);
  }
  return r;
}

PAdic series_eval(const PSeries& a, const PAdic& x) {
  PAdic r = PAdic::zero(x.p(), x.precision());
  for (size_t i = a.size(); i-- > 0;) r = r * x + a[i];
  return r;
}

void SatakeFamily::validate() const {
  if (!is_prime(p) || p == 2) throw DomainError("p must be an odd prime");
  if (g < 1 || static_cast<long>(B.size()) != g) throw DomainError("need g series B_i");
  if (order < 1) throw DomainError("order must be positive");
  for (long i = 0; i < g; ++i) {
    if (B[i].empty() || !B[i][0].is_unit()) throw DomainError("B_" + std::to_string(i + 1) + "(k0) must be a unit");
    for (auto& c : B[i])
      if (c.p() != p) throw DomainError("series coefficients at the wrong prime");
  }
}

PSeries e1_family(const SatakeFamily& f) {
  f.validate();
  PSeries r{one(f.p, f.N)};
  for (long i = 1; i <= f.g; ++i) {
    PSeries inv = series_inverse(f.B[i - 1], f.order);
    PSeries factor(f.order, PAdic::zero(f.p, f.N));
    PAdic pw = ppow(f.p, f.g - i, f.N);
    for (size_t j = 0; j < f.order; ++j) factor[j] = -(inv[j] * pw);
    factor[0] += one(f.p, f.N);
    r = series_mul(r, factor, f.order);
  }
  return r;
}

DerivativeReport gs_derivative(const SatakeFamily& f, const PSeries& lstar) {
  f.validate();
  if (f.order < 2) throw PrecisionError("need the series to order >= 2 to differentiate");
  if (lstar.empty()) throw PrecisionError("L* needs at least a constant term");
  long p = f.p, N = f.N, g = f.g;
  const PSeries& Bg = f.B[g - 1];
  if (!(Bg[0] - one(p, N)).is_zero()) throw DomainError("B_g(k0) != 1: not a trivial zero");

  DerivativeReport r;
  PSeries E = e1_family(f);
  PSeries prod = series_mul(E, lstar, f.order);
  r.d_dk = prod[1];
  r.d_ds = -r.d_dk;
  r.ell = -(Bg.size() > 1 ? Bg[1] : PAdic::zero(p, N));
  r.cofactor = one(p, N);
  for (long i = 1; i < g; ++i) r.cofactor *= one(p, N) - f.B[i - 1][0].inverse() * ppow(p, g - i, N);
  r.lstar = lstar[0];
  r.closed = r.ell * r.cofactor * r.lstar;
  r.closed_matches = (r.d_ds - r.closed).is_zero();

  SatakeData d;
  d.g = g;
  d.p = p;
  d.k = f.k0;
  for (long i = 1; i <= g; ++i) d.beta.push_back(f.B[i - 1][0] * ppow(p, i - f.k0, N));
  try {
    // same formula as euler_Estar, minus validate(): the family carries no alpha_p
    long Np = N;
    PAdic num = one(p, Np), den = one(p, Np);
    for (long i = 2; i <= g; ++i) num *= one(p, Np) - d.beta[i - 1].inverse() * ppow(p, -1, Np);
    for (long i = 1; i <= g; ++i) {
      PAdic x = one(p, Np) - d.beta[i - 1] * ppow(p, 1, Np);
      if (x.is_zero()) throw PoleError("E* pole");
      den *= x;
    }
    r.estar = num / den;
  } catch (const PoleError&) {
    r.estar.reset();
  }

  // pointwise oracle at k0 + h
  long m = N / 2;
  PAdic h = ppow(p, m, N);
  auto F = [&](const PAdic& x) {
    PAdic v = one(p, N);
    for (long i = 1; i <= g; ++i) v *= one(p, N) - series_eval(f.B[i - 1], x).inverse() * ppow(p, g - i, N);
    return v * series_eval(lstar, x);
  };
  r.fd_quotient = (F(h) - F(PAdic::zero(p, N))) / h;
  r.fd_precision = std::min(m, N - m);
  r.fd_matches = r.fd_quotient.congruent(r.d_dk, r.fd_precision);
  return r;
}

VanishingReport two_var_vanishing_check(const std::function<PAdic(long, long)>& Lp, long g,
                                        const std::vector<long>& ks) {
  VanishingReport r;
  for (long k : ks) {
    PAdic v = Lp(k, k - g - 1);
    r.values.push_back({k, v});
    if (!v.is_zero()) r.holds = false;
  }
  return r;
}

}  // namespace siegel
