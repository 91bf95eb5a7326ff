#include "siegel/arith.hpp"

#include <algorithm>
#include <sstream>

namespace siegel {

Int ipow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int ipow(long base, unsigned long e) { return ipow(Int(base), e); }

long valuation(const Int& n, long p) {
  if (n == 0) throw DomainError("valuation of zero");
  Int m = n;
  long v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++v;
  }
  return v;
}

long valuation(const Rat& q, long p) { return valuation(q.get_num(), p) - valuation(q.get_den(), p); }

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int inv_mod(const Int& a, const Int& m) {
  Int r;
  if (m == 1) return 0;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t())) throw DomainError("not invertible mod " + m.get_str());
  return r;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<long, int>> factorize(long n) {
  std::vector<std::pair<long, int>> f;
  if (n < 0) n = -n;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) n /= d, ++e;
    f.push_back({d, e});
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

long primitive_root(long p) {
  if (p == 2) return 1;
  auto f = factorize(p - 1);
  for (long r = 2; r < p; ++r) {
    bool ok = true;
    for (auto [q, e] : f) {
      Int x;
      mpz_powm_ui(x.get_mpz_t(), Int(r).get_mpz_t(), (p - 1) / q, Int(p).get_mpz_t());
      if (x == 1) { ok = false; break; }
    }
    if (ok) return r;
  }
  throw DomainError("no primitive root");
}

// ---------------------------------------------------------------- PAdic

static void check_prime(long p) {
  if (p < 2 || !is_prime(p)) throw DomainError("p must be prime, got " + std::to_string(p));
}

PAdic PAdic::zero(long p, long N) {
  check_prime(p);
  PAdic r;
  r.p_ = p, r.N_ = N, r.v_ = N, r.u_ = 0;
  return r;
}

void PAdic::normalize(const Int& raw, long vmin) {
  // raw is the value divided by p^vmin, known mod p^(N_-vmin)
  if (vmin >= N_) { v_ = N_, u_ = 0; return; }
  Int m = ipow(p_, N_ - vmin);
  Int a = mod_floor(raw, m);
  if (a == 0) { v_ = N_, u_ = 0; return; }
  long w = siegel::valuation(a, p_);
  v_ = vmin + w;
  mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), ipow(p_, w).get_mpz_t());
  u_ = mod_floor(a, ipow(p_, N_ - v_));
}

PAdic PAdic::from_int(const Int& a, long p, long N) {
  PAdic r = zero(p, N);
  r.normalize(a, 0);
  return r;
}

PAdic PAdic::from_rat(const Rat& q, long p, long N) {
  PAdic r = zero(p, N);
  if (q == 0) return r;
  long v = siegel::valuation(q, p);
  if (v >= N) return r;
  Int num = q.get_num(), den = q.get_den();
  if (v > 0) mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), ipow(p, v).get_mpz_t());
  if (v < 0) mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), ipow(p, -v).get_mpz_t());
  Int m = ipow(p, N - v);
  r.v_ = v;
  r.u_ = mod_floor(num * inv_mod(den, m), m);
  return r;
}

PAdic PAdic::from_parts(long p, long N, long v, const Int& unit) {
  PAdic r = zero(p, N);
  if (v >= N) return r;
  Int m = ipow(p, N - v);
  Int a = mod_floor(unit, m);
  if (a == 0 || mpz_divisible_ui_p(a.get_mpz_t(), p)) {
    // not a unit: renormalize the full value
    r.normalize(a, v);
    return r;
  }
  r.v_ = v, r.u_ = a;
  return r;
}

Int PAdic::residue() const {
  if (v_ < 0) throw DomainError("residue of a p-adic number with negative valuation");
  if (is_zero()) return 0;
  return mod_floor(u_ * ipow(p_, v_), ipow(p_, N_));
}

Rat PAdic::to_rat() const {
  if (is_zero()) return 0;
  if (v_ >= 0) return Rat(u_ * ipow(p_, v_));
  Rat r(u_, ipow(p_, -v_));
  r.canonicalize();
  return r;
}

PAdic PAdic::with_precision(long N) const {
  if (N >= N_) return *this;
  if (is_zero() || v_ >= N) return zero(p_, N);
  return from_parts(p_, N, v_, u_);
}

PAdic PAdic::operator-() const {
  if (is_zero()) return *this;
  PAdic r = *this;
  r.u_ = mod_floor(-u_, ipow(p_, N_ - v_));
  return r;
}

PAdic operator+(const PAdic& a, const PAdic& b) {
  if (a.p_ != b.p_) throw DomainError("mixing primes");
  long N = std::min(a.N_, b.N_);
  PAdic r = PAdic::zero(a.p_, N);
  long va = std::min(a.v_, N), vb = std::min(b.v_, N);
  long vmin = std::min(va, vb);
  if (vmin >= N) return r;
  Int raw = 0;
  if (!a.is_zero() && a.v_ < N) raw += a.u_ * ipow(a.p_, a.v_ - vmin);
  if (!b.is_zero() && b.v_ < N) raw += b.u_ * ipow(b.p_, b.v_ - vmin);
  r.normalize(raw, vmin);
  return r;
}

PAdic operator*(const PAdic& a, const PAdic& b) {
  if (a.p_ != b.p_) throw DomainError("mixing primes");
  long N = std::min({a.N_, b.N_, a.N_ + b.v_, b.N_ + a.v_});
  PAdic r = PAdic::zero(a.p_, N);
  if (a.is_zero() || b.is_zero()) return r;
  r.normalize(a.u_ * b.u_, a.v_ + b.v_);
  return r;
}

PAdic PAdic::inverse() const {
  if (is_zero()) throw DomainError("division by a p-adic zero");
  long r = N_ - v_;
  PAdic out = zero(p_, -v_ + r);
  out.v_ = -v_;
  out.u_ = inv_mod(u_, ipow(p_, r));
  return out;
}

PAdic operator/(const PAdic& a, const PAdic& b) {
  if (b.is_zero()) throw DomainError("division by a p-adic zero");
  long N = std::min(a.N_ - b.v_, b.N_ + std::min(a.v_, a.N_) - 2 * b.v_);
  PAdic r = PAdic::zero(a.p_, N);
  if (a.is_zero()) return r;
  Int m = ipow(a.p_, std::max<long>(N - (a.v_ - b.v_), 1));
  r.normalize(a.u_ * inv_mod(b.u_, m), a.v_ - b.v_);
  return r;
}

PAdic PAdic::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  PAdic result = from_int(1, p_, N_), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool PAdic::congruent(const PAdic& o, long m) const {
  PAdic d = *this - o;
  if (d.precision() < m) throw PrecisionError("congruence mod p^" + std::to_string(m) + " exceeds precision");
  return d.is_zero() || d.valuation() >= m;
}

std::string PAdic::to_string() const {
  std::ostringstream os;
  os << "PAdic(p=" << p_ << ", N=" << N_ << ", v=" << v_ << ", u=" << u_.get_str() << ")";
  return os.str();
}

// ---------------------------------------------------------------- functions

PAdic teichmuller(const Int& z, long p, long N) {
  check_prime(p);
  if (mpz_divisible_ui_p(z.get_mpz_t(), p)) throw DomainError("teichmuller of a non-unit");
  Int m = ipow(p, N), x = mod_floor(z, m), y;
  for (long i = 0; i <= N + 1; ++i) {
    mpz_powm_ui(y.get_mpz_t(), x.get_mpz_t(), p, m.get_mpz_t());
    if (y == x) break;
    x = y;
  }
  return PAdic::from_int(x, p, N);
}

PAdic angle(const Int& z, long p, long N) { return PAdic::from_int(z, p, N) / teichmuller(z, p, N); }

PAdic padic_log(const PAdic& x) {
  long p = x.p(), N = x.precision();
  PAdic one = PAdic::from_int(1, p, N);
  PAdic y = x - one;
  if (!y.is_zero() && y.valuation() < 1) throw DomainError("log needs an argument in 1+pZ_p");
  if (y.is_zero()) return PAdic::zero(p, N);
  // terms y^n/n have valuation >= n - log_p(n); pad by the largest v_p(n)
  long w = y.valuation(), nmax = 1;
  auto vp_floor = [p](long n) { long e = 0; while (n >= p) n /= p, ++e; return e; };
  while (nmax * w - vp_floor(nmax) < N) ++nmax;
  long pad = vp_floor(nmax) + 1;
  PAdic yy = PAdic::from_parts(p, N + pad, y.valuation(), y.unit());
  // x is only known mod p^N, so the padded digits of yy are a fixed lift
  PAdic sum = PAdic::zero(p, N + pad), term = yy;
  for (long n = 1; n <= nmax; ++n) {
    PAdic t = term / PAdic::from_int(n, p, N + pad);
    sum = (n % 2) ? sum + t : sum - t;
    term = term * yy;
  }
  return sum.with_precision(N);
}

PAdic padic_exp(const PAdic& x) {
  long p = x.p(), N = x.precision();
  if (p == 2) throw DomainError("p = 2 is not supported");
  if (x.is_zero()) return PAdic::from_int(1, p, N);
  if (x.valuation() < 1) throw DomainError("exp needs valuation >= 1");
  long nmax = 1;
  while (nmax - (nmax - 1) / (p - 1) < N + 1) ++nmax;
  long pad = nmax / (p - 1) + 2;
  PAdic xx = PAdic::from_parts(p, N + pad, x.valuation(), x.unit());
  PAdic sum = PAdic::from_int(1, p, N + pad), term = PAdic::from_int(1, p, N + pad);
  for (long n = 1; n <= nmax; ++n) {
    term = term * xx / PAdic::from_int(n, p, N + pad);
    sum = sum + term;
  }
  if (sum.precision() < N) throw PrecisionError("exp lost precision");
  return sum.with_precision(N);
}

PAdic exponent_l(const Int& z, long p, long N) {
  if (p == 2) throw DomainError("p = 2 is not supported");
  PAdic lz = padic_log(angle(z, p, N + 1));
  PAdic lu = padic_log(PAdic::from_int(1 + p, p, N + 1));
  return (lz / lu).with_precision(N);
}

PAdic pow_u(const PAdic& a, long N) {
  long p = a.p();
  PAdic lu = padic_log(PAdic::from_int(1 + p, p, N));
  return padic_exp((a.with_precision(N) * lu).with_precision(N));
}

PAdic eval_point(const ArithPoint& kappa, const Int& z, long N) {
  if (!kappa.wild_trivial())
    throw UnsupportedCharacter("eps of p-power order has values outside Z_p");
  // a tame eps is trivial on 1+pZ_p, so only <z>^k survives
  return angle(z, kappa.p, N).pow(kappa.exponent);
}

}  // namespace siegel
