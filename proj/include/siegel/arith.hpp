#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

#include "siegel/errors.hpp"

namespace siegel {

using Int = mpz_class;
using Rat = mpq_class;

Int ipow(const Int& base, unsigned long e);
Int ipow(long base, unsigned long e);
// p-adic valuation; the argument must be nonzero.
long valuation(const Int& n, long p);
long valuation(const Rat& q, long p);
Int mod_floor(const Int& a, const Int& m);
Int inv_mod(const Int& a, const Int& m);
bool is_prime(long n);
std::vector<std::pair<long, int>> factorize(long n);
long primitive_root(long p);

// A p-adic number p^v * u at absolute precision N (value known mod p^N).
// Exact zero at precision N is stored with v = N and u = 0.
class PAdic {
 public:
  PAdic() = default;
  static PAdic zero(long p, long N);
  static PAdic from_int(const Int& a, long p, long N);
  static PAdic from_int(long a, long p, long N) { return from_int(Int(a), p, N); }
  static PAdic from_rat(const Rat& q, long p, long N);
  // Builds p^v * unit; unit is reduced mod p^(N-v).
  static PAdic from_parts(long p, long N, long v, const Int& unit);

  long p() const { return p_; }
  long precision() const { return N_; }
  long valuation() const { return v_; }
  const Int& unit() const { return u_; }
  bool is_zero() const { return v_ >= N_; }
  bool is_unit() const { return v_ == 0 && N_ > 0; }

  // Canonical residue in [0, p^N); needs valuation >= 0.
  Int residue() const;
  Rat to_rat() const;
  PAdic with_precision(long N) const;

  PAdic operator-() const;
  PAdic inverse() const;
  PAdic pow(long e) const;
  friend PAdic operator+(const PAdic& a, const PAdic& b);
  friend PAdic operator-(const PAdic& a, const PAdic& b) { return a + (-b); }
  friend PAdic operator*(const PAdic& a, const PAdic& b);
  friend PAdic operator/(const PAdic& a, const PAdic& b);
  PAdic& operator+=(const PAdic& o) { return *this = *this + o; }
  PAdic& operator-=(const PAdic& o) { return *this = *this - o; }
  PAdic& operator*=(const PAdic& o) { return *this = *this * o; }

  // a == b at the smaller of the two precisions.
  friend bool operator==(const PAdic& a, const PAdic& b) { return (a - b).is_zero(); }
  // a ≡ b mod p^m (m must not exceed the common precision).
  bool congruent(const PAdic& o, long m) const;

  std::string to_string() const;

 private:
  void normalize(const Int& raw, long vmin);
  long p_ = 0, N_ = 0, v_ = 0;
  Int u_ = 0;
};

PAdic teichmuller(const Int& z, long p, long N);
PAdic angle(const Int& z, long p, long N);
// Series logarithm on 1 + pZ_p.
PAdic padic_log(const PAdic& x);
// Series exponential, needs valuation >= 1 (p odd).
PAdic padic_exp(const PAdic& x);
PAdic exponent_l(const Int& z, long p, long N);
// u^a with u = 1+p and a in Z_p.
PAdic pow_u(const PAdic& a, long N);

// Element of Q(zeta_m): coordinates in the power basis 1, z, ..., z^(phi(m)-1)
// modulo the m-th cyclotomic polynomial.
class CycNumber {
 public:
  CycNumber() : CycNumber(Rat(0)) {}
  explicit CycNumber(const Rat& r, long m = 1);
  static CycNumber root(long m, long j);
  // sum_e a[e] zeta_m^e for e in [0, m).
  static CycNumber from_powers(long m, const std::vector<Rat>& a);
  static CycNumber from_coeffs(long m, std::vector<Rat> c);

  long order() const { return m_; }
  const std::vector<Rat>& coeffs() const { return c_; }
  CycNumber lift(long M) const;
  bool is_rational() const;
  Rat rational_value() const;
  bool is_zero() const;

  CycNumber operator-() const;
  friend CycNumber operator+(const CycNumber& a, const CycNumber& b);
  friend CycNumber operator-(const CycNumber& a, const CycNumber& b) { return a + (-b); }
  friend CycNumber operator*(const CycNumber& a, const CycNumber& b);
  friend CycNumber operator*(const Rat& r, const CycNumber& a);
  friend CycNumber operator*(const CycNumber& a, const Rat& r) { return r * a; }
  friend CycNumber operator+(const CycNumber& a, const Rat& r) { return a + CycNumber(r); }
  CycNumber& operator+=(const CycNumber& o) { return *this = *this + o; }
  CycNumber& operator*=(const CycNumber& o) { return *this = *this * o; }
  CycNumber pow(unsigned long e) const;
  // zeta -> zeta^a, gcd(a, m) = 1.
  CycNumber galois(long a) const;
  CycNumber conj() const { return galois(-1); }
  // Field norm down to Q, then inverse via the other conjugates.
  CycNumber inverse() const;
  friend bool operator==(const CycNumber& a, const CycNumber& b);

  std::complex<double> to_complex() const;
  // zeta_m -> teichmuller(r)^((p-1)/m) for the least primitive root r mod p.
  PAdic to_padic(long p, long N) const;
  std::string to_string() const;

 private:
  long m_ = 1;
  std::vector<Rat> c_;
};

long euler_phi(long n);
std::vector<Int> cyclotomic_poly(long m);


enum class PointKind { Weight, Cyclotomic };

// z -> eps(z) z^k, restricted to the form the measures need. eps is recorded by
// its value at u = 1+p (p-power root of unity) and an optional tame part
// omega^tame.
struct ArithPoint {
  PointKind kind = PointKind::Weight;
  long exponent = 0;
  long p = 3;
  CycNumber eps_u = CycNumber(Rat(1));
  long tame = 0;

  static ArithPoint weight(long k, long p) { return {PointKind::Weight, k, p, CycNumber(Rat(1)), 0}; }
  static ArithPoint cyclotomic(long t, long p) { return {PointKind::Cyclotomic, t, p, CycNumber(Rat(1)), 0}; }
  bool wild_trivial() const { return eps_u == CycNumber(Rat(1)); }
};

PAdic eval_point(const ArithPoint& kappa, const Int& z, long N);

}  // namespace siegel
