#pragma once

#include "siegel/quadforms.hpp"

namespace siegel {

// Polynomials over Q, low degree first, no trailing zeros (zero poly is empty).
using Poly = std::vector<Rat>;
Poly poly_trim(Poly a);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Rat& c);
// exact division; throws PrecisionError when b does not divide a
Poly poly_divexact(const Poly& a, const Poly& b);
Rat poly_eval(const Poly& a, const Rat& x);
CycNumber poly_eval(const Poly& a, const CycNumber& x);
PAdic poly_eval(const Poly& a, const PAdic& x);
std::string poly_to_string(const Poly& a);

// Literal representation density at level nu: q^{nu(m(m+1)/2 - rank m)} times
// #{X in M_{rank x m}(Z/q^nu) : X^t H X = T} with H the split form of even rank
// (a sum of hyperbolic planes) and the congruence taken in the half-integral sense.
// Exhaustive; meant as an oracle.
Rat local_density(const HalfIntMat& T, long q, long nu, long rank);

// Elementary divisor exponents of an m x m matrix over Z/q^nu (capped at nu).
std::vector<long> elementary_divisors(const IntMatrix& S, long q, long nu);

// Truncated Siegel series b_nu(T, X) = sum_{S in Sym_m(Z/q^nu)} e(tr(ST)/q^nu) X^{d(S)},
// with d(S) the q-exponent of the denominator of S/q^nu. b_nu(T, q^{-k}) is the density at
// rank 2k. Raises PrecisionError past the work cap.
Poly density_poly(const HalfIntMat& T, long q, long nu);

// chi_I(q): Kronecker symbol of the fundamental part of (-1)^{m/2} det(2T) at q.
int xi_char(const HalfIntMat& T, long q);

// F(T, X) = b(T, X) / gamma(T, X), stabilized in nu (compare nu0 and nu0 + 1, cap at 6).
Poly siegel_F_density(const HalfIntMat& T, long q);
// Closed binary form (m = 2).
Poly siegel_F_binary(const HalfIntMat& T, long q);
// Binary fast path when m = 2, density engine otherwise.
Poly siegel_F(const HalfIntMat& T, long q);
// Primitive part: F(T) = sum_{G in local cosets} (q^{m+1} X^2)^{v_q(det G)} F^pr(T_G).
Poly siegel_F_primitive(const HalfIntMat& T, long q);

// B_q(X, I) := F^pr(I, X); 1 when q does not divide det(2I).
Poly siegel_poly_Bq(const HalfIntMat& I, long q);

// Cohen-type divisor sum: -N = D0 f^2, L(1-r, chi_D0) sum_{d|f} mu(d) chi(d) d^{r-1} sigma_{2r-1}(f/d).
// N = 0 gives zeta(1-2r); -N not 0,1 mod 4 gives 0.
Rat cohen_oracle(long r, long N);

}  // namespace siegel
