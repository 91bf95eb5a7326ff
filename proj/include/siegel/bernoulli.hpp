#pragma once

#include "siegel/characters.hpp"

namespace siegel {

// B_n with B_1 = -1/2, so B_1(x) = x - 1/2.
Rat bernoulli_number(long n);
// Coefficients of B_n(x), low degree first.
std::vector<Rat> bernoulli_poly(long n);

// B_{t,eta} = M^{t-1} sum_{a=1}^{M} eta(a) B_t(a/M), M the modulus of eta (not reduced
// to the conductor). Cached.
CycNumber gen_bernoulli(long t, const DirichletChar& eta);
// L(1-t, eta) = -B_{t,eta}/t; includes the Euler factors at primes dividing M when eta
// is imprimitive.
CycNumber L_neg(long t, const DirichletChar& eta);

// psi = eps_tame * omega^{-t} * eta as a character mod lcm(mod eta, p).
DirichletChar kl_character(const ArithPoint& kp, const DirichletChar& eta);

// Exact interpolated value for L_p(kp, eta): L(1-t, psi) with psi imprimitive at p, i.e.
// (1 - psi_0(p) p^{t-1}) L(1-t, psi_0) times Euler factors at the other primes dividing
// mod(eta) but not the conductor. literal = true uses (1 - psi_0(p)) instead.
CycNumber kl_value(const ArithPoint& kp, const DirichletChar& eta, bool literal = false);
PAdic kl_eval(const ArithPoint& kp, const DirichletChar& eta, long N, bool literal = false);

// Residue at [0] for trivial eta: 1 - 1/p, i.e. lim_{t -> 0} (-t) L_p([t], 1).
PAdic kl_residue(const DirichletChar& eta, long p, long N);

}  // namespace siegel
