#pragma once

#include <map>
#include <utility>

#include "siegel/bernoulli.hpp"
#include "siegel/siegel_series.hpp"

namespace siegel {

// Level and character data of the twisted Eisenstein series.
// p = 1 means "no p-part" (the unramified series, S built from R alone).
// eps1 is the p-part of the classical character (e.g. omega^{-t}); it is ignored by
// the p-adic families, whose p-part comes from the arithmetic points.
struct EisParams {
  long g = 1;
  long N = 1, N1 = 1, R = 1;
  long p = 1;
  long n = 0;  // twist level p^n
  long L = 1;
  DirichletChar phi, chi1, chip, eps1;
  long t = 1, s = 0, k = 2;

  // checks gcd(R, Np) = 1, N1 | N, k = t + g + s, character moduli
  void validate() const;
};

// Gamma_g(s) = pi^{e} prod_{i=1}^g Gamma(s - (i-1)/2) with e = g(g+1)/4 by default, or
// the usual Siegel normalization e = g(g-1)/4 when siegel_norm is set.
double gamma_g(double s, long g, bool siegel_norm = false);

// sign * rational * 2^two_exp * pi^pi_exp
struct SymConst {
  int sign = 1;
  Rat rational = 1;
  long two_exp = 0;
  Rat pi_exp = 0;
  double to_double() const;
};
// Gamma_m(a) for a a positive half-integer, exactly.
SymConst gamma_g_exact(const Rat& a, long m, bool siegel_norm = false);
// B_{2g}(t) = (-1)^{g(g+t)} 2^{g+2gt} pi^{g+2g^2} / Gamma_{2g}(g + 1/2)
SymConst const_B2g(long t, long g, bool siegel_norm = false);

// (level)^{g(g-1)/2} B_{2g}(t') (2 pi i)^{sg} G(chi)^g, kept factored.
struct AConst {
  Int level_factor = 1;
  SymConst b2g;
  long two_pi_i_power = 0;
  CycNumber gauss;
  std::complex<double> to_complex() const;
};
// A = (R p^n)^{g(g-1)/2} B_{2g}(t) (2 pi i)^{sg} G(chip eps1)^g
AConst prefactor_A(const EisParams& P);
// A* = R^{g(g-1)/2} B_{2g}(k-g) (2 pi i)^{sg} G(chip)^g
AConst prefactor_A_star(const EisParams& P);

// Bracketed inner sum of the Fourier coefficient at (T1, T4), s = 0 only.
CycNumber classical_coeff(const HalfIntMat& T1, const HalfIntMat& T4, const EisParams& P);

struct ITerm {
  BlockI I;
  PAdic value;
};
// one entry per enumerated I, in enumeration order
std::vector<ITerm> family_terms(const HalfIntMat& T1, const HalfIntMat& T4, const ArithPoint& kappa,
                               const ArithPoint& kappap, const EisParams& P, long N);
std::vector<ITerm> improved_terms(const HalfIntMat& T1, const HalfIntMat& T4, const ArithPoint& kappa,
                                 const EisParams& P, long N);

// a_{T1,T4,L}(kappa, kappa') at precision N (P.L twists the indices by L^2).
PAdic family_coeff(const HalfIntMat& T1, const HalfIntMat& T4, const ArithPoint& kappa,
                   const ArithPoint& kappap, const EisParams& P, long N);

// a*_{T1,T4}(kappa); unlike family_coeff it keeps the I with p | det(2T2).
PAdic improved_coeff(const HalfIntMat& T1, const HalfIntMat& T4, const ArithPoint& kappa,
                     const EisParams& P, long N);

// Truncated double q-expansion. Keys are (2T1, 2T4); absent keys are 0.
struct QExp2 {
  long bound1 = 0, bound2 = 0;  // tr T1 <= bound1, tr T4 <= bound2
  std::map<std::pair<IntMatrix, IntMatrix>, PAdic> coeffs;
};

// All half-integral positive semidefinite g x g T with tr T <= B, as 2T, sorted.
std::vector<HalfIntMat> psd_up_to_trace(long g, long B);

QExp2 measure_eval(const ArithPoint& kappa, const ArithPoint& kappap, long B, const EisParams& P,
                   long N);

struct CongruenceWitness {
  bool holds = true;
  PAdic classical, family;
  std::string detail;
};
// Compares the classical coefficient at (p^j T1, p^j T4), mapped to Z_p, with the family
// coefficient at ([k], [t]) there, modulo p^j. Needs s = 0 and a trivial wild part.
CongruenceWitness congruence_check(long j, const HalfIntMat& T1, const HalfIntMat& T4,
                                   const EisParams& P, long N);

struct GammaCheck {
  bool holds = true;
  double max_rel_err = 0;
  std::string detail;
};
// Duplication identity and the pi^{g^2/2} ratio over samples s_i.
GammaCheck gamma_identities_check(long g, const std::vector<double>& samples, bool siegel_norm);

}  // namespace siegel
