#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>

#include "siegel/characters.hpp"

namespace siegel {

// Local data of a Siegel eigenform of genus g and weight k.
struct SatakeData {
  long g = 1, p = 3, k = 2;
  std::vector<PAdic> beta;  // beta_1..beta_g at p
  PAdic alpha_p;            // U_p eigenvalue
  DirichletChar phi;
  std::map<long, std::vector<CycNumber>> alpha_q;  // alpha_{q,1..} away from p
  std::set<long> bad;                              // primes dividing the level
  bool monodromy_nonzero = true;                   // the (g, g+1) entry of N, supplied

  // prod beta_i = p^{g(g+1)/2 - gk} alpha_p^2 and every beta_i p^{k-i} a unit
  void validate() const;
};

// Good q: (1 - phi(q)T) prod (1 - phi(q) a^{-1} T)(1 - phi(q) a T); bad q: prod (1 - a T);
// evaluated at T = chi_q q^{-s}.
CycNumber euler_Dq(long q, const SatakeData& d, const CycNumber& chi_q, long s);

// c is the value at p of the combined character (0 when it is ramified at p)
PAdic euler_E1(const SatakeData& d, const PAdic& c, long t);
PAdic euler_E(const SatakeData& d, const PAdic& c, long t);
// prod_{i=2}^g (1 - beta_i^{-1} p^{-1}) / prod_{i=1}^g (1 - beta_i p)
PAdic euler_Estar(const SatakeData& d);
// p^{ng(1-t)} / (G^g (p^{g(g+1)/2 - gk} alpha_p^2)^n), G the Gauss sum already embedded in Q_p
PAdic epsilon_factor(long n, long t, long k, long g, const PAdic& alpha_p, const PAdic& gauss);

struct SteinbergInfo {
  bool steinberg = false;
  long index = 0;  // 1-based position of beta = p^{-1}, 0 if none
  SatakeData reindexed;
};
SteinbergInfo detect_steinberg(const SatakeData& d);

// Power series in (k - k0), coefficient j of (k - k0)^j.
using PSeries = std::vector<PAdic>;
PSeries series_mul(const PSeries& a, const PSeries& b, size_t order);
PSeries series_inverse(const PSeries& a, size_t order);
PAdic series_eval(const PSeries& a, const PAdic& x);

struct SatakeFamily {
  long g = 1, p = 3, k0 = 2;
  size_t order = 2;  // number of coefficients kept
  long N = 8;
  std::vector<PSeries> B;  // the units B_i(k), i = 1..g

  void validate() const;
};

// prod_i (1 - B_i^{-1} p^{g-i})
PSeries e1_family(const SatakeFamily& f);

struct DerivativeReport {
  PAdic ell;       // -B_g'(k0)
  PAdic cofactor;  // prod_{i<g} (1 - B_i^{-1}(k0) p^{g-i})
  std::optional<PAdic> estar;  // E* from the B_i(k0), when defined
  PAdic lstar;     // L*(k0)
  PAdic d_dk;      // d/dk [E1 L*] at k0
  PAdic d_ds;      // = -d_dk
  PAdic closed;    // ell * cofactor * L*(k0)
  bool closed_matches = false;
  PAdic fd_quotient;  // (F(k0 + h) - F(k0)) / h at h = p^{N/2}, pointwise
  long fd_precision = 0;
  bool fd_matches = false;
};
DerivativeReport gs_derivative(const SatakeFamily& f, const PSeries& lstar);

// True iff every sample (k, k - g - 1) of Lp vanishes.
struct VanishingReport {
  bool holds = true;
  std::vector<std::pair<long, PAdic>> values;
};
VanishingReport two_var_vanishing_check(const std::function<PAdic(long k, long s)>& Lp, long g,
                                        const std::vector<long>& ks);

}  // namespace siegel
