#include "siegel/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>

namespace siegel {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_p_power(long m, long p) {
  if (m < 1) return false;
  if (p <= 1) return m == 1;
  while (m % p == 0) m /= p;
  return m == 1;
}

long pp(const EisParams& P) { return P.p > 1 ? P.p : 1; }

// sigma for the quadratic space 2I of rank 2g
DirichletChar sigma_of(const HalfIntMat& I, long g) {
  Int D = I.det2();
  if (g % 2) D = -D;
  return quad_char_sigma(D.get_si()).chi;
}

std::string mat_str(const IntMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < m.size(); ++i) {
    os << (i ? ",[" : "[");
    for (size_t j = 0; j < m[i].size(); ++j) os << (j ? "," : "") << m[i][j];
    os << "]";
  }
  os << "]";
  return os.str();
}

PAdic cyc_padic(const CycNumber& z, long p, long N) { return z.to_padic(p, N); }

// kappa(z) for a weight point: teich(z)^tame z^k (p-unit z, wild part trivial)
PAdic eval_full(const ArithPoint& kappa, long z, long N) {
  if (!kappa.wild_trivial()) throw UnsupportedCharacter("wild eps is not evaluable p-adically");
  PAdic x = PAdic::from_int(z, kappa.p, N).pow(kappa.exponent);
  if (kappa.tame) x *= teichmuller(Int(z), kappa.p, N).pow(kappa.tame);
  return x;
}

PAdic angle_pow(long z, long e, long p, long N) { return angle(Int(z), p, N).pow(e); }

double log_gamma_g(double s, long g, bool siegel_norm) {
  double e = siegel_norm ? g * (g - 1) / 4.0 : g * (g + 1) / 4.0;
  double r = e * std::log(kPi);
  for (long i = 1; i <= g; ++i) r += std::lgamma(s - (i - 1) / 2.0);
  return r;
}

}  // namespace

void EisParams::validate() const {
  if (g < 1) throw DomainError("g must be positive");
  if (N < 1 || N1 < 1 || R < 1 || L < 1 || n < 0) throw DomainError("levels must be positive");
  if (p != 1 && !is_prime(p)) throw DomainError("p must be prime (or 1 for no p-part)");
  if (std::gcd(R, N * p) != 1) throw DomainError("gcd(R, Np) must be 1");
  if (N % N1) throw DomainError("N1 must divide N");
  if (k != t + g + s) throw DomainError("k must equal t + g + s");
  if (s < 0) throw DomainError("s must be nonnegative");
  if (N1 % chi1.modulus()) throw DomainError("chi1 must be defined mod N1");
  if (R % chip.modulus()) throw DomainError("chi' must be defined mod R");
  if ((N * pp(*this)) % phi.modulus()) throw DomainError("phi must be defined mod Np");
  if (!is_p_power(eps1.modulus(), p)) throw DomainError("eps1 must have p-power modulus");
  if (!is_p_power(L, p)) throw DomainError("L must be a power of p");
}

double gamma_g(double s, long g, bool siegel_norm) {
  if (g < 1) throw DomainError("g must be positive");
  double r = std::pow(kPi, siegel_norm ? g * (g - 1) / 4.0 : g * (g + 1) / 4.0);
  for (long i = 1; i <= g; ++i) {
    double x = s - (i - 1) / 2.0;
    if (x <= 0 && x == std::floor(x)) throw PoleError("Gamma has a pole at " + std::to_string(x));
    r *= std::tgamma(x);
  }
  return r;
}

double SymConst::to_double() const {
  return sign * rational.get_d() * std::ldexp(1.0, two_exp) * std::pow(kPi, pi_exp.get_d());
}

SymConst gamma_g_exact(const Rat& a, long m, bool siegel_norm) {
  SymConst r;
  r.pi_exp = Rat(siegel_norm ? m * (m - 1) : m * (m + 1), 4);
  for (long i = 1; i <= m; ++i) {
    Rat x = a - Rat(i - 1, 2);
    x.canonicalize();
    if (x <= 0) throw DomainError("gamma_g_exact needs positive arguments");
    if (x.get_den() == 1) {
      // (x-1)!
      Int f = 1;
      for (long j = 2; j < x.get_num().get_si(); ++j) f *= j;
      r.rational *= f;
    } else if (x.get_den() == 2) {
      // Gamma(n + 1/2) = (2n)! / (4^n n!) sqrt(pi)
      long nn = Rat(x - Rat(1, 2)).get_num().get_si();
      Int num = 1, den = 1;
      for (long j = 2; j <= 2 * nn; ++j) num *= j;
      for (long j = 2; j <= nn; ++j) den *= j;
      den *= ipow(4, nn);
      r.rational *= Rat(num, den);
      r.pi_exp += Rat(1, 2);
    } else {
      throw DomainError("gamma_g_exact needs half-integer arguments");
    }
  }
  r.rational.canonicalize();
  r.pi_exp.canonicalize();
  return r;
}

SymConst const_B2g(long t, long g, bool siegel_norm) {
  if (t < 1) throw DomainError("B_2g(t) needs t >= 1");
  SymConst G = gamma_g_exact(Rat(2 * g + 1, 2), 2 * g, siegel_norm);
  SymConst r;
  r.sign = ((g * (g + t)) % 2) ? -1 : 1;
  r.two_exp = g + 2 * g * t;
  r.rational = 1 / G.rational;
  r.pi_exp = Rat(g + 2 * g * g) - G.pi_exp;
  return r;
}

std::complex<double> AConst::to_complex() const {
  std::complex<double> tpi(0, 2 * kPi);
  return level_factor.get_d() * b2g.to_double() * std::pow(tpi, static_cast<double>(two_pi_i_power)) *
         gauss.to_complex();
}

AConst prefactor_A(const EisParams& P) {
  AConst a;
  long h = P.g * (P.g - 1) / 2;
  a.level_factor = ipow(Int(P.R) * ipow(pp(P), P.n), h);
  a.b2g = const_B2g(P.t, P.g);
  a.two_pi_i_power = P.s * P.g;
  a.gauss = gauss_sum(P.chip * P.eps1).pow(P.g);
  return a;
}

AConst prefactor_A_star(const EisParams& P) {
  AConst a;
  a.level_factor = ipow(P.R, P.g * (P.g - 1) / 2);
  a.b2g = const_B2g(P.k - P.g, P.g);
  a.two_pi_i_power = P.s * P.g;
  a.gauss = gauss_sum(P.chip).pow(P.g);
  return a;
}

CycNumber classical_coeff(const HalfIntMat& T1, const HalfIntMat& T4, const EisParams& P) {
  P.validate();
  if (P.s != 0) throw DomainError("the classical coefficient is only available at s = 0");
  long g = P.g, t = P.t;
  DirichletChar killS = DirichletChar::trivial(P.R * pp(P));
  DirichletChar chi = P.chi1 * P.chip * P.eps1 * killS;
  DirichletChar phichi = P.phi * chi;
  DirichletChar twist = (P.chip * P.eps1 * killS).conj();
  DirichletChar chi1N = P.chi1.induce(P.N);

  CycNumber total(Rat(0));
  for (auto& I : enumerate_I(T1, T4, P.L)) {
    long D2 = det(I.T2x2);
    CycNumber w = twist(D2);
    if (w.is_zero()) continue;
    if (P.N > 1) w *= matrix_gauss_sum(I.T2x2, P.N, chi1N);
    if (w.is_zero()) continue;
    HalfIntMat A = I.assembled();
    CycNumber Lval = L_neg(t, sigma_of(A, g) * phichi);
    if (Lval.is_zero()) continue;
    CycNumber inner(Rat(0));
    for (auto& cr : d_cosets(A)) {
      CycNumber c = phichi(cr.d).pow(2);
      if (c.is_zero()) continue;
      c *= CycNumber(Rat(ipow(cr.d, 2 * t - 1)));
      HalfIntMat J = coset_transform(A, cr.G);
      for (auto [q, e] : factorize(J.det2().get_si())) {
        Rat qp = t - g - 1 >= 0 ? Rat(ipow(q, t - g - 1)) : Rat(1, ipow(q, g + 1 - t));
        c *= poly_eval(siegel_poly_Bq(J, q), phichi(q) * qp);
      }
      inner += c;
    }
    total += w * inner * Lval;
  }
  return total;
}

std::vector<ITerm> family_terms(const HalfIntMat& T1, const HalfIntMat& T4, const ArithPoint& kappa,
                               const ArithPoint& kappap, const EisParams& P, long N) {
  P.validate();
  long p = P.p, g = P.g, t = kappap.exponent;
  if (p < 3) throw DomainError("the p-adic families need an odd prime p");
  if (kappa.p != p || kappap.p != p) throw DomainError("arithmetic points live at a different prime");
  if (!kappa.wild_trivial() || !kappap.wild_trivial())
    throw UnsupportedCharacter("wild eps is not evaluable p-adically");
  DirichletChar chi = P.chi1 * P.chip;
  DirichletChar phichi = P.phi * chi;
  DirichletChar chipinv = P.chip.conj();

  std::vector<ITerm> out;
  for (auto& I : enumerate_I(T1, T4, P.L)) {
    out.push_back({I, PAdic::zero(p, N)});
    long D2 = det(I.T2x2);
    // terms with p | det(2T2) (including det = 0) vanish
    if (D2 == 0 || D2 % p == 0) continue;
    CycNumber cw = chipinv(D2);
    if (cw.is_zero()) continue;
    HalfIntMat A = I.assembled();
    DirichletChar eta = sigma_of(A, g) * phichi;
    // L_p vanishes identically for odd eta
    if (!eta.is_even()) continue;
    PAdic Lp;
    try {
      Lp = kl_eval(kappap, eta, N);
    } catch (const PoleError& e) {
      throw PoleError("pole in the I-term 2I = " + mat_str(A.two) + ": " + e.what(), e.residue);
    }
    PAdic w = eval_full(kappa, D2, N) * PAdic::from_int(D2, p, N).pow(-g) * angle_pow(D2, -t, p, N) *
              cyc_padic(cw, p, N);
    PAdic inner = PAdic::zero(p, N);
    for (auto& cr : d_cosets(A)) {
      if (cr.d % p == 0) continue;
      CycNumber c = phichi(cr.d).pow(2);
      if (c.is_zero()) continue;
      PAdic term = cyc_padic(c, p, N) * PAdic::from_int(cr.d, p, N).inverse() * angle_pow(cr.d, 2 * t, p, N);
      HalfIntMat J = coset_transform(A, cr.G);
      for (auto [q, e] : factorize(J.det2().get_si())) {
        Poly B = siegel_poly_Bq(J, q);
        PAdic X = PAdic::zero(p, N);
        if (q != p) {
          CycNumber cq = phichi(q);
          if (!cq.is_zero())
            X = cyc_padic(cq, p, N) * angle_pow(q, t, p, N) * PAdic::from_int(q, p, N).pow(-g - 1);
        }
        term *= poly_eval(B, X);
      }
      inner += term;
    }
    out.back().value = (w * inner * Lp).with_precision(N);
  }
  return out;
}

PAdic family_coeff(const HalfIntMat& T1, const HalfIntMat& T4, const ArithPoint& kappa,
                   const ArithPoint& kappap, const EisParams& P, long N) {
  PAdic total = PAdic::zero(P.p, N);
  for (auto& x : family_terms(T1, T4, kappa, kappap, P, N)) total += x.value;
  return total.with_precision(N);
}

std::vector<ITerm> improved_terms(const HalfIntMat& T1, const HalfIntMat& T4, const ArithPoint& kappa,
                                 const EisParams& P, long N) {
  P.validate();
  long p = P.p, g = P.g, k = kappa.exponent;
  if (p < 3) throw DomainError("the p-adic families need an odd prime p");
  if (kappa.p != p) throw DomainError("arithmetic point lives at a different prime");
  if (!kappa.wild_trivial()) throw UnsupportedCharacter("wild eps is not evaluable p-adically");
  DirichletChar chi = P.chi1 * P.chip;
  DirichletChar phichi = P.phi * chi;
  DirichletChar chiinv = chi.conj();
  ArithPoint shifted = kappa;
  shifted.kind = PointKind::Cyclotomic;
  shifted.exponent = k - g;

  std::vector<ITerm> out;
  for (auto& I : enumerate_I(T1, T4, P.L)) {
    out.push_back({I, PAdic::zero(p, N)});
    long D2 = det(I.T2x2);
    // p | det(2T2) is kept here
    CycNumber cw = chiinv(D2);
    if (cw.is_zero()) continue;
    HalfIntMat A = I.assembled();
    DirichletChar eta = sigma_of(A, g) * phichi;
    if (!eta.is_even()) continue;
    PAdic Lp;
    try {
      Lp = kl_eval(shifted, eta, N);
    } catch (const PoleError& e) {
      throw PoleError("pole in the I-term 2I = " + mat_str(A.two) + ": " + e.what(), e.residue);
    }
    PAdic inner = PAdic::zero(p, N);
    for (auto& cr : d_cosets(A)) {
      // <2|det G|> only exists for p-units
      if (cr.d % p == 0) continue;
      CycNumber c = phichi(cr.d).pow(2);
      if (c.is_zero()) continue;
      PAdic term = cyc_padic(c, p, N) * PAdic::from_int(cr.d, p, N).pow(-1 - 2 * g) *
                   angle_pow(2 * cr.d, k, p, N);
      HalfIntMat J = coset_transform(A, cr.G);
      for (auto [q, e] : factorize(J.det2().get_si())) {
        Poly B = siegel_poly_Bq(J, q);
        PAdic X = PAdic::zero(p, N);
        if (q != p) {
          CycNumber cq = phichi(q);
          if (!cq.is_zero())
            X = cyc_padic(cq, p, N) * angle_pow(q, k, p, N) * PAdic::from_int(q, p, N).inverse();
        }
        term *= poly_eval(B, X);
      }
      inner += term;
    }
    out.back().value = (cyc_padic(cw, p, N) * inner * Lp).with_precision(N);
  }
  return out;
}

PAdic improved_coeff(const HalfIntMat& T1, const HalfIntMat& T4, const ArithPoint& kappa,
                     const EisParams& P, long N) {
  PAdic total = PAdic::zero(P.p, N);
  for (auto& x : improved_terms(T1, T4, kappa, P, N)) total += x.value;
  return total.with_precision(N);
}

std::vector<HalfIntMat> psd_up_to_trace(long g, long B) {
  std::vector<HalfIntMat> out;
  std::vector<long> diag(g, 0);
  std::function<void(long, long)> rec_diag;
  std::function<void(IntMatrix&, size_t)> rec_off;
  std::vector<std::pair<size_t, size_t>> cells;
  for (long i = 0; i < g; ++i)
    for (long j = i + 1; j < g; ++j) cells.push_back({i, j});
  rec_off = [&](IntMatrix& m, size_t c) {
    if (c == cells.size()) {
      HalfIntMat T(m);
      if (T.positive_semidefinite()) out.push_back(T);
      return;
    }
    auto [i, j] = cells[c];
    // |2T_ij| <= 2 sqrt(T_ii T_jj)
    long b = static_cast<long>(std::sqrt(static_cast<double>(m[i][i] * m[j][j]))) + 1;
    for (long x = -b; x <= b; ++x) {
      m[i][j] = m[j][i] = x;
      rec_off(m, c + 1);
    }
    m[i][j] = m[j][i] = 0;
  };
  rec_diag = [&](long i, long left) {
    if (i == g) {
      IntMatrix m(g, std::vector<long>(g, 0));
      for (long a = 0; a < g; ++a) m[a][a] = 2 * diag[a];
      rec_off(m, 0);
      return;
    }
    for (long a = 0; a <= left; ++a) {
      diag[i] = a;
      rec_diag(i + 1, left - a);
    }
  };
  rec_diag(0, B);
  std::sort(out.begin(), out.end(), [](const HalfIntMat& a, const HalfIntMat& b) { return a.two < b.two; });
  return out;
}

QExp2 measure_eval(const ArithPoint& kappa, const ArithPoint& kappap, long B, const EisParams& P, long N) {
  QExp2 q;
  q.bound1 = q.bound2 = B;
  auto Ts = psd_up_to_trace(P.g, B);
  for (auto& T1 : Ts)
    for (auto& T4 : Ts) q.coeffs[{T1.two, T4.two}] = family_coeff(T1, T4, kappa, kappap, P, N);
  return q;
}

CongruenceWitness congruence_check(long j, const HalfIntMat& T1, const HalfIntMat& T4, const EisParams& P,
                                   long N) {
  if (P.s != 0) throw DomainError("congruence_check is only available at s = 0");
  if (P.p < 3) throw DomainError("congruence_check needs an odd prime p");
  if (j < 0 || j > N) throw DomainError("need 0 <= j <= precision");
  long p = P.p, t = P.t;
  long pj = ipow(p, j).get_si();
  HalfIntMat A1 = T1.scaled(pj), A4 = T4.scaled(pj);

  EisParams Pc = P;
  Pc.L = 1;
  Pc.n = 0;
  Pc.eps1 = DirichletChar::teichmuller_char(p).pow(-t);
  EisParams Pf = Pc;
  Pf.eps1 = DirichletChar::trivial(1);

  CongruenceWitness w;
  w.classical = classical_coeff(A1, A4, Pc).to_padic(p, N);
  w.family = family_coeff(A1, A4, ArithPoint::weight(P.k, p), ArithPoint::cyclotomic(t, p), Pf, N);
  w.holds = w.classical.congruent(w.family, j);
  std::ostringstream os;
  os << "indices " << mat_str(A1.two) << ", " << mat_str(A4.two) << ": classical " << w.classical.to_string()
     << ", family " << w.family.to_string() << " mod " << p << "^" << j;
  w.detail = os.str();
  return w;
}

GammaCheck gamma_identities_check(long g, const std::vector<double>& samples, bool siegel_norm) {
  GammaCheck r;
  auto track = [&](double lhs_log, double rhs_log, const std::string& what) {
    double err = std::fabs(std::expm1(lhs_log - rhs_log));
    if (err > r.max_rel_err) r.max_rel_err = err;
    if (err > 1e-10) {
      r.holds = false;
      if (r.detail.empty()) r.detail = what;
    }
  };
  for (double s : samples) {
    if (s - (g - 1) / 2.0 <= 0 || 2 * s - g + 1 <= 0) throw DomainError("sample too close to a pole");
    double lhs = log_gamma_g(s, g, siegel_norm) + log_gamma_g(s + 0.5, g, siegel_norm);
    double rhs = (g * (g - 1) / 2.0 + g / 2.0) * std::log(kPi) + (g * (g + 1) / 2.0 - 2.0 * g * s) * std::log(2.0);
    for (long i = 1; i <= g; ++i) rhs += std::lgamma(2 * s - i + 1);
    track(lhs, rhs, "duplication fails at s = " + std::to_string(s));
  }
  double ratio = log_gamma_g(g + 0.5, 2 * g, siegel_norm) - log_gamma_g(g + 0.5, g, siegel_norm) -
                 log_gamma_g((g + 1) / 2.0, g, siegel_norm);
  track(ratio, g * g / 2.0 * std::log(kPi), "ratio identity fails");
  return r;
}

}  // namespace siegel
