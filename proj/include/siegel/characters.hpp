#pragma once

#include <vector>

#include "siegel/arith.hpp"

namespace siegel {

// One cyclic factor of (Z/M)^*: the generator acts through zeta_order^exponent.
struct LocalImage {
  long prime;
  int power;
  long exponent;
  long order;
};

// Dirichlet character mod M stored as a table of exponents of zeta_K
// (-1 marks residues not prime to M).
class DirichletChar {
 public:
  DirichletChar() : exps_{0} {}
  static DirichletChar trivial(long M);
  // images[i] is the exponent for the i-th cyclic generator of local_generators(M).
  static DirichletChar from_images(long M, const std::vector<long>& images);
  static DirichletChar from_table(long M, long K, std::vector<long> exps);
  // Kronecker symbol (D0/.) for a fundamental discriminant D0.
  static DirichletChar kronecker(long D0);
  // omega mod p, normalized so that omega(r) = zeta_{p-1} for the least primitive root r.
  static DirichletChar teichmuller_char(long p);
  // All characters mod M (the full dual group), in generator-image order.
  static std::vector<DirichletChar> all(long M);

  long modulus() const { return M_; }
  long order() const { return K_; }
  long conductor() const { return cond_; }
  bool is_primitive() const { return cond_ == M_; }
  bool is_trivial() const { return cond_ == 1; }
  int parity() const;
  bool is_even() const { return parity() == 1; }

  // exponent of zeta_order at n, or -1 when gcd(n, M) > 1
  long exp_at(const Int& n) const;
  long exp_at(long n) const;
  CycNumber operator()(const Int& n) const;
  CycNumber operator()(long n) const { return (*this)(Int(n)); }

  DirichletChar primitive() const;
  DirichletChar induce(long M) const;
  DirichletChar conj() const;
  DirichletChar pow(long e) const;
  friend DirichletChar operator*(const DirichletChar& a, const DirichletChar& b);
  friend bool operator==(const DirichletChar& a, const DirichletChar& b);

  std::vector<LocalImage> generator_images() const;

 private:
  void finish();
  long M_ = 1, K_ = 1, cond_ = 1;
  std::vector<long> exps_;
};

struct LocalGenerator {
  long prime;
  int power;
  long element;  // a residue mod M, 1 at the other prime powers
  long order;
};
std::vector<LocalGenerator> local_generators(long M);

struct Decomposition {
  DirichletChar chi1, chip, eps1;
};
Decomposition decompose(const DirichletChar& chi, long N1, long R, long p);

CycNumber gauss_sum(const DirichletChar& chi);

using IntMatrix = std::vector<std::vector<long>>;
long det(const IntMatrix& a);

// sum over X in M_g(Z/N) of eta(det X) zeta_N^{tr(A X / L)}; L must divide A.
CycNumber matrix_gauss_sum(const IntMatrix& A, long N, const DirichletChar& eta, long L = 1);
// C^{g(g-1)/2} eta^{-1}(det A') G(eta)^g with A' = A / L, eta primitive mod C.
CycNumber matrix_gauss_closed_form(const IntMatrix& A, const DirichletChar& eta, long L = 1);

struct QuadChar {
  DirichletChar chi;
  long D0;
  long f;
};
// D = D0 f^2 with D0 fundamental; D must be a discriminant (0 or 1 mod 4).
QuadChar quad_char_sigma(long D);

}  // namespace siegel
