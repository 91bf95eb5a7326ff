#pragma once

#include "siegel/characters.hpp"

namespace siegel {

// A half-integral symmetric T, stored as the integer matrix 2T (even diagonal).
struct HalfIntMat {
  IntMatrix two;  // 2T

  HalfIntMat() = default;
  explicit HalfIntMat(IntMatrix twoT);
  static HalfIntMat zero(size_t m) { return HalfIntMat(IntMatrix(m, std::vector<long>(m, 0))); }
  size_t size() const { return two.size(); }
  Int det2() const;  // det(2T)
  bool positive_definite() const;
  bool positive_semidefinite() const;
  // scale T by c (2T by c as well)
  HalfIntMat scaled(long c) const;
  // gcd of the entries of T (diagonal of T, off-diagonal of 2T)
  long content() const;
};

Int det_int(const IntMatrix& a);

struct BlockI {
  long g = 1;
  long L = 1;
  HalfIntMat T1, T4;
  IntMatrix T2x2;  // 2*T2, g x g integral

  // 2I = [[L^2 2T1, 2T2], [2T2^t, L^2 2T4]]
  HalfIntMat assembled() const;
};

std::vector<BlockI> enumerate_I(const HalfIntMat& T1, const HalfIntMat& T4, long L);

// Row Hermite normal form: upper triangular, positive diagonal, 0 <= G_ij < G_jj for i < j.
// This is the canonical representative of the left coset GL_n(Z) G.
struct CosetRep {
  IntMatrix G;
  long d;
};

// I_G with 2 I_G = G^{-t} (2I) G^{-1}; throws if it is not half-integral.
HalfIntMat coset_transform(const HalfIntMat& I, const IntMatrix& G);
bool in_D(const HalfIntMat& I, const IntMatrix& G);
IntMatrix hermite_normal_form(IntMatrix G);

// GL_n(Z) \ D(I), sorted by (d, G).
std::vector<CosetRep> d_cosets(const HalfIntMat& I);
// the same restricted to det G a power of q (GL_n(Z_q) \ D_q(I))
std::vector<CosetRep> local_cosets(const HalfIntMat& I, long q);

}  // namespace siegel
