#pragma once

#include "siegel/eisenstein.hpp"

namespace siegel {

// U_p on a finite free Z_p-module, entries known mod p^N.
struct LinearModel {
  long p = 5;
  long N = 10;
  std::vector<std::vector<PAdic>> rows;
  std::vector<std::string> labels;

  size_t dim() const { return rows.size(); }
  static LinearModel from_ints(long p, long N, const std::vector<std::vector<Int>>& m);
  // entries as residues in [0, p^N)
  std::vector<std::vector<Int>> residues() const;
  std::vector<std::vector<Int>> with_precision_residues(long n) const;
  // throws DomainError unless square with integral entries
  void validate() const;
};

enum class Side { Left, Right, Both };

// a(T1, T4) -> a(pT1, T4), a(T1, pT4) or a(pT1, pT4); the bound on each affected side is divided by p.
QExp2 up_on_qexp(const QExp2& F, Side side, long p);

// e = lim U^{n!} mod p^N, iterating M_{n+1} = M_n^{n+1} until it stops moving.
LinearModel ordinary_projector(const LinearModel& M, long N);
// trace of an idempotent, i.e. its rank
long projector_rank(const LinearModel& e);
bool models_equal(const LinearModel& a, const LinearModel& b, long N);
LinearModel model_mul(const LinearModel& a, const LinearModel& b);

// Kronecker product eL (x) eR
LinearModel tensor_projector(const LinearModel& eL, const LinearModel& eR);

// (U^{2i})^{-1} e U^{2i} F for every i in is, compared mod p^N. The inverse is taken on the
// ordinary part, where it equals U^{m-1} e with U^m = e.
struct TwistReport {
  bool holds = true;
  std::vector<std::vector<PAdic>> images;  // one vector per i
};
TwistReport twist_stability_check(const LinearModel& U, const std::vector<PAdic>& F, const std::vector<long>& is,
                                  long N);

}  // namespace siegel
