#include "siegel/ordinary.hpp"

namespace siegel {

namespace {

using Mat = std::vector<std::vector<Int>>;

Mat mat_mul(const Mat& a, const Mat& b, const Int& mod) {
  size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), l = b.size();
  Mat r(n, std::vector<Int>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < l; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  for (auto& row : r)
    for (auto& x : row) x = mod_floor(x, mod);
  return r;
}

Mat identity(size_t n) {
  Mat r(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

Mat mat_pow(Mat base, Int e, const Int& mod) {
  Mat r = identity(base.size());
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mat_mul(r, base, mod);
    e >>= 1;
    if (e > 0) base = mat_mul(base, base, mod);
  }
  return r;
}

Mat column(const std::vector<Int>& v) {
  Mat c;
  for (auto& x : v) c.push_back({x});
  return c;
}

struct Projector {
  Mat e;
  Int m;  // U^m = e mod p^N
};

Projector project(const LinearModel& M, long N) {
  M.validate();
  Int mod = ipow(M.p, N);
  Mat cur = M.with_precision_residues(N);
  Int m = 1;
  // units of Z/p^N have order (p-1)p^{N-1}, which n! only absorbs once n is about pN
  long cap = N * static_cast<long>(M.dim()) + 10 + M.p * N;
  // M^{(n+1)!} = M^{n!} can hold before the limit (x^{n+1} = x with x a p-power root of
  // unity), so stop on idempotency: an idempotent power of M is e.
  for (long n = 1; n <= cap; ++n) {
    if (mat_mul(cur, cur, mod) == cur) return {cur, m};
    cur = mat_pow(cur, n + 1, mod);
    m *= n + 1;
  }
  throw ConvergenceError("U^{n!} did not stabilize mod p^" + std::to_string(N) + " within " + std::to_string(cap) +
                         " steps");
}

}  // namespace

LinearModel LinearModel::from_ints(long p, long N, const std::vector<std::vector<Int>>& m) {
  LinearModel r;
  r.p = p;
  r.N = N;
  for (auto& row : m) {
    std::vector<PAdic> pr;
    for (auto& x : row) pr.push_back(PAdic::from_int(x, p, N));
    r.rows.push_back(pr);
  }
  return r;
}

void LinearModel::validate() const {
  if (!is_prime(p)) throw DomainError("p must be prime");
  if (N < 1) throw DomainError("precision must be positive");
  for (auto& row : rows) {
    if (row.size() != rows.size()) throw DomainError("U must be square");
    for (auto& x : row)
      if (!x.is_zero() && x.valuation() < 0) throw DomainError("U must be integral");
  }
  if (!labels.empty() && labels.size() != rows.size()) throw DomainError("one label per basis vector");
}

std::vector<std::vector<Int>> LinearModel::residues() const { return with_precision_residues(N); }

std::vector<std::vector<Int>> LinearModel::with_precision_residues(long n) const {
  std::vector<std::vector<Int>> r;
  for (auto& row : rows) {
    std::vector<Int> rr;
    for (auto& x : row) {
      if (x.precision() < n) throw PrecisionError("entry known only mod p^" + std::to_string(x.precision()));
      rr.push_back(x.with_precision(n).residue());
    }
    r.push_back(rr);
  }
  return r;
}

QExp2 up_on_qexp(const QExp2& F, Side side, long p) {
  QExp2 out;
  bool l = side != Side::Right, r = side != Side::Left;
  out.bound1 = l ? F.bound1 / p : F.bound1;
  out.bound2 = r ? F.bound2 / p : F.bound2;
  auto trace = [](const IntMatrix& m) {
    long s = 0;
    for (size_t i = 0; i < m.size(); ++i) s += m[i][i] / 2;
    return s;
  };
  // pT has 2(pT) = p 2T, so divide the stored 2T entries
  auto shrink = [p](IntMatrix m, bool& ok) {
    for (auto& row : m)
      for (auto& x : row) {
        if (x % p) ok = false;
        x /= p;
      }
    return m;
  };
  for (auto& [key, v] : F.coeffs) {
    bool ok = true;
    IntMatrix A1 = l ? shrink(key.first, ok) : key.first;
    IntMatrix A4 = r ? shrink(key.second, ok) : key.second;
    if (!ok || trace(A1) > out.bound1 || trace(A4) > out.bound2) continue;
    out.coeffs[{A1, A4}] = v;
  }
  return out;
}

LinearModel ordinary_projector(const LinearModel& M, long N) {
  Projector pr = project(M, N);
  LinearModel e = LinearModel::from_ints(M.p, N, pr.e);
  e.labels = M.labels;
  return e;
}

long projector_rank(const LinearModel& e) {
  Int mod = ipow(e.p, e.N), tr = 0;
  auto r = e.residues();
  for (size_t i = 0; i < r.size(); ++i) tr += r[i][i];
  tr = mod_floor(tr, mod);
  if (tr > static_cast<long>(r.size())) throw DomainError("not an idempotent: trace is not a small integer");
  return tr.get_si();
}

bool models_equal(const LinearModel& a, const LinearModel& b, long N) {
  return a.dim() == b.dim() && a.with_precision_residues(N) == b.with_precision_residues(N);
}

LinearModel model_mul(const LinearModel& a, const LinearModel& b) {
  if (a.p != b.p || a.dim() != b.dim()) throw DomainError("incompatible models");
  long N = std::min(a.N, b.N);
  return LinearModel::from_ints(a.p, N, mat_mul(a.with_precision_residues(N), b.with_precision_residues(N), ipow(a.p, N)));
}

LinearModel tensor_projector(const LinearModel& eL, const LinearModel& eR) {
  if (eL.p != eR.p) throw DomainError("projectors at different primes");
  eL.validate();
  eR.validate();
  long N = std::min(eL.N, eR.N);
  Int mod = ipow(eL.p, N);
  auto a = eL.with_precision_residues(N), b = eR.with_precision_residues(N);
  size_t n = a.size(), m = b.size();
  Mat r(n * m, std::vector<Int>(n * m));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < m; ++k)
        for (size_t l = 0; l < m; ++l) r[i * m + k][j * m + l] = mod_floor(a[i][j] * b[k][l], mod);
  LinearModel out = LinearModel::from_ints(eL.p, N, r);
  if (!eL.labels.empty() && !eR.labels.empty())
    for (auto& x : eL.labels)
      for (auto& y : eR.labels) out.labels.push_back(x + "|" + y);
  return out;
}

TwistReport twist_stability_check(const LinearModel& U, const std::vector<PAdic>& F, const std::vector<long>& is,
                                  long N) {
  if (F.size() != U.dim()) throw DomainError("F has the wrong dimension");
  Projector pr = project(U, N);
  Int mod = ipow(U.p, N);
  Mat u = U.with_precision_residues(N);
  Mat uinv = mat_mul(mat_pow(u, pr.m - 1, mod), pr.e, mod);
  if (mat_mul(u, uinv, mod) != pr.e) throw DomainError("U is not invertible on the ordinary part");
  std::vector<Int> f;
  for (auto& x : F) {
    if (!x.is_zero() && x.valuation() < 0) throw DomainError("F must be integral");
    f.push_back(x.with_precision(N).residue());
  }
  TwistReport rep;
  Mat first;
  for (long i : is) {
    if (i < 0) throw DomainError("i must be nonnegative");
    Mat v = mat_mul(pr.e, mat_mul(mat_pow(u, 2 * i, mod), column(f), mod), mod);
    Mat w = mat_mul(mat_pow(uinv, 2 * i, mod), v, mod);
    std::vector<PAdic> img;
    for (auto& row : w) img.push_back(PAdic::from_int(row[0], U.p, N));
    rep.images.push_back(img);
    if (first.empty())
      first = w;
    else if (w != first)
      rep.holds = false;
  }
  return rep;
}

}  // namespace siegel
