#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "siegel/arith.hpp"

namespace siegel {

long euler_phi(long n) {
  long r = n;
  for (auto [q, e] : factorize(n)) r = r / q * (q - 1);
  return r;
}

namespace {

std::vector<Int> poly_divexact(std::vector<Int> a, const std::vector<Int>& b) {
  // both low-degree-first, b monic
  size_t db = b.size() - 1;
  std::vector<Int> q(a.size() - db, 0);
  for (size_t i = a.size(); i-- > db;) {
    Int c = a[i];
    q[i - db] = c;
    for (size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

std::vector<Int> compute_phi(long m) {
  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
  std::vector<Int> num(m + 1, 0);
  num[0] = -1, num[m] = 1;
  for (long d = 1; d < m; ++d)
    if (m % d == 0) num = poly_divexact(num, compute_phi(d));
  return num;
}

struct CycTables {
  std::vector<Int> phi;                // Phi_m, low degree first
  std::vector<std::vector<Int>> xpow;  // x^e mod Phi_m for e in [0, m)
};

std::mutex g_mutex;
std::map<long, CycTables> g_tables;

const CycTables& tables(long m) {
  std::lock_guard<std::mutex> lock(g_mutex);
  auto it = g_tables.find(m);
  if (it != g_tables.end()) return it->second;
  CycTables t;
  std::vector<Int> num = compute_phi(m);
  t.phi = num;
  long deg = static_cast<long>(num.size()) - 1;
  t.xpow.assign(m, std::vector<Int>(deg, 0));
  std::vector<Int> cur(deg, 0);
  if (deg > 0) cur[0] = 1;
  for (long e = 0; e < m; ++e) {
    t.xpow[e] = cur;
    // multiply by x and reduce
    std::vector<Int> nxt(deg, 0);
    Int top = deg > 0 ? cur[deg - 1] : Int(0);
    for (long i = deg - 1; i >= 1; --i) nxt[i] = cur[i - 1];
    if (deg > 0) nxt[0] = 0;
    for (long i = 0; i < deg; ++i) nxt[i] -= top * num[i];
    cur = nxt;
  }
  return g_tables.emplace(m, std::move(t)).first->second;
}

}  // namespace

std::vector<Int> cyclotomic_poly(long m) {
  return tables(m).phi;
}

CycNumber::CycNumber(const Rat& r, long m) : m_(m), c_(euler_phi(m), Rat(0)) { c_[0] = r; }

CycNumber CycNumber::from_coeffs(long m, std::vector<Rat> c) {
  CycNumber z(Rat(0), m);
  if (static_cast<long>(c.size()) != euler_phi(m)) throw DomainError("coefficient count must be phi(m)");
  z.c_ = std::move(c);
  return z;
}

CycNumber CycNumber::from_powers(long m, const std::vector<Rat>& a) {
  CycNumber z(Rat(0), m);
  if (m == 1) {
    for (auto& x : a) z.c_[0] += x;
    return z;
  }
  const auto& t = tables(m);
  for (long e = 0; e < static_cast<long>(a.size()); ++e) {
    if (a[e] == 0) continue;
    const auto& xp = t.xpow[e % m];
    for (size_t i = 0; i < xp.size(); ++i)
      if (xp[i] != 0) z.c_[i] += a[e] * xp[i];
  }
  return z;
}

CycNumber CycNumber::root(long m, long j) {
  std::vector<Rat> a(m, Rat(0));
  a[((j % m) + m) % m] = 1;
  return from_powers(m, a);
}

CycNumber CycNumber::lift(long M) const {
  if (M == m_) return *this;
  if (M % m_) throw DomainError("lift target must be a multiple of the order");
  std::vector<Rat> a(M, Rat(0));
  long step = M / m_;
  for (size_t i = 0; i < c_.size(); ++i) a[i * step] = c_[i];
  return from_powers(M, a);
}

bool CycNumber::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat CycNumber::rational_value() const {
  if (!is_rational()) throw DomainError("not a rational number");
  return c_[0];
}

bool CycNumber::is_zero() const {
  for (auto& x : c_)
    if (x != 0) return false;
  return true;
}

CycNumber CycNumber::operator-() const {
  CycNumber r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycNumber operator+(const CycNumber& a, const CycNumber& b) {
  long M = std::lcm(a.m_, b.m_);
  CycNumber x = a.lift(M), y = b.lift(M);
  for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
  return x;
}

CycNumber operator*(const Rat& r, const CycNumber& a) {
  CycNumber x = a;
  for (auto& c : x.c_) c *= r;
  return x;
}

CycNumber operator*(const CycNumber& a, const CycNumber& b) {
  if (a.is_rational()) return a.c_[0] * b;
  if (b.is_rational()) return b.c_[0] * a;
  long M = std::lcm(a.m_, b.m_);
  CycNumber x = a.lift(M), y = b.lift(M);
  std::vector<Rat> acc(M, Rat(0));
  for (size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i] == 0) continue;
    for (size_t j = 0; j < y.c_.size(); ++j)
      if (y.c_[j] != 0) acc[(i + j) % M] += x.c_[i] * y.c_[j];
  }
  return CycNumber::from_powers(M, acc);
}

CycNumber CycNumber::pow(unsigned long e) const {
  CycNumber r(Rat(1), m_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

CycNumber CycNumber::galois(long a) const {
  a = ((a % m_) + m_) % m_;
  if (std::gcd(a, m_) != 1) throw DomainError("galois exponent must be prime to the order");
  std::vector<Rat> acc(m_, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) acc[(i * a) % m_] += c_[i];
  return from_powers(m_, acc);
}

CycNumber CycNumber::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  // product of the nontrivial conjugates divided by the norm
  CycNumber others(Rat(1), m_);
  for (long a = 2; a < m_; ++a)
    if (std::gcd(a, m_) == 1) others = others * galois(a);
  Rat norm = (*this * others).rational_value();
  return Rat(1) / norm * others;
}

bool operator==(const CycNumber& a, const CycNumber& b) { return (a - b).is_zero(); }

std::complex<double> CycNumber::to_complex() const {
  std::complex<double> z = std::polar(1.0, 2.0 * M_PI / m_), acc = 0, w = 1;
  for (auto& c : c_) {
    acc += c.get_d() * w;
    w *= z;
  }
  return acc;
}

PAdic CycNumber::to_padic(long p, long N) const {
  if (is_rational()) return PAdic::from_rat(c_[0], p, N);
  if ((p - 1) % m_) throw UnsupportedCharacter("order " + std::to_string(m_) + " does not divide p-1");
  PAdic z = teichmuller(primitive_root(p), p, N).pow((p - 1) / m_);
  PAdic acc = PAdic::zero(p, N), w = PAdic::from_int(1, p, N);
  for (auto& c : c_) {
    if (c != 0) acc += PAdic::from_rat(c, p, N) * w;
    w = w * z;
  }
  return acc;
}

std::string CycNumber::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].get_str() << ")";
    if (i) os << "*z" << m_ << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace siegel
