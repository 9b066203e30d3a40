#include "obstr/zmod.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>

namespace obstr {

namespace {

u64 pow_u64(u64 b, unsigned e) {
  u64 r = 1;
  while (e--) {
    if (b != 0 && r > UINT64_MAX / b) throw ZModError("order overflow");
    r *= b;
  }
  return r;
}

}  // namespace

u64 POrder::value() const {
  return pow_u64(p, exp);
}

std::string POrder::str() const {
  std::string s = std::to_string(p) + "^" + std::to_string(exp);
  // decimal value when small enough to be readable
  if (exp * 64 < 700) {
    long double v = 1;
    for (unsigned i = 0; i < exp; i++) v *= (long double)p;
    if (v < 1e18L) s += " (=" + std::to_string((unsigned long long)(v + 0.5L)) + ")";
  }
  return s;
}

Module::Module(u64 p_, unsigned e_, unsigned r_) : p(p_), e(e_), r(r_) {
  if (p < 2) throw ZModError("p must be prime >= 2");
  for (u64 d = 2; d * d <= p; d++)
    if (p % d == 0) throw ZModError("p must be prime");
  if (e < 1 || r < 1) throw ZModError("need e >= 1 and r >= 1");
  mod = pow_u64(p, e);
  if (mod > (u64(1) << 31)) throw ZModError("modulus too large");
}

bool Module::is_reduced(const Vec& a) const {
  if (a.size() != r) return false;
  for (u64 x : a)
    if (x >= mod) return false;
  return true;
}

Vec vec_add(const Module& m, const Vec& a, const Vec& b) {
  if (a.size() != m.r || b.size() != m.r) throw ZModError("dimension mismatch");
  Vec c(m.r);
  for (unsigned i = 0; i < m.r; i++) c[i] = (a[i] + b[i]) % m.mod;
  return c;
}

Vec vec_sub(const Module& m, const Vec& a, const Vec& b) {
  Vec c(m.r);
  for (unsigned i = 0; i < m.r; i++) c[i] = (a[i] + m.mod - b[i] % m.mod) % m.mod;
  return c;
}

Vec vec_neg(const Module& m, const Vec& a) {
  Vec c(m.r);
  for (unsigned i = 0; i < m.r; i++) c[i] = (m.mod - a[i] % m.mod) % m.mod;
  return c;
}

Vec vec_scale(const Module& m, u64 c, const Vec& a) {
  Vec out(m.r);
  for (unsigned i = 0; i < m.r; i++) out[i] = (c % m.mod) * (a[i] % m.mod) % m.mod;
  return out;
}

unsigned valuation(u64 x, u64 p) {
  unsigned v = 0;
  while (x % p == 0) {
    x /= p;
    v++;
  }
  return v;
}

u64 unit_inverse(u64 u, u64 p, unsigned e) {
  u64 m = pow_u64(p, e);
  // extended euclid on (u, m)
  long long a = (long long)(u % m), b = (long long)m;
  long long x0 = 1, x1 = 0;
  while (b) {
    long long q = a / b;
    long long t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  if (a != 1) throw ZModError("not a unit");
  long long r = x0 % (long long)m;
  if (r < 0) r += (long long)m;
  return (u64)r;
}

// ---- Howell normal form ----
// Row-reduction over Z/p^e.  Pivots are normalized to powers of p; rows below
// a pivot are cleared, entries above are reduced mod the pivot.  When a pivot
// has positive valuation v, the annihilator multiple p^(e-v) * row is pushed
// back so that the row span stays Howell-complete in later columns.
std::vector<Vec> howell_form(u64 p, unsigned e, unsigned ncols, std::vector<Vec> rows) {
  const u64 mod = pow_u64(p, e);
  std::vector<Vec> work;
  for (auto& r : rows) {
    if (r.size() != ncols) throw ZModError("howell: ragged rows");
    bool nz = false;
    for (auto& x : r) {
      x %= mod;
      nz |= (x != 0);
    }
    if (nz) work.push_back(std::move(r));
  }
  std::vector<Vec> out;
  std::vector<unsigned> outviv;
  for (unsigned c = 0; c < ncols; c++) {
    // minimal valuation at column c
    int best = -1;
    unsigned bestv = e + 1;
    for (std::size_t i = 0; i < work.size(); i++) {
      if (work[i][c] == 0) continue;
      unsigned v = valuation(work[i][c], p);
      if (v < bestv) {
        bestv = v;
        best = (int)i;
        if (v == 0) break;
      }
    }
    if (best < 0) continue;
    Vec piv = work[best];
    work.erase(work.begin() + best);
    u64 pv = pow_u64(p, bestv);
    u64 u = piv[c] / pv;  // unit part
    u64 ui = unit_inverse(u, p, e);
    for (auto& x : piv) x = x * ui % mod;
    // eliminate in remaining work rows (their valuation at c is >= bestv)
    for (auto& w : work) {
      if (w[c] == 0) continue;
      u64 q = w[c] / pv;
      for (unsigned j = 0; j < ncols; j++) w[j] = (w[j] + (mod - q * piv[j] % mod)) % mod;
    }
    if (bestv > 0) {
      u64 ann = pow_u64(p, e - bestv);
      Vec aux(ncols);
      bool nz = false;
      for (unsigned j = 0; j < ncols; j++) {
        aux[j] = ann * piv[j] % mod;
        nz |= (aux[j] != 0);
      }
      assert(aux[c] == 0);
      if (nz) work.push_back(std::move(aux));
    }
    out.push_back(std::move(piv));
    outviv.push_back(bestv);
  }
  // reduce entries above each pivot modulo the pivot value
  for (std::size_t i = 0; i < out.size(); i++) {
    unsigned c = 0;
    while (out[i][c] == 0) c++;
    u64 pv = pow_u64(p, outviv[i]);
    for (std::size_t j = 0; j < i; j++) {
      u64 x = out[j][c];
      if (x == 0) continue;
      u64 q = x / pv;  // floor in [0, mod)
      if (q == 0) continue;
      for (unsigned k = 0; k < ncols; k++)
        out[j][k] = (out[j][k] + (mod - q * out[i][k] % mod)) % mod;
    }
  }
  return out;
}

// ---- Aut ----

Aut::Aut(Module m, std::vector<u64> entries) : parent(m), a(std::move(entries)) {
  if (a.size() != (std::size_t)m.r * m.r) throw ZModError("matrix size mismatch");
  for (auto& x : a) x %= m.mod;
}

Aut Aut::identity(const Module& m) {
  std::vector<u64> e((std::size_t)m.r * m.r, 0);
  for (unsigned i = 0; i < m.r; i++) e[i * m.r + i] = 1;
  return Aut(m, std::move(e));
}

bool Aut::is_identity() const {
  for (unsigned i = 0; i < parent.r; i++)
    for (unsigned j = 0; j < parent.r; j++)
      if (at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

bool Aut::invertible() const {
  // rank of the reduction mod p must be r
  const unsigned r = parent.r;
  std::vector<u64> m(a);
  for (auto& x : m) x %= parent.p;
  unsigned rank = 0;
  for (unsigned c = 0; c < r && rank < r; c++) {
    unsigned sel = r;
    for (unsigned i = rank; i < r; i++)
      if (m[i * r + c] % parent.p != 0) {
        sel = i;
        break;
      }
    if (sel == r) continue;
    for (unsigned j = 0; j < r; j++) std::swap(m[rank * r + j], m[sel * r + j]);
    u64 inv = unit_inverse(m[rank * r + c], parent.p, 1);
    for (unsigned j = 0; j < r; j++) m[rank * r + j] = m[rank * r + j] * inv % parent.p;
    for (unsigned i = 0; i < r; i++) {
      if (i == rank || m[i * r + c] == 0) continue;
      u64 f = m[i * r + c];
      for (unsigned j = 0; j < r; j++)
        m[i * r + j] = (m[i * r + j] + (parent.p - f * m[rank * r + j] % parent.p)) % parent.p;
    }
    rank++;
  }
  return rank == r;
}

Aut Aut::operator*(const Aut& rhs) const {
  if (!(parent == rhs.parent)) throw ZModError("mixed parents");
  const unsigned r = parent.r;
  std::vector<u64> c((std::size_t)r * r, 0);
  for (unsigned i = 0; i < r; i++)
    for (unsigned k = 0; k < r; k++) {
      u64 x = at(i, k);
      if (!x) continue;
      for (unsigned j = 0; j < r; j++) c[i * r + j] = (c[i * r + j] + x * rhs.at(k, j)) % parent.mod;
    }
  return Aut(parent, std::move(c));
}

Aut Aut::inverse() const {
  // lift the mod-p inverse by Newton iteration X <- X(2I - AX)
  const unsigned r = parent.r;
  const u64 p = parent.p;
  // invert mod p by gaussian elimination
  std::vector<u64> m(a), inv((std::size_t)r * r, 0);
  for (auto& x : m) x %= p;
  for (unsigned i = 0; i < r; i++) inv[i * r + i] = 1;
  unsigned rank = 0;
  for (unsigned c = 0; c < r; c++) {
    unsigned sel = r;
    for (unsigned i = rank; i < r; i++)
      if (m[i * r + c] != 0) {
        sel = i;
        break;
      }
    if (sel == r) throw ZModError("matrix not invertible");
    for (unsigned j = 0; j < r; j++) {
      std::swap(m[rank * r + j], m[sel * r + j]);
      std::swap(inv[rank * r + j], inv[sel * r + j]);
    }
    u64 f = unit_inverse(m[rank * r + c], p, 1);
    for (unsigned j = 0; j < r; j++) {
      m[rank * r + j] = m[rank * r + j] * f % p;
      inv[rank * r + j] = inv[rank * r + j] * f % p;
    }
    for (unsigned i = 0; i < r; i++) {
      if (i == rank || m[i * r + c] == 0) continue;
      u64 g = m[i * r + c];
      for (unsigned j = 0; j < r; j++) {
        m[i * r + j] = (m[i * r + j] + (p - g * m[rank * r + j] % p)) % p;
        inv[i * r + j] = (inv[i * r + j] + (p - g * inv[rank * r + j] % p)) % p;
      }
    }
    rank++;
  }
  Aut x(parent, std::move(inv));
  Aut id = identity(parent);
  // Newton lifting: each step doubles the p-adic precision
  for (unsigned prec = 1; prec < parent.e; prec *= 2) {
    // x <- x * (2I - a x)
    Aut ax = *this * x;
    std::vector<u64> t((std::size_t)r * r);
    for (unsigned i = 0; i < r; i++)
      for (unsigned j = 0; j < r; j++) {
        u64 v = (i == j ? 2u : 0u);
        t[i * r + j] = (v + parent.mod - ax.at(i, j)) % parent.mod;
      }
    x = x * Aut(parent, std::move(t));
  }
  assert((*this * x).is_identity());
  return x;
}

Aut Aut::pow(u64 k) const {
  Aut r = identity(parent), b = *this;
  while (k) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

std::string Aut::key() const {
  std::string s;
  s.reserve(a.size() * 4);
  for (u64 x : a) {
    for (int b = 0; b < 4; b++) s.push_back((char)((x >> (8 * b)) & 0xff));
  }
  return s;
}

Vec Aut::apply(const Vec& x) const {
  if (x.size() != parent.r) throw ZModError("dimension mismatch");
  Vec y(parent.r, 0);
  for (unsigned i = 0; i < parent.r; i++) {
    u64 acc = 0;
    for (unsigned j = 0; j < parent.r; j++) acc = (acc + at(i, j) * x[j]) % parent.mod;
    y[i] = acc;
  }
  return y;
}

// ---- Subgroup ----

namespace {

Subgroup make_subgroup(const Module& m, std::vector<Vec> howell) {
  Subgroup s{m, {}, {}, {}};
  s.rows = std::move(howell);
  for (auto& row : s.rows) {
    unsigned c = 0;
    while (c < m.r && row[c] == 0) c++;
    if (c == m.r) throw ZModError("internal: zero row in howell form");
    s.pivcol.push_back(c);
    s.pivval.push_back(valuation(row[c], m.p));
  }
  return s;
}

}  // namespace

Subgroup Subgroup::trivial(const Module& m) { return make_subgroup(m, {}); }

Subgroup Subgroup::full(const Module& m) {
  std::vector<Vec> rows;
  for (unsigned i = 0; i < m.r; i++) {
    Vec v(m.r, 0);
    v[i] = 1;
    rows.push_back(v);
  }
  return make_subgroup(m, rows);
}

Subgroup Subgroup::from_generators(const Module& m, const std::vector<Vec>& gens) {
  for (auto& g : gens)
    if (g.size() != m.r) throw ZModError("generator dimension mismatch");
  return make_subgroup(m, howell_form(m.p, m.e, m.r, gens));
}

POrder Subgroup::order() const {
  unsigned exp = 0;
  for (unsigned v : pivval) exp += parent.e - v;
  return {parent.p, exp};
}

bool Subgroup::contains(const Vec& x) const {
  Vec w(x);
  for (auto& c : w) c %= parent.mod;
  for (std::size_t i = 0; i < rows.size(); i++) {
    u64 y = w[pivcol[i]];
    if (y == 0) continue;
    u64 pv = 1;
    for (unsigned k = 0; k < pivval[i]; k++) pv *= parent.p;
    if (y % pv != 0) return false;
    u64 q = y / pv;
    for (unsigned j = 0; j < parent.r; j++)
      w[j] = (w[j] + (parent.mod - q * rows[i][j] % parent.mod)) % parent.mod;
  }
  for (u64 y : w)
    if (y != 0) return false;
  return true;
}

bool Subgroup::contains(const Subgroup& other) const {
  for (auto& row : other.rows)
    if (!contains(row)) return false;
  return true;
}

std::string Subgroup::key() const {
  std::string s;
  for (auto& row : rows)
    for (u64 x : row) {
      for (int b = 0; b < 4; b++) s.push_back((char)((x >> (8 * b)) & 0xff));
    }
  return s;
}

std::vector<Vec> Subgroup::elements(std::size_t cap) const {
  POrder n = order();
  u64 total = 1;
  for (unsigned i = 0; i < n.exp; i++) {
    total *= n.p;
    if (total > cap) throw ZModError("subgroup too large to enumerate");
  }
  std::vector<Vec> out;
  out.reserve(total);
  out.push_back(parent.zero());
  for (std::size_t i = 0; i < rows.size(); i++) {
    u64 roword = 1;
    for (unsigned k = 0; k < parent.e - pivval[i]; k++) roword *= parent.p;
    std::size_t base = out.size();
    Vec acc = parent.zero();
    for (u64 t = 1; t < roword; t++) {
      acc = vec_add(parent, acc, rows[i]);
      for (std::size_t j = 0; j < base; j++) out.push_back(vec_add(parent, out[j], acc));
    }
  }
  return out;
}

std::vector<unsigned> Subgroup::invariant_factors() const {
  // s_j = log_p |{x in S : p^j x = 0}| via intersection with ker(p^j)
  std::vector<unsigned> s(parent.e + 1, 0);
  for (unsigned j = 1; j <= parent.e; j++) {
    u64 pj = 1;
    for (unsigned k = 0; k < j; k++) pj *= parent.p;
    std::vector<u64> nm((std::size_t)parent.r * parent.r, 0);
    for (unsigned i = 0; i < parent.r; i++) nm[i * parent.r + i] = pj % parent.mod;
    Subgroup kerpj = preimage(parent, nm, Subgroup::trivial(parent));
    s[j] = intersect(*this, kerpj).order().exp;
  }
  std::vector<unsigned> f;
  for (unsigned j = 1; j <= parent.e; j++) {
    unsigned cnt = s[j] - s[j - 1];  // number of factors with exponent >= j
    f.resize(std::max<std::size_t>(f.size(), cnt), 0);
    for (unsigned i = 0; i < cnt; i++) f[i] = j;
  }
  std::sort(f.rbegin(), f.rend());
  return f;
}

Subgroup sum(const Subgroup& a, const Subgroup& b) {
  if (!(a.parent == b.parent)) throw ZModError("mixed parents");
  std::vector<Vec> rows = a.rows;
  rows.insert(rows.end(), b.rows.begin(), b.rows.end());
  return Subgroup::from_generators(a.parent, rows);
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  if (!(a.parent == b.parent)) throw ZModError("mixed parents");
  const Module& m = a.parent;
  const unsigned r = m.r;
  // rows [g | g] for g in A, [h | 0] for h in B; Howell over 2r columns.
  // Rows with zero left half have right half in A ∩ B, and span it.
  std::vector<Vec> rows;
  for (auto& g : a.rows) {
    Vec v(2 * r);
    for (unsigned j = 0; j < r; j++) {
      v[j] = g[j];
      v[r + j] = g[j];
    }
    rows.push_back(std::move(v));
  }
  for (auto& h : b.rows) {
    Vec v(2 * r, 0);
    for (unsigned j = 0; j < r; j++) v[j] = h[j];
    rows.push_back(std::move(v));
  }
  auto hf = howell_form(m.p, m.e, 2 * r, std::move(rows));
  std::vector<Vec> gens;
  for (auto& row : hf) {
    bool leftzero = true;
    for (unsigned j = 0; j < r; j++) leftzero &= (row[j] == 0);
    if (!leftzero) continue;
    gens.emplace_back(row.begin() + r, row.end());
  }
  return Subgroup::from_generators(m, gens);
}

Subgroup preimage(const Module& m, const std::vector<u64>& nmat, const Subgroup& s) {
  if (nmat.size() != (std::size_t)m.r * m.r) throw ZModError("matrix size mismatch");
  const unsigned r = m.r;
  // rows [N e_i | e_i]; rows [g | 0] for g generating S.
  std::vector<Vec> rows;
  for (unsigned i = 0; i < r; i++) {
    Vec v(2 * r, 0);
    for (unsigned j = 0; j < r; j++) v[j] = nmat[j * r + i] % m.mod;  // (N e_i)_j
    v[r + i] = 1;
    rows.push_back(std::move(v));
  }
  for (auto& g : s.rows) {
    Vec v(2 * r, 0);
    for (unsigned j = 0; j < r; j++) v[j] = g[j];
    rows.push_back(std::move(v));
  }
  auto hf = howell_form(m.p, m.e, 2 * r, std::move(rows));
  std::vector<Vec> gens;
  for (auto& row : hf) {
    bool leftzero = true;
    for (unsigned j = 0; j < r; j++) leftzero &= (row[j] == 0);
    if (!leftzero) continue;
    gens.emplace_back(row.begin() + r, row.end());
  }
  return Subgroup::from_generators(m, gens);
}

Subgroup image(const Module& m, const std::vector<u64>& nmat) {
  if (nmat.size() != (std::size_t)m.r * m.r) throw ZModError("matrix size mismatch");
  std::vector<Vec> cols;
  for (unsigned i = 0; i < m.r; i++) {
    Vec v(m.r);
    for (unsigned j = 0; j < m.r; j++) v[j] = nmat[j * m.r + i] % m.mod;
    cols.push_back(std::move(v));
  }
  return Subgroup::from_generators(m, cols);
}

POrder quotient_order(const Subgroup& sub, const Subgroup& super) {
  if (!super.contains(sub)) throw ZModError("quotient_order: not a contained pair");
  return {super.parent.p, super.order().exp - sub.order().exp};
}

std::vector<u64> aut_minus_one(const Aut& t) {
  std::vector<u64> n = t.a;
  const Module& m = t.parent;
  for (unsigned i = 0; i < m.r; i++) n[i * m.r + i] = (n[i * m.r + i] + m.mod - 1) % m.mod;
  return n;
}

Subgroup fixed_subgroup(const Module& m, const std::vector<Aut>& hs) {
  Subgroup acc = Subgroup::full(m);
  for (auto& h : hs) {
    if (!(h.parent == m)) throw ZModError("mixed parents");
    acc = intersect(acc, preimage(m, aut_minus_one(h), Subgroup::trivial(m)));
  }
  return acc;
}

Subgroup commutator_subgroup(const Module& m, const std::vector<Aut>& hs) {
  // [gh,x] = g[h,x] + [g,x], so generator images already span [H,A]
  Subgroup acc = Subgroup::trivial(m);
  for (auto& h : hs) acc = sum(acc, image(m, aut_minus_one(h)));
  return acc;
}

bool invariant_under(const Subgroup& s, const std::vector<Aut>& hs) {
  for (auto& h : hs)
    for (auto& row : s.rows)
      if (!s.contains(h.apply(row))) return false;
  return true;
}

POrder quotient_fixed_order(const Aut& tau, const Subgroup& astar) {
  const Module& m = tau.parent;
  if (!(astar.parent == m)) throw ZModError("mixed parents");
  // precondition: A* fixed pointwise by tau
  for (auto& row : astar.rows)
    if (tau.apply(row) != row) throw ZModError("A* is not centralized by tau");
  auto n = aut_minus_one(tau);
  Subgroup pre = preimage(m, n, astar);  // {a : [tau,a] in A*}
  unsigned direct = pre.order().exp - astar.order().exp;
  Subgroup aw = sum(astar, image(m, n));
  unsigned formula = m.order().exp - aw.order().exp;
  if (direct != formula) throw ZModError("quotient_fixed_order: route disagreement");
  return {m.p, direct};
}

unsigned jordan_count(const Aut& tau) {
  const Module& m = tau.parent;
  if (m.e != 1) throw ZModError("jordan_count requires an elementary abelian module");
  auto n = aut_minus_one(tau);
  Subgroup c = preimage(m, n, Subgroup::trivial(m));
  Subgroup im = image(m, n);
  unsigned jj = intersect(c, im).order().exp;
  // cross-check: rank(N) - rank(N^2)
  const unsigned r = m.r;
  std::vector<u64> n2((std::size_t)r * r, 0);
  for (unsigned i = 0; i < r; i++)
    for (unsigned k = 0; k < r; k++) {
      if (!n[i * r + k]) continue;
      for (unsigned j = 0; j < r; j++)
        n2[i * r + j] = (n2[i * r + j] + n[i * r + k] * n[k * r + j]) % m.mod;
    }
  unsigned alt = image(m, n).order().exp - image(m, n2).order().exp;
  if (jj != alt) throw ZModError("jordan_count: rank cross-check failed");
  return jj;
}

// ---- quotient module ----

namespace {

// order of x modulo subgroup S: least k with p^k x in S
unsigned order_mod(const Module& m, const Vec& x, const Subgroup& s) {
  Vec cur = x;
  for (unsigned k = 0; k <= m.e; k++) {
    if (s.contains(cur)) return k;
    cur = vec_scale(m, m.p, cur);
  }
  throw ZModError("internal: order_mod");
}

}  // namespace

QuotientModule quotient_module(const Subgroup& a1, const Subgroup& a2,
                               const std::vector<Aut>& hs,
                               const std::vector<Vec>& preferred) {
  const Module& m = a1.parent;
  if (!(a2.parent == m)) throw ZModError("mixed parents");
  if (!a2.contains(a1)) throw ZModError("quotient_module: need A1 <= A2");
  if (!invariant_under(a1, hs)) throw ZModError("quotient_module: A1 not invariant");
  if (!invariant_under(a2, hs)) throw ZModError("quotient_module: A2 not invariant");

  // invariant factors of A2/A1 from the filtration {x in A2 : p^j x in A1}
  unsigned qexp = a2.order().exp - a1.order().exp;
  if (qexp == 0) throw ZModError("quotient_module: trivial quotient");
  std::vector<unsigned> sj(m.e + 1, 0);
  for (unsigned j = 1; j <= m.e; j++) {
    std::vector<u64> pjmat((std::size_t)m.r * m.r, 0);
    u64 pj = 1;
    for (unsigned k = 0; k < j; k++) pj *= m.p;
    for (unsigned i = 0; i < m.r; i++) pjmat[i * m.r + i] = pj % m.mod;
    Subgroup filt = intersect(a2, preimage(m, pjmat, a1));
    sj[j] = filt.order().exp - a1.order().exp;
  }
  std::vector<unsigned> factors;
  for (unsigned j = 1; j <= m.e; j++) {
    unsigned cnt = sj[j] - sj[j - 1];
    factors.resize(std::max<std::size_t>(factors.size(), cnt), 0);
    for (unsigned i = 0; i < cnt; i++) factors[i] = j;
  }
  unsigned f = factors.empty() ? 0 : factors[0];
  for (unsigned x : factors)
    if (x != f) {
      std::string msg = "quotient is not homocyclic; invariant factor exponents:";
      for (unsigned y : factors) msg += " " + std::to_string(y);
      throw ZModError(msg);
    }
  if (qexp % f != 0) throw ZModError("internal: factor bookkeeping");
  unsigned s = qexp / f;

  // greedy basis: elements of A2 of full order p^f modulo the span so far
  std::vector<Vec> cand = preferred;
  for (auto& row : a2.rows) cand.push_back(row);
  std::vector<Vec> basis;
  Subgroup span = a1;
  while (basis.size() < s) {
    bool found = false;
    for (auto& x : cand) {
      if (!a2.contains(x)) {
        if (!basis.empty() || &x - cand.data() >= (long)preferred.size())
          throw ZModError("preferred basis element outside A2");
      }
      if (span.contains(x)) continue;
      if (order_mod(m, x, span) == f && order_mod(m, x, a1) == f) {
        std::vector<Vec> g = span.rows;
        g.push_back(x);
        Subgroup bigger = Subgroup::from_generators(m, g);
        if (bigger.order().exp == span.order().exp + f) {
          basis.push_back(x);
          span = bigger;
          found = true;
          break;
        }
      }
    }
    if (!found) {
      // extend candidates with sums of pairs; homocyclic quotients always
      // admit a basis among small combinations of the generators
      std::size_t before = cand.size();
      for (std::size_t i = 0; i < before; i++)
        for (std::size_t j = i + 1; j < before; j++)
          cand.push_back(vec_add(m, cand[i], cand[j]));
      bool again = false;
      for (std::size_t i = before; i < cand.size(); i++) {
        auto& x = cand[i];
        if (span.contains(x)) continue;
        if (order_mod(m, x, span) == f && order_mod(m, x, a1) == f) {
          std::vector<Vec> g = span.rows;
          g.push_back(x);
          Subgroup bigger = Subgroup::from_generators(m, g);
          if (bigger.order().exp == span.order().exp + f) {
            basis.push_back(x);
            span = bigger;
            again = true;
            break;
          }
        }
      }
      if (!again) throw ZModError("quotient_module: basis extraction failed");
    }
  }
  if (span.order().exp != a2.order().exp || !a2.contains(span) || !span.contains(a2))
    throw ZModError("quotient_module: basis does not span");

  QuotientModule q{Module(m.p, f, s), a1, a2, basis, {}, {}, true};
  q.amod = m;
  q.solver_rows = basis;
  for (auto& row : a1.rows) q.solver_rows.push_back(row);

  for (auto& h : hs) {
    std::vector<u64> mat((std::size_t)s * s, 0);
    for (unsigned j = 0; j < s; j++) {
      Vec img = h.apply(basis[j]);
      Vec co = q.coords(img);
      for (unsigned i = 0; i < s; i++) mat[i * s + j] = co[i];
    }
    Aut ind(q.quotient, std::move(mat));
    q.acts_trivially.push_back(ind.is_identity());
    if (q.acts_trivially.back() && !h.is_identity()) q.faithful = false;
    q.induced.push_back(std::move(ind));
  }
  return q;
}

Vec QuotientModule::coords(const Vec& x) const {
  // solve x = sum c_i b_i + (element of A1) by reduction with multiplier
  // tracking against [solver_rows | I]
  const Module& m = amod;
  const unsigned r = m.r;
  const unsigned n = (unsigned)solver_rows.size();
  std::vector<Vec> rows;
  for (unsigned i = 0; i < n; i++) {
    Vec v(r + n, 0);
    for (unsigned j = 0; j < r; j++) v[j] = solver_rows[i][j];
    v[r + i] = 1;
    rows.push_back(std::move(v));
  }
  auto hf = howell_form(m.p, m.e, r + n, std::move(rows));
  // reduce [x | 0] against hf using the left block pivots
  Vec w(r + n, 0);
  for (unsigned j = 0; j < r; j++) w[j] = x[j] % m.mod;
  for (auto& row : hf) {
    unsigned c = 0;
    while (c < r + n && row[c] == 0) c++;
    if (c >= r) break;  // remaining rows cannot reduce the left block
    if (w[c] == 0) continue;
    u64 pv = 1;
    unsigned v = valuation(row[c], m.p);
    for (unsigned k = 0; k < v; k++) pv *= m.p;
    if (w[c] % pv != 0) throw ZModError("coords: vector not in A2");
    u64 q = w[c] / pv;
    for (unsigned j = 0; j < r + n; j++) w[j] = (w[j] + (m.mod - q * row[j] % m.mod)) % m.mod;
  }
  for (unsigned j = 0; j < r; j++)
    if (w[j] != 0) throw ZModError("coords: vector not in A2");
  // negated multipliers of the basis rows are the coordinates
  unsigned s = (unsigned)basis.size();
  u64 qmod = 1;
  for (unsigned k = 0; k < quotient.e; k++) qmod *= quotient.p;
  Vec out(s);
  for (unsigned i = 0; i < s; i++) out[i] = (m.mod - w[r + i]) % m.mod % qmod;
  return out;
}

}  // namespace obstr
