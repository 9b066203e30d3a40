#include "obstr/charbound.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace obstr {

Rational::Rational(long long n) : num(n), den(1) {}

Rational::Rational(long long n, long long d) {
  if (d == 0) throw ZModError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long long g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
  return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const {
  return Rational(num * o.num, den * o.den);
}
bool Rational::operator<(const Rational& o) const {
  return num * o.den < o.num * den;
}
long long Rational::ceil() const {
  long long q = num / den;
  if (num > 0 && num % den) q++;
  return q;
}
std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}
Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

namespace {

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; d++)
    if (n % d == 0) return false;
  return true;
}

unsigned ord_mod(u64 a, u64 q) {
  u64 x = a % q;
  unsigned k = 1;
  while (x != 1) {
    x = x * a % q;
    k++;
    if (k > q) throw ZModError("ord_mod: not invertible");
  }
  return k;
}

}  // namespace

BoundResult bound(const BoundConfig& cfg) {
  Rational b;
  switch (cfg.kind) {
    case BoundKind::dihedral2q: {
      if (cfg.p != 2) throw ZModError("dihedral2q needs p = 2");
      if (!is_prime(cfg.q) || cfg.q == 2) throw ZModError("q must be an odd prime");
      if (ord_mod(2, cfg.q) != cfg.q - 1)
        throw ZModError("dihedral2q needs ord_q(2) = q-1 (q = " + std::to_string(cfg.q) +
                        " fails)");
      if (cfg.chi_a.size() != 1) throw ZModError("dihedral2q takes one class value");
      b = Rational((long long)cfg.q - 1, 2 * (long long)cfg.q) * (cfg.chi1 - cfg.chi_a[0]);
      break;
    }
    case BoundKind::nonabelian_pq: {
      if (!is_prime(cfg.p) || !is_prime(cfg.q)) throw ZModError("p, q must be prime");
      if ((cfg.q - 1) % cfg.p != 0) throw ZModError("nonabelian_pq needs p | q-1");
      std::vector<Rational> vals = cfg.chi_a;
      if (vals.size() == 1) vals.assign(cfg.q - 1, cfg.chi_a[0]);  // rational class
      if (vals.size() != cfg.q - 1) throw ZModError("need q-1 class values");
      Rational s(0);
      for (auto& v : vals) s = s + (cfg.chi1 - v);
      b = Rational(1, (long long)(cfg.p * cfg.q)) * s;
      break;
    }
    case BoundKind::A4:
    case BoundKind::twoA4: {
      if (cfg.p != 3) throw ZModError("A4 bounds need p = 3");
      if (cfg.chi_a.size() != 1) throw ZModError("A4 bound takes one class value");
      b = Rational(1, 4) * (cfg.chi1 - cfg.chi_a[0]);
      break;
    }
  }
  return {b, b.ceil()};
}

CharData CharData::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ZModError("cannot open character data file: " + path);
  nlohmann::json j;
  in >> j;
  CharData d;
  if (!j.contains("entries") || !j.contains("rows"))
    throw ZModError("character data file needs 'entries' and 'rows'");
  for (auto& e : j["entries"]) {
    CharTableEntry t;
    t.group = e.at("group");
    t.p = e.at("p");
    t.kind = e.at("kind");
    t.q = e.value("q", 0);
    t.class_label = e.at("class");
    t.module = e.at("module");
    t.chi1 = Rational::parse(e.at("chi1").get<std::string>());
    t.chi_a = Rational::parse(e.at("chi_a").get<std::string>());
    t.source_note = e.value("source", "");
    t.witness = e.value("witness", false);
    d.entries.push_back(t);
  }
  for (auto& r : j["rows"]) {
    CharTableRow row;
    row.table = r.at("table");
    row.group = r.at("group");
    row.p = r.at("p");
    row.threshold = Rational::parse(r.at("threshold").get<std::string>());
    for (std::size_t i = 0; i < d.entries.size(); i++)
      if (d.entries[i].group == row.group && d.entries[i].p == row.p)
        row.entries.push_back(i);
    if (row.entries.empty())
      throw ZModError("row " + row.group + " (p=" + std::to_string(row.p) +
                      ") has no character entries");
    d.rows.push_back(row);
  }
  return d;
}

TableReport table_report(const CharData& data) {
  TableReport rep;
  rep.ok = true;
  for (auto& row : data.rows) {
    TableReport::RowResult rr;
    rr.group = row.group;
    rr.table = row.table;
    rr.threshold = row.threshold;
    bool first = true;
    rr.all_entries_pass = true;
    for (auto ei : row.entries) {
      const CharTableEntry& e = data.entries[ei];
      BoundConfig cfg;
      if (e.kind == "dihedral2q") cfg.kind = BoundKind::dihedral2q;
      else if (e.kind == "nonabelian_pq") cfg.kind = BoundKind::nonabelian_pq;
      else if (e.kind == "A4") cfg.kind = BoundKind::A4;
      else if (e.kind == "twoA4") cfg.kind = BoundKind::twoA4;
      else throw ZModError("unknown bound kind " + e.kind);
      cfg.p = e.p;
      cfg.q = e.q;
      cfg.chi1 = e.chi1;
      cfg.chi_a = {e.chi_a};
      BoundResult b = bound(cfg);
      rr.per_module.push_back({e.module, b.bound});
      if (first || b.bound < rr.min_bound) rr.min_bound = b.bound;
      first = false;
      if (b.bound < row.threshold) rr.all_entries_pass = false;
      if (e.witness && b.bound == row.threshold) rr.witness_exact = true;
    }
    rep.ok = rep.ok && rr.all_entries_pass && rr.witness_exact;
    rep.rows.push_back(std::move(rr));
  }
  return rep;
}

namespace {

// companion-style explicit modules for the oracle instances
Aut mat(const Module& m, std::vector<u64> v) { return Aut(m, std::move(v)); }

}  // namespace

std::vector<OracleInstance> oracle_instances() {
  std::vector<OracleInstance> out;

  {
    // D10 on F2^4 = F2[z]/Phi5(z): a = multiplication by z, x = z -> z^4
    Module m(2, 1, 4);
    // companion matrix of z^4+z^3+z^2+z+1 (columns are images of basis powers)
    Aut a = mat(m, {0, 0, 0, 1,
                    1, 0, 0, 1,
                    0, 1, 0, 1,
                    0, 0, 1, 1});
    // x: z^i -> z^(4i mod 5) on the basis 1, z, z^2, z^3 with z^4 = sum
    Aut x = mat(m, {1, 0, 0, 0,
                    0, 0, 0, 1,
                    0, 0, 1, 0,
                    0, 1, 0, 0});
    // sanity: x a x = a^-1 and x^2 = 1
    if (!((x * a * x) == a.inverse()) || !(x * x).is_identity())
      throw ZModError("oracle D10: wrong relations");
    OracleInstance inst;
    inst.name = "D10 on F2^4";
    inst.cfg = {BoundKind::dihedral2q, 2, 5, Rational(4), {Rational(-1)}};
    inst.x = x;
    inst.actual = jordan_count(x);
    inst.b = bound(inst.cfg);
    inst.sound = inst.b.ceiling <= (long long)inst.actual;
    out.push_back(inst);
  }

  {
    // A4 on the sum-zero part of the natural permutation module over F3:
    // x = (123) cycle, a = (12)(34)
    Module m(3, 1, 3);
    // basis f1 = e1-e2, f2 = e2-e3, f3 = e3-e4
    // (123): e1->e2->e3->e1: f1 -> e2-e3 = f2, f2 -> e3-e1 = -(f1+f2), f3 -> e1-e4 = f1+f2+f3
    Aut x = mat(m, {0, 2, 1,
                    1, 2, 1,
                    0, 0, 1});
    // (12)(34): f1 -> -f1, f2 -> e1-e4 = f1+f2+f3, f3 -> -f3
    Aut a = mat(m, {2, 1, 0,
                    0, 1, 0,
                    0, 1, 2});
    if (!(x.pow(3).is_identity() && a.pow(2).is_identity()))
      throw ZModError("oracle A4: wrong orders");
    OracleInstance inst;
    inst.name = "A4 on F3^3";
    inst.cfg = {BoundKind::A4, 3, 0, Rational(3), {Rational(-1)}};
    inst.x = x;
    inst.actual = jordan_count(x);
    inst.b = bound(inst.cfg);
    inst.sound = inst.b.ceiling <= (long long)inst.actual;
    out.push_back(inst);
  }

  {
    // 2A4 = SL2(3) on its natural F3^2: x unipotent of order 3, a of order 4
    Module m(3, 1, 2);
    Aut x = mat(m, {1, 1, 0, 1});
    Aut a = mat(m, {0, 2, 1, 0});
    if (!(a.pow(2) == Aut(m, {2, 0, 0, 2}))) throw ZModError("oracle 2A4: a^2 != -1");
    OracleInstance inst;
    inst.name = "2A4 on F3^2";
    inst.cfg = {BoundKind::twoA4, 3, 0, Rational(2), {Rational(0)}};
    inst.x = x;
    inst.actual = jordan_count(x);
    inst.b = bound(inst.cfg);
    inst.sound = inst.b.ceiling <= (long long)inst.actual;
    out.push_back(inst);
  }

  {
    // C7 : C3 nonabelian of order 21 on F3^6 = F3[z]/Phi7(z):
    // a = mult by z (order 7), x = Frobenius^2: z -> z^2 (order 3)
    Module m(3, 1, 6);
    std::vector<u64> comp(36, 0);
    // companion of Phi7 = z^6+...+1: last column all -1 = 2
    for (unsigned i = 1; i < 6; i++) comp[i * 6 + (i - 1)] = 1;
    for (unsigned i = 0; i < 6; i++) comp[i * 6 + 5] = 2;
    Aut a = mat(m, comp);
    // x: z^i -> z^(2i mod 7), with z^6 = -(1+z+...+z^5)
    std::vector<u64> fr(36, 0);
    for (unsigned i = 0; i < 6; i++) {
      unsigned t = (2 * i) % 7;
      if (t < 6) fr[t * 6 + i] = 1;
      else
        for (unsigned j = 0; j < 6; j++) fr[j * 6 + i] = 2;
    }
    Aut x = mat(m, fr);
    if (!(a.pow(7).is_identity() && x.pow(3).is_identity() &&
          (x * a * x.inverse()) == a.pow(2)))
      throw ZModError("oracle 7:3: wrong relations");
    OracleInstance inst;
    inst.name = "C7:C3 on F3^6";
    inst.cfg.kind = BoundKind::nonabelian_pq;
    inst.cfg.p = 3;
    inst.cfg.q = 7;
    inst.cfg.chi1 = Rational(6);
    inst.cfg.chi_a = {Rational(-1)};  // rational class: expanded to all powers
    inst.x = x;
    inst.actual = jordan_count(x);
    inst.b = bound(inst.cfg);
    inst.sound = inst.b.ceiling <= (long long)inst.actual;
    out.push_back(inst);
  }

  return out;
}

}  // namespace obstr
