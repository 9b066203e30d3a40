// Character-theoretic lower bounds for the Jordan block count of an order-p
// automorphism, for the four subgroup shapes that admit them, plus the data
// file driven table report.  All arithmetic is exact rational.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "obstr/zmod.hpp"

namespace obstr {

struct Rational {
  long long num = 0, den = 1;  // normalized: den > 0, gcd = 1
  Rational() = default;
  Rational(long long n);
  Rational(long long n, long long d);
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const;
  bool operator>=(const Rational& o) const { return !(*this < o); }
  long long ceil() const;
  std::string str() const;
  static Rational parse(const std::string& s);  // "a" or "a/b"
};

enum class BoundKind { dihedral2q, nonabelian_pq, A4, twoA4 };

struct BoundConfig {
  BoundKind kind;
  u64 p = 2;
  u64 q = 0;                        // dihedral2q / nonabelian_pq only
  Rational chi1;                    // chi_V(1)
  std::vector<Rational> chi_a;      // chi_V(a^i) for i = 1..q-1, or a single
                                    // value expanded to the rational class
};

struct BoundResult {
  Rational bound;
  long long ceiling;
};

// dihedral2q: p=2, ord_q(2)=q-1 required;   (q-1)/2q * (chi(1)-chi(a))
// nonabelian_pq: p | q-1;                   1/pq * sum_i (chi(1)-chi(a^i))
// A4: p=3, |a|=2;                           1/4 * (chi(1)-chi(a))
// twoA4: p=3, |a|=4;                        1/4 * (chi(1)-chi(a))
BoundResult bound(const BoundConfig& cfg);

struct CharTableEntry {
  std::string group;
  u64 p;
  std::string kind;          // bound kind name
  u64 q;
  std::string class_label;   // character class of a
  std::string module;        // label, e.g. "10" or "16ab/F2"
  Rational chi1;
  Rational chi_a;
  std::string source_note;
  bool witness = false;      // entry that attains the row bound exactly
};

struct CharTableRow {
  std::string table;         // "p2" or "p3"
  std::string group;
  u64 p;
  Rational threshold;        // the printed bound for this row
  std::vector<std::size_t> entries;  // indices into the entry list
};

struct TableReport {
  struct RowResult {
    std::string group;
    std::string table;
    Rational threshold;
    Rational min_bound;
    bool all_entries_pass = false;    // every entry bound >= threshold
    bool witness_exact = false;       // some witness entry bound == threshold
    std::vector<std::pair<std::string, Rational>> per_module;
  };
  std::vector<RowResult> rows;
  bool ok = false;
};

struct CharData {
  std::vector<CharTableEntry> entries;
  std::vector<CharTableRow> rows;
  static CharData load(const std::string& path);  // throws on malformed data
};

TableReport table_report(const CharData& data);

// validation of the bound on explicit matrix instances: computes the actual
// Jordan count and checks ceiling(bound) <= actual
struct OracleInstance {
  std::string name;
  BoundConfig cfg;
  Aut x;                 // order-p element
  unsigned actual = 0;   // jordan_count(x)
  BoundResult b;
  bool sound = false;
};
// built-in instances: D10 on F2^4 (tight), A4 on F3^3, 2A4 = SL2(3) on F3^2,
// C7:C3 on F3^6
std::vector<OracleInstance> oracle_instances();

}  // namespace obstr
