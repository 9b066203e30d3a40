// Exact linear algebra over Z/p^e for homocyclic modules (Z/p^e)^r:
// residue vectors, invertible matrix actions, subgroups in Howell normal
// form, lattice operations, centralizers/commutators, Jordan block counts.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace obstr {

using u64 = std::uint64_t;
using Vec = std::vector<u64>;

// Exact order of a p-subquotient, kept as the exponent k of p^k.
// Avoids overflow and keeps all arithmetic in Z.
struct POrder {
  u64 p = 2;
  unsigned exp = 0;
  bool operator==(const POrder&) const = default;
  // value as u64; throws if it does not fit
  u64 value() const;
  std::string str() const;
};

struct ZModError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A = (Z/p^e)^r.  Elementary abelian is e == 1.
struct Module {
  u64 p;
  unsigned e;
  unsigned r;
  u64 mod;  // p^e

  Module(u64 p_, unsigned e_, unsigned r_);
  bool operator==(const Module&) const = default;
  POrder order() const { return {p, e * r}; }
  Vec zero() const { return Vec(r, 0); }
  bool is_reduced(const Vec& a) const;
};

Vec vec_add(const Module& m, const Vec& a, const Vec& b);
Vec vec_sub(const Module& m, const Vec& a, const Vec& b);
Vec vec_neg(const Module& m, const Vec& a);
Vec vec_scale(const Module& m, u64 c, const Vec& a);

// Invertible r x r matrix over Z/p^e acting on column vectors.
struct Aut {
  Module parent;
  std::vector<u64> a;  // row-major, r*r entries reduced mod p^e

  Aut(Module m, std::vector<u64> entries);
  static Aut identity(const Module& m);
  u64 at(unsigned i, unsigned j) const { return a[i * parent.r + j]; }
  u64& at(unsigned i, unsigned j) { return a[i * parent.r + j]; }
  bool is_identity() const;
  bool invertible() const;  // det a unit mod p
  Aut operator*(const Aut& rhs) const;  // composition: (this*rhs)(x) = this(rhs(x))
  Aut inverse() const;
  Aut pow(u64 k) const;
  bool operator==(const Aut& rhs) const { return a == rhs.a; }
  std::string key() const;  // canonical byte key for hashing / ordering

  Vec apply(const Vec& x) const;
};

// Subgroup of A in canonical Howell normal form.  Two Subgroup values are
// equal iff their matrices are identical.
struct Subgroup {
  Module parent;
  std::vector<Vec> rows;          // Howell form, sorted by pivot column
  std::vector<unsigned> pivcol;   // pivot column per row
  std::vector<unsigned> pivval;   // valuation k: pivot entry is p^k

  static Subgroup trivial(const Module& m);
  static Subgroup full(const Module& m);
  static Subgroup from_generators(const Module& m, const std::vector<Vec>& gens);

  POrder order() const;
  bool is_trivial() const { return rows.empty(); }
  bool contains(const Vec& x) const;
  bool contains(const Subgroup& other) const;
  bool operator==(const Subgroup& o) const { return rows == o.rows; }
  bool operator!=(const Subgroup& o) const { return !(*this == o); }
  std::string key() const;

  // all elements; throws if order exceeds cap
  std::vector<Vec> elements(std::size_t cap = 1u << 20) const;

  // invariant factor exponents f1 >= f2 >= ... (orders p^fi)
  std::vector<unsigned> invariant_factors() const;
};

Subgroup sum(const Subgroup& a, const Subgroup& b);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
// {x in A : N x in S}, N given as an r x r matrix (not necessarily invertible)
Subgroup preimage(const Module& m, const std::vector<u64>& nmat, const Subgroup& s);
// subgroup generated by the columns of N, i.e. the image of x -> N x
Subgroup image(const Module& m, const std::vector<u64>& nmat);
// |super| / |sub|; requires sub <= super
POrder quotient_order(const Subgroup& sub, const Subgroup& super);

// matrix of tau - 1
std::vector<u64> aut_minus_one(const Aut& t);

// C_A(H) = intersection of kernels of (tau - 1)
Subgroup fixed_subgroup(const Module& m, const std::vector<Aut>& hs);
// [H, A] = subgroup generated by the images of (tau - 1)
Subgroup commutator_subgroup(const Module& m, const std::vector<Aut>& hs);
// S invariant under every element of hs
bool invariant_under(const Subgroup& s, const std::vector<Aut>& hs);

// |C_{A/A*}(tau)| computed both as preimage-kernel quotient and by the
// index formula |A| / |A* [tau,A]|; asserts agreement.
// Requires A* <= C_A(tau).
POrder quotient_fixed_order(const Aut& tau, const Subgroup& astar);

// number of nontrivial Jordan blocks of tau on elementary abelian A:
// rank(C_A(tau) ∩ [tau,A]), cross-checked against rank(N) - rank(N^2).
unsigned jordan_count(const Aut& tau);

// A chain A1 <= A2 <= A of H-invariant subgroups with homocyclic quotient
// A2/A1: explicit basis and induced matrices.
struct QuotientModule {
  Module quotient;             // (Z/p^f)^s
  Subgroup a1, a2;
  std::vector<Vec> basis;      // lifts in A of a quotient basis
  std::vector<Aut> induced;    // aligned with the input aut list
  std::vector<bool> acts_trivially;  // per input aut
  bool faithful;               // no nontrivial input aut acts trivially

  // coordinates of (x mod A1) in the quotient basis; x must lie in A2
  Vec coords(const Vec& x) const;

private:
  friend QuotientModule quotient_module(const Subgroup&, const Subgroup&,
                                        const std::vector<Aut>&,
                                        const std::vector<Vec>&);
  std::vector<Vec> solver_rows;  // basis lifts + A1 generators, for coords()
  Module amod{2, 1, 1};
};

// Throws ZModError if a subgroup is not invariant or the quotient is not
// homocyclic (the message reports its invariant factors).
// preferred: optional list of elements of A2 tried first as basis lifts.
QuotientModule quotient_module(const Subgroup& a1, const Subgroup& a2,
                               const std::vector<Aut>& hs,
                               const std::vector<Vec>& preferred = {});

// ---- generic Howell machinery (exposed for tests) ----
// Canonical Howell normal form of the row space of `rows` over Z/p^e with
// `ncols` columns.  Returns rows sorted by pivot column.
std::vector<Vec> howell_form(u64 p, unsigned e, unsigned ncols,
                             std::vector<Vec> rows);

u64 unit_inverse(u64 u, u64 p, unsigned e);
unsigned valuation(u64 x, u64 p);  // x != 0

}  // namespace obstr
