// Deterministic closure and enumeration for small finite groups given by
// generators: permutation groups and matrix automorphism groups.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "obstr/zmod.hpp"

namespace obstr {

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// permutation on n points, identity-padded to a 16- or 32-byte block so the
// byte image doubles as hash key and SIMD operand
struct Perm {
  unsigned n = 0;
  std::vector<std::uint8_t> img;  // size = stride(n)

  static unsigned stride(unsigned n) { return n <= 16 ? 16 : 32; }
  static Perm identity(unsigned n);
  // images: 0-based, img[i] = image of point i
  static Perm from_images(const std::vector<unsigned>& images);

  unsigned apply(unsigned i) const { return img[i]; }
  Perm operator*(const Perm& rhs) const;  // (a*b)(i) = a(b(i))
  Perm inverse() const;
  bool operator==(const Perm& rhs) const { return img == rhs.img; }
  bool is_identity() const;
  std::string key() const { return std::string(img.begin(), img.end()); }
  unsigned fixed_points() const;
};

// BFS closure from the identity over key-sorted generators; element order is
// the discovery order, so runs are reproducible.
template <class E>
struct Closure {
  std::vector<E> elems;  // elems[0] = identity
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<std::uint32_t> gen_ids;

  std::size_t size() const { return elems.size(); }
  std::uint32_t id_of(const E& x) const {
    auto it = index.find(x.key());
    if (it == index.end()) throw GroupError("element not in closure");
    return it->second;
  }
  bool contains(const E& x) const { return index.count(x.key()) != 0; }
  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const {
    return id_of(elems[i] * elems[j]);
  }
};

template <class E>
Closure<E> close_group(const E& ident, std::vector<E> gens, std::size_t cap = 1u << 20) {
  std::sort(gens.begin(), gens.end(),
            [](const E& a, const E& b) { return a.key() < b.key(); });
  Closure<E> c;
  c.elems.push_back(ident);
  c.index.emplace(ident.key(), 0);
  std::vector<std::uint32_t> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); qi++) {
    E x = c.elems[queue[qi]];
    for (auto& g : gens) {
      E y = g * x;
      auto [it, fresh] = c.index.emplace(y.key(), (std::uint32_t)c.elems.size());
      if (fresh) {
        if (c.elems.size() >= cap)
          throw GroupError("closure cap exceeded at " + std::to_string(c.elems.size() + 1) +
                           " elements");
        c.elems.push_back(y);
        queue.push_back(it->second);
      }
    }
  }
  for (auto& g : gens) c.gen_ids.push_back(c.id_of(g));
  return c;
}

// specialised permutation closure: frontier products are computed with the
// batched composition kernels
Closure<Perm> close_perm_group(const std::vector<Perm>& gens, std::size_t cap = 1u << 20);

template <class E>
std::vector<unsigned> element_orders(const Closure<E>& g) {
  std::vector<unsigned> ord(g.size());
  for (std::size_t i = 0; i < g.size(); i++) {
    E x = g.elems[i];
    unsigned k = 1;
    while (!(x == g.elems[0])) {
      x = x * g.elems[i];
      k++;
    }
    ord[i] = k;
  }
  return ord;
}

// subgroup of a closure as a sorted list of element ids
using IdSubgroup = std::vector<std::uint32_t>;

// Every subgroup of G isomorphic to E_{p^k}, 1 <= k <= max_rank, listed
// exactly once.  Order-p elements -> commuting extensions with dedup; output
// sorted lexicographically per rank, ranks concatenated.
template <class E>
std::vector<IdSubgroup> elementary_abelian_subgroups(const Closure<E>& g, u64 p,
                                                     unsigned max_rank,
                                                     std::size_t work_cap = 1u << 20);

// all subgroups (small groups only; |G| <= cap_order)
template <class E>
std::vector<IdSubgroup> all_subgroups(const Closure<E>& g, std::size_t cap_order = 256,
                                      std::size_t work_cap = 1u << 20);

template <class E>
bool subgroup_is_abelian(const Closure<E>& g, const IdSubgroup& s) {
  for (auto i : s)
    for (auto j : s)
      if (g.mul(i, j) != g.mul(j, i)) return false;
  return true;
}

// abelian invariant factor exponents f1 >= f2 >= ... of an abelian subgroup,
// from the element-order filtration
template <class E>
std::vector<unsigned> abelian_invariants(const Closure<E>& g, const IdSubgroup& s, u64 p);

// ---- M12 verification ----
struct M12Report {
  std::size_t order = 0;
  unsigned involutions = 0;
  unsigned order3 = 0;
  unsigned d10_found = 0;       // involutions with a dihedral partner of order 5
  unsigned a4_found = 0;        // order-3 elements with a free-E4 companion
  bool all_involutions_in_d10 = false;
  bool all_order3_in_a4 = false;
  bool ok() const {
    return order == 95040 && all_involutions_in_d10 && all_order3_in_a4;
  }
};

// gens must generate a group of order exactly 95040 on 12 points, else throws
M12Report verify_m12_embeddings(const std::vector<Perm>& gens);

}  // namespace obstr
