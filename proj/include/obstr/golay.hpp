// Hexacode and binary Golay code on the 24-point set F4 x {1..6}, the code
// submodules obtained by puncturing at one or two marked points, the induced
// Sylow 2-subgroup action, and the commutator table checks.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "obstr/gf2.hpp"
#include "obstr/group.hpp"
#include "obstr/obstruction.hpp"
#include "obstr/zmod.hpp"

namespace obstr::golay {

// F4 = {0, 1, w, wbar} encoded 0..3; addition is xor
using F4 = std::uint8_t;
F4 f4mul(F4 a, F4 b);
F4 f4conj(F4 a);
inline constexpr F4 W = 2, WBAR = 3;

using Hexaword = std::array<F4, 6>;
Hexaword hx_add(const Hexaword& a, const Hexaword& b);
Hexaword hx_scale(F4 c, const Hexaword& a);

struct Hexacode {
  std::vector<Hexaword> all;        // 64 words
  std::vector<Hexaword> f2_basis;   // 6 words
  bool contains(const Hexaword& h) const;
  static Hexacode build();
};

// Omega index: point (c, i) with c in F4, i in 1..6 -> 4*(i-1)+c
inline unsigned omega(F4 c, unsigned i) { return 4 * (i - 1) + c; }
using Word = std::uint32_t;  // 24-bit support vector over F2

Word column(unsigned i);                       // C_i
Word column_pair(unsigned i, unsigned j);      // C_ij
Word graph(const Hexaword& h);                 // Gr(h)
Word graph_diff(const Hexaword& h);            // gamma_h = Gr(h) + Gr(0)
unsigned weight(Word w);

struct GolayCode {
  Hexacode hex;
  std::vector<Word> basis;          // 12 words
  std::vector<gf2::word> reduced;   // canonical reduced basis for span tests
  bool contains(Word w) const;
  std::map<unsigned, std::size_t> weight_distribution() const;  // full 4096 scan
  static GolayCode build();
};

// 24-point permutations of Omega
Perm perm_translation(const Hexaword& h);  // requires h in the hexacode
Perm perm_column_swap(unsigned i, unsigned j);
Perm perm_field_conj();
Word act(const Perm& g, Word w);

struct Context {
  unsigned n;                       // 22 or 23
  GolayCode code;
  std::vector<Word> module_basis;   // dim 10 (n=22) or 11 (n=23)
  std::vector<gf2::word> module_reduced;
  Closure<Perm> T;                  // order 128 on the 24 points
  std::vector<Perm> t_gens;         // the seven generators, fixed order
  Module A;                         // (Z/2)^dim
  std::vector<Aut> induced;         // aligned with T.elems
  IdSubgroup h1, h2;                // the two rank-4 elementary abelians

  Word delta_mask() const;
  // coordinates of a word in the module basis; throws if outside
  Vec coords(Word w) const;
  Aut induced_matrix(const Perm& g) const;

  static Context build(unsigned n);
};

// named elements used by the printed tables
struct TableCheck {
  bool ok = true;
  struct Cell {
    std::string row, col, expected, got;
    bool match;
  };
  std::vector<Cell> cells;
};

// the 7 x 7 commutator table on the centralizer basis and the 4-entry
// complement-basis table; bit-exact comparison
TableCheck verify_hexad_tables(const Context& ctx23);

struct LemmaCheck {
  bool commutator_th1 = false;   // [t_h1, A] = <C12, C13, C14, gamma_h1>
  bool centralizer_h1 = false;   // C_A(H1) = C_A(T) = <C1234>
  bool centralizer_h2 = false;   // C_A(H2) = <C12, C13, C14, C15>
  bool rank4_unique = false;     // {H1, H2} are the only E16 in T
  bool ok() const {
    return commutator_th1 && centralizer_h1 && centralizer_h2 && rank4_unique;
  }
};
LemmaCheck verify_centralizer_lemma(const Context& ctx);

ObstructionContext obstruction_context(const Context& ctx);
// contragredient module: transpose-inverse action
ObstructionContext dual_obstruction_context(const Context& ctx);

}  // namespace obstr::golay
