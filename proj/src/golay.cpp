#include "obstr/golay.hpp"

#include <algorithm>

namespace obstr::golay {

namespace {
constexpr std::uint8_t MUL[4][4] = {
    {0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
}

F4 f4mul(F4 a, F4 b) { return MUL[a][b]; }
F4 f4conj(F4 a) { return a == 2 ? 3 : a == 3 ? 2 : a; }

Hexaword hx_add(const Hexaword& a, const Hexaword& b) {
  Hexaword c;
  for (int i = 0; i < 6; i++) c[i] = a[i] ^ b[i];
  return c;
}

Hexaword hx_scale(F4 c, const Hexaword& a) {
  Hexaword out;
  for (int i = 0; i < 6; i++) out[i] = f4mul(c, a[i]);
  return out;
}

Hexacode Hexacode::build() {
  const Hexaword gens[4] = {
      {W, WBAR, W, WBAR, W, WBAR},
      {WBAR, W, WBAR, W, W, WBAR},
      {WBAR, W, W, WBAR, WBAR, W},
      {W, WBAR, WBAR, W, WBAR, W},
  };
  Hexacode h;
  std::vector<Hexaword> span{Hexaword{0, 0, 0, 0, 0, 0}};
  for (auto& g : gens) {
    std::vector<Hexaword> next;
    for (F4 c = 0; c < 4; c++) {
      Hexaword cg = hx_scale(c, g);
      for (auto& s : span) next.push_back(hx_add(s, cg));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    span = std::move(next);
  }
  h.all = span;
  if (h.all.size() != 64) throw ZModError("hexacode span has wrong size");
  // F2-basis: greedily pick independent words from gens and w*gens
  std::vector<Hexaword> cand;
  for (auto& g : gens) cand.push_back(g);
  for (auto& g : gens) cand.push_back(hx_scale(W, g));
  std::vector<Hexaword> cur{Hexaword{0, 0, 0, 0, 0, 0}};
  for (auto& c : cand) {
    if (std::find(cur.begin(), cur.end(), c) != cur.end()) continue;
    h.f2_basis.push_back(c);
    std::size_t n = cur.size();
    for (std::size_t i = 0; i < n; i++) cur.push_back(hx_add(cur[i], c));
  }
  if (h.f2_basis.size() != 6) throw ZModError("hexacode F2-basis has wrong size");
  return h;
}

bool Hexacode::contains(const Hexaword& h) const {
  return std::binary_search(all.begin(), all.end(), h);
}

Word column(unsigned i) {
  Word w = 0;
  for (F4 c = 0; c < 4; c++) w |= Word(1) << omega(c, i);
  return w;
}

Word column_pair(unsigned i, unsigned j) { return column(i) ^ column(j); }

Word graph(const Hexaword& h) {
  Word w = 0;
  for (unsigned i = 1; i <= 6; i++) w |= Word(1) << omega(h[i - 1], i);
  return w;
}

Word graph_diff(const Hexaword& h) { return graph(h) ^ graph(Hexaword{0, 0, 0, 0, 0, 0}); }

unsigned weight(Word w) { return (unsigned)__builtin_popcount(w); }

GolayCode GolayCode::build() {
  GolayCode g;
  g.hex = Hexacode::build();
  Word gr0 = graph(Hexaword{0, 0, 0, 0, 0, 0});
  for (unsigned i = 1; i <= 6; i++) g.basis.push_back(column(i) ^ gr0);
  for (auto& h : g.hex.f2_basis) g.basis.push_back(graph_diff(h));
  std::vector<gf2::word> rows(g.basis.begin(), g.basis.end());
  g.reduced = gf2::reduced_basis(rows);
  if (g.reduced.size() != 12) throw ZModError("code dimension is not 12");
  return g;
}

bool GolayCode::contains(Word w) const { return gf2::in_span(reduced, w); }

std::map<unsigned, std::size_t> GolayCode::weight_distribution() const {
  std::map<unsigned, std::size_t> dist;
  // full enumeration of the 4096 words by gray-code stepping
  Word cur = 0;
  dist[0]++;
  for (std::uint32_t k = 1; k < 4096; k++) {
    unsigned bit = (unsigned)__builtin_ctz(k);
    cur ^= (Word)basis[bit];
    dist[weight(cur)]++;
  }
  return dist;
}

Perm perm_translation(const Hexaword& h) {
  std::vector<unsigned> img(24);
  for (unsigned i = 1; i <= 6; i++)
    for (F4 c = 0; c < 4; c++) img[omega(c, i)] = omega(c ^ h[i - 1], i);
  return Perm::from_images(img);
}

Perm perm_column_swap(unsigned i, unsigned j) {
  std::vector<unsigned> img(24);
  for (unsigned k = 1; k <= 6; k++)
    for (F4 c = 0; c < 4; c++) {
      unsigned tgt = k == i ? j : k == j ? i : k;
      img[omega(c, k)] = omega(c, tgt);
    }
  return Perm::from_images(img);
}

Perm perm_field_conj() {
  std::vector<unsigned> img(24);
  for (unsigned i = 1; i <= 6; i++)
    for (F4 c = 0; c < 4; c++) img[omega(c, i)] = omega(f4conj(c), i);
  return Perm::from_images(img);
}

Word act(const Perm& g, Word w) {
  Word out = 0;
  while (w) {
    unsigned b = (unsigned)__builtin_ctz(w);
    out |= Word(1) << g.apply(b);
    w &= w - 1;
  }
  return out;
}

Word Context::delta_mask() const {
  Word m = Word(1) << omega(0, 6);
  if (n == 22) m |= Word(1) << omega(1, 6);
  return m;
}

Context Context::build(unsigned n) {
  if (n != 22 && n != 23) throw ZModError("context needs n = 22 or 23");
  Context ctx;
  ctx.n = n;
  ctx.code = GolayCode::build();

  const Hexaword h1 = {1, 1, 1, 1, 0, 0};
  const Hexaword h3 = {W, WBAR, 1, 0, 1, 0};
  for (auto& h : {h1, h3})
    if (!ctx.code.hex.contains(h)) throw ZModError("reference word not in hexacode");

  ctx.t_gens = {perm_translation(h1),
                perm_translation(hx_scale(W, h1)),
                perm_translation(h3),
                perm_translation(hx_scale(W, h3)),
                perm_column_swap(1, 2) * perm_column_swap(3, 4),
                perm_column_swap(1, 3) * perm_column_swap(2, 4),
                perm_column_swap(1, 2) * perm_field_conj()};

  Word delta = ctx.delta_mask();
  for (auto& g : ctx.t_gens) {
    for (auto b : ctx.code.basis)
      if (!ctx.code.contains(act(g, b))) throw ZModError("generator does not preserve the code");
    // each generator must fix the marked points, so the punctured module is
    // invariant
    Word dm = delta;
    while (dm) {
      unsigned b = (unsigned)__builtin_ctz(dm);
      if (g.apply(b) != b) throw ZModError("generator moves a marked point");
      dm &= dm - 1;
    }
  }

  ctx.T = close_perm_group(ctx.t_gens, 4096);
  if (ctx.T.size() != 128)
    throw ZModError("Sylow closure has order " + std::to_string(ctx.T.size()));

  // punctured module: code words with support avoiding the marked points
  std::vector<gf2::word> avoid;
  for (std::uint32_t k = 0; k < 4096; k++) {
    Word cur = 0;
    for (unsigned b = 0; b < 12; b++)
      if ((k >> b) & 1) cur ^= ctx.code.basis[b];
    if (!(cur & delta)) avoid.push_back(cur);
  }
  ctx.module_reduced = gf2::reduced_basis(avoid);
  unsigned dim = (unsigned)ctx.module_reduced.size();
  if (dim != (n == 22 ? 10u : 11u)) throw ZModError("module dimension wrong");
  ctx.module_basis.assign(ctx.module_reduced.begin(), ctx.module_reduced.end());

  ctx.A = Module(2, 1, dim);
  for (auto& p : ctx.T.elems) ctx.induced.push_back(ctx.induced_matrix(p));
  // induced representation must stay faithful
  {
    std::vector<std::string> keys;
    for (auto& m : ctx.induced) keys.push_back(m.key());
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
      throw ZModError("induced action is not faithful");
  }

  // the two rank-4 elementary abelian subgroups
  auto subs = elementary_abelian_subgroups(ctx.T, 2, 4);
  std::vector<IdSubgroup> rank4;
  for (auto& s : subs)
    if (s.size() == 16) rank4.push_back(s);
  if (rank4.size() != 2) throw ZModError("expected exactly two E16 subgroups");
  // H1 contains the column swaps, H2 consists of translations only
  auto contains_id = [&](const IdSubgroup& s, const Perm& p) {
    return std::binary_search(s.begin(), s.end(), ctx.T.id_of(p));
  };
  const Perm& swap1234 = ctx.t_gens[4];
  if (contains_id(rank4[0], swap1234)) {
    ctx.h1 = rank4[0];
    ctx.h2 = rank4[1];
  } else {
    ctx.h1 = rank4[1];
    ctx.h2 = rank4[0];
  }
  if (!contains_id(ctx.h1, swap1234) || contains_id(ctx.h2, swap1234))
    throw ZModError("H1/H2 identification failed");
  return ctx;
}

Vec Context::coords(Word w) const {
  // solve against the reduced basis; reduced rows have distinct leading bits
  Vec out(module_basis.size(), 0);
  gf2::word x = w;
  for (std::size_t i = 0; i < module_reduced.size(); i++) {
    int b = 63 - __builtin_clzll(module_reduced[i]);
    if ((x >> b) & 1) {
      x ^= module_reduced[i];
      out[i] = 1;
    }
  }
  if (x) throw ZModError("word outside the module");
  return out;
}

Aut Context::induced_matrix(const Perm& g) const {
  unsigned dim = (unsigned)module_basis.size();
  std::vector<u64> mat((std::size_t)dim * dim, 0);
  for (unsigned j = 0; j < dim; j++) {
    Vec c = coords(act(g, module_basis[j]));
    for (unsigned i = 0; i < dim; i++) mat[i * dim + j] = c[i];
  }
  return Aut(A, std::move(mat));
}

namespace {

struct Named {
  std::string name;
  Word w;
};

std::vector<Named> table_names(const GolayCode& code) {
  const Hexaword h1 = {1, 1, 1, 1, 0, 0};
  const Hexaword h2 = {1, 1, 0, 0, 1, 1};
  (void)code;
  return {
      {"0", 0},
      {"C1234", column_pair(1, 2) ^ column_pair(3, 4)},
      {"C12", column_pair(1, 2)},
      {"C13", column_pair(1, 3)},
      {"C23", column_pair(2, 3)},
      {"C25", column_pair(2, 5)},
      {"C15", column_pair(1, 5)},
      {"C35", column_pair(3, 5)},
      {"gh1", graph_diff(h1)},
      {"gh2+C56", graph_diff(h2) ^ column_pair(5, 6)},
  };
}

std::string name_of(const std::vector<Named>& names, Word w) {
  for (auto& n : names)
    if (n.w == w) return n.name;
  return "<unnamed:" + std::to_string(w) + ">";
}

}  // namespace

TableCheck verify_hexad_tables(const Context& ctx) {
  if (ctx.n != 23) throw ZModError("the commutator table is stated on the 23-point module");
  const Hexaword h1 = {1, 1, 1, 1, 0, 0};
  const Hexaword h2 = {1, 1, 0, 0, 1, 1};
  const Hexaword h3 = {W, WBAR, 1, 0, 1, 0};
  Hexaword h3wh2 = hx_add(h3, hx_scale(W, h2));

  const std::array<std::string, 7> row_names = {"t_h1",  "t_wh1",    "t_h3",   "t_wh3",
                                                "t1234", "t13t24", "t12phi"};
  const std::array<std::string, 7> col_names = {"C1234", "C12",     "C13",
                                                "C15",   "gh1",     "gh2+C56",
                                                "g(h3+wh2)+C56"};
  const Word cols[7] = {column_pair(1, 2) ^ column_pair(3, 4),
                        column_pair(1, 2),
                        column_pair(1, 3),
                        column_pair(1, 5),
                        graph_diff(h1),
                        graph_diff(h2) ^ column_pair(5, 6),
                        graph_diff(h3wh2) ^ column_pair(5, 6)};
  // expected entries, row-major
  const char* expect[7][7] = {
      {"0", "0", "0", "0", "0", "0", "0"},
      {"0", "0", "0", "0", "C1234", "C12", "C23"},
      {"0", "0", "0", "0", "C12", "C12", "C25"},
      {"0", "0", "0", "0", "C13", "C15", "C35"},
      {"0", "0", "C1234", "C12", "0", "0", "gh1"},
      {"0", "C1234", "0", "C13", "0", "gh1", "gh1"},
      {"0", "0", "C12", "C12", "0", "0", "gh2+C56"},
  };

  auto names = table_names(ctx.code);
  TableCheck tc;
  for (unsigned i = 0; i < 7; i++) {
    const Perm& g = ctx.t_gens[i];
    for (unsigned j = 0; j < 7; j++) {
      if (!(gf2::in_span(ctx.module_reduced, cols[j])))
        throw ZModError("table column element is outside the module");
      Word comm = act(g, cols[j]) ^ cols[j];
      std::string got = name_of(names, comm);
      bool match = got == expect[i][j];
      tc.cells.push_back({row_names[i], col_names[j], expect[i][j], got, match});
      tc.ok &= match;
    }
  }

  // the four complement-basis entries under t_h1
  const Named comp[4] = {
      {"g(wh1)", graph_diff(hx_scale(W, h1))},
      {"g(h3)", graph_diff(h3)},
      {"g(wh3)", graph_diff(hx_scale(W, h3))},
      {"Gr(wh2)+C1", graph(hx_scale(W, h2)) ^ column(1)},
  };
  const Word expect2[4] = {column_pair(1, 2) ^ column_pair(3, 4), column_pair(1, 2),
                           column_pair(1, 3), graph_diff(h1) ^ column_pair(1, 2)};
  const char* expect2n[4] = {"C1234", "C12", "C13", "gh1+C12"};
  for (unsigned j = 0; j < 4; j++) {
    Word comm = act(ctx.t_gens[0], comp[j].w) ^ comp[j].w;
    bool match = comm == expect2[j];
    tc.cells.push_back({"t_h1", comp[j].name, expect2n[j],
                        match ? expect2n[j] : name_of(names, comm), match});
    tc.ok &= match;
  }

  // basis claims: the first six columns span the 22-point centralizer of
  // t_h1, all seven the 23-point one, and the four extra classes complete A
  {
    std::vector<gf2::word> six(cols, cols + 6), seven(cols, cols + 7);
    bool ok6 = gf2::rank(six) == 6, ok7 = gf2::rank(seven) == 7;
    std::vector<gf2::word> full = seven;
    for (auto& c : comp) full.push_back(c.w);
    bool okfull = gf2::rank(full) == 11;
    tc.cells.push_back({"basis", "dim", "6/7/11",
                        std::to_string(gf2::rank(six)) + "/" + std::to_string(gf2::rank(seven)) +
                            "/" + std::to_string(gf2::rank(full)),
                        ok6 && ok7 && okfull});
    tc.ok &= ok6 && ok7 && okfull;
  }
  return tc;
}

LemmaCheck verify_centralizer_lemma(const Context& ctx) {
  LemmaCheck lc;
  const Hexaword h1 = {1, 1, 1, 1, 0, 0};

  auto sub_of_words = [&](std::vector<Word> ws) {
    std::vector<Vec> gens;
    for (auto w : ws) gens.push_back(ctx.coords(w));
    return Subgroup::from_generators(ctx.A, gens);
  };

  const Aut& th1 = ctx.induced[ctx.T.id_of(ctx.t_gens[0])];
  Subgroup im = image(ctx.A, aut_minus_one(th1));
  Subgroup expect_im = sub_of_words({column_pair(1, 2), column_pair(1, 3), column_pair(1, 4),
                                     graph_diff(h1)});
  lc.commutator_th1 = (im == expect_im) && im.order().exp == 4;

  auto auts_of = [&](const IdSubgroup& s) {
    std::vector<Aut> hs;
    for (auto e : s)
      if (e != 0) hs.push_back(ctx.induced[e]);
    return hs;
  };
  Subgroup ch1 = fixed_subgroup(ctx.A, auts_of(ctx.h1));
  Subgroup ct = fixed_subgroup(ctx.A, ctx.induced);
  Subgroup expect_c1 = sub_of_words({column_pair(1, 2) ^ column_pair(3, 4)});
  lc.centralizer_h1 = (ch1 == ct) && (ch1 == expect_c1);

  Subgroup ch2 = fixed_subgroup(ctx.A, auts_of(ctx.h2));
  Subgroup expect_c2 = sub_of_words({column_pair(1, 2), column_pair(1, 3), column_pair(1, 4),
                                     column_pair(1, 5)});
  lc.centralizer_h2 = (ch2 == expect_c2) && ch2.order().exp == 4;

  auto subs = elementary_abelian_subgroups(ctx.T, 2, 4);
  unsigned rank4 = 0;
  for (auto& s : subs) rank4 += (s.size() == 16);
  lc.rank4_unique = rank4 == 2;
  return lc;
}

ObstructionContext obstruction_context(const Context& ctx) {
  std::vector<Aut> gens;
  for (auto& g : ctx.t_gens) gens.push_back(ctx.induced_matrix(g));
  return ObstructionContext::make(ctx.A, gens);
}

ObstructionContext dual_obstruction_context(const Context& ctx) {
  std::vector<Aut> gens;
  unsigned dim = ctx.A.r;
  for (auto& g : ctx.t_gens) {
    Aut m = ctx.induced_matrix(g).inverse();
    std::vector<u64> t((std::size_t)dim * dim);
    for (unsigned i = 0; i < dim; i++)
      for (unsigned j = 0; j < dim; j++) t[i * dim + j] = m.at(j, i);
    gens.push_back(Aut(ctx.A, std::move(t)));
  }
  return ObstructionContext::make(ctx.A, gens);
}

}  // namespace obstr::golay
