#include "obstr/group.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "obstr/kernels.hpp"

namespace obstr {

Perm Perm::identity(unsigned n) {
  Perm p;
  p.n = n;
  p.img.resize(stride(n));
  for (unsigned i = 0; i < p.img.size(); i++) p.img[i] = (std::uint8_t)i;
  return p;
}

Perm Perm::from_images(const std::vector<unsigned>& images) {
  unsigned n = (unsigned)images.size();
  if (n > 32) throw GroupError("permutation degree > 32 unsupported");
  std::vector<bool> hit(n, false);
  Perm p = identity(n);
  for (unsigned i = 0; i < n; i++) {
    if (images[i] >= n || hit[images[i]]) throw GroupError("not a bijection");
    hit[images[i]] = true;
    p.img[i] = (std::uint8_t)images[i];
  }
  return p;
}

Perm Perm::operator*(const Perm& rhs) const {
  if (n != rhs.n) throw GroupError("mixed degrees");
  Perm out = *this;
  kernels::compose_left_batch(n, img.size(), img.data(), rhs.img.data(), 1, out.img.data());
  return out;
}

Perm Perm::inverse() const {
  Perm out = identity(n);
  for (unsigned i = 0; i < n; i++) out.img[img[i]] = (std::uint8_t)i;
  return out;
}

bool Perm::is_identity() const {
  for (unsigned i = 0; i < n; i++)
    if (img[i] != i) return false;
  return true;
}

unsigned Perm::fixed_points() const {
  unsigned c = 0;
  for (unsigned i = 0; i < n; i++) c += (img[i] == i);
  return c;
}

Closure<Perm> close_perm_group(const std::vector<Perm>& gens_in, std::size_t cap) {
  if (gens_in.empty()) throw GroupError("no generators");
  unsigned n = gens_in[0].n;
  std::vector<Perm> gens = gens_in;
  std::sort(gens.begin(), gens.end(),
            [](const Perm& a, const Perm& b) { return a.img < b.img; });
  const std::size_t stride = Perm::stride(n);

  Closure<Perm> c;
  c.elems.push_back(Perm::identity(n));
  c.index.emplace(c.elems[0].key(), 0);

  std::vector<std::uint32_t> frontier{0};
  std::vector<std::uint8_t> buf;
  while (!frontier.empty()) {
    // pack the frontier once, then one batched compose per generator
    std::vector<std::uint8_t> fr(frontier.size() * stride);
    for (std::size_t k = 0; k < frontier.size(); k++)
      std::copy(c.elems[frontier[k]].img.begin(), c.elems[frontier[k]].img.end(),
                fr.begin() + k * stride);
    std::vector<std::uint32_t> next;
    buf.resize(fr.size());
    for (auto& g : gens) {
      kernels::compose_left_batch(n, stride, g.img.data(), fr.data(), frontier.size(),
                                  buf.data());
      for (std::size_t k = 0; k < frontier.size(); k++) {
        std::string key((const char*)buf.data() + k * stride, stride);
        auto [it, fresh] = c.index.emplace(std::move(key), (std::uint32_t)c.elems.size());
        if (fresh) {
          if (c.elems.size() >= cap) throw GroupError("closure cap exceeded");
          Perm p;
          p.n = n;
          p.img.assign(buf.begin() + k * stride, buf.begin() + (k + 1) * stride);
          c.elems.push_back(std::move(p));
          next.push_back(it->second);
        }
      }
    }
    frontier = std::move(next);
  }
  for (auto& g : gens) c.gen_ids.push_back(c.id_of(g));
  return c;
}

// ---- subgroup enumeration ----

namespace {

template <class E>
std::vector<std::uint32_t> order_p_elements(const Closure<E>& g, u64 p) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 1; i < g.size(); i++) {
    E x = g.elems[i];
    u64 k = 1;
    bool isp = false;
    while (k < p) {
      x = x * g.elems[i];
      k++;
    }
    isp = (x == g.elems[0]);
    if (isp) out.push_back(i);
  }
  return out;
}

}  // namespace

template <class E>
std::vector<IdSubgroup> elementary_abelian_subgroups(const Closure<E>& g, u64 p,
                                                     unsigned max_rank,
                                                     std::size_t work_cap) {
  auto ordp = order_p_elements(g, p);
  // commuting table over the order-p elements
  std::size_t m = ordp.size();
  std::vector<std::vector<bool>> comm(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; i++)
    for (std::size_t j = i; j < m; j++) {
      bool c = g.mul(ordp[i], ordp[j]) == g.mul(ordp[j], ordp[i]);
      comm[i][j] = comm[j][i] = c;
    }
  std::map<std::uint32_t, std::size_t> pos;
  for (std::size_t i = 0; i < m; i++) pos.emplace(ordp[i], i);

  std::set<IdSubgroup> seen;
  std::vector<IdSubgroup> out;
  std::size_t work = 0;

  // rank 1
  std::vector<IdSubgroup> cur;
  for (std::size_t i = 0; i < m; i++) {
    IdSubgroup s{0};
    std::uint32_t x = ordp[i];
    E acc = g.elems[x];
    for (u64 k = 1; k < p; k++) {
      s.push_back(g.id_of(acc));
      acc = acc * g.elems[x];
    }
    std::sort(s.begin(), s.end());
    if (seen.insert(s).second) cur.push_back(s);
  }
  out = cur;

  for (unsigned rank = 1; rank < max_rank && !cur.empty(); rank++) {
    std::vector<IdSubgroup> next;
    for (auto& s : cur) {
      for (std::size_t yi = 0; yi < m; yi++) {
        std::uint32_t y = ordp[yi];
        if (std::binary_search(s.begin(), s.end(), y)) continue;
        bool ok = true;
        for (auto e : s) {
          if (e == 0) continue;
          auto it = pos.find(e);
          // products of order-p generators inside an elementary abelian group
          // are themselves order p, so they all appear in ordp
          if (it == pos.end() || !comm[it->second][yi]) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        if (++work > work_cap) throw GroupError("subgroup search work cap exceeded");
        IdSubgroup bigger;
        bigger.reserve(s.size() * p);
        E ypow = g.elems[0];
        for (u64 k = 0; k < p; k++) {
          std::uint32_t yp = g.id_of(ypow);
          for (auto e : s) bigger.push_back(g.mul(e, yp));
          ypow = ypow * g.elems[y];
        }
        std::sort(bigger.begin(), bigger.end());
        bigger.erase(std::unique(bigger.begin(), bigger.end()), bigger.end());
        if (bigger.size() != s.size() * p) continue;  // y was inside <s> after all
        if (seen.insert(bigger).second) next.push_back(bigger);
      }
    }
    std::sort(next.begin(), next.end());
    out.insert(out.end(), next.begin(), next.end());
    cur = std::move(next);
  }
  std::stable_sort(out.begin(), out.end(), [](const IdSubgroup& a, const IdSubgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

template <class E>
std::vector<IdSubgroup> all_subgroups(const Closure<E>& g, std::size_t cap_order,
                                      std::size_t work_cap) {
  if (g.size() > cap_order)
    throw GroupError("all_subgroups: group order above cap");
  auto close_ids = [&](IdSubgroup gens) {
    std::set<std::uint32_t> s{0};
    std::vector<std::uint32_t> q{0};
    for (std::size_t qi = 0; qi < q.size(); qi++)
      for (auto gen : gens) {
        std::uint32_t y = g.mul(gen, q[qi]);
        if (s.insert(y).second) q.push_back(y);
      }
    return IdSubgroup(s.begin(), s.end());
  };
  std::set<IdSubgroup> seen;
  std::vector<IdSubgroup> out;
  IdSubgroup triv{0};
  seen.insert(triv);
  out.push_back(triv);
  std::vector<IdSubgroup> cur{triv};
  std::size_t work = 0;
  while (!cur.empty()) {
    std::vector<IdSubgroup> next;
    for (auto& s : cur)
      for (std::uint32_t y = 1; y < g.size(); y++) {
        if (std::binary_search(s.begin(), s.end(), y)) continue;
        if (++work > work_cap) throw GroupError("subgroup search work cap exceeded");
        IdSubgroup gens = s;
        gens.push_back(y);
        IdSubgroup bigger = close_ids(gens);
        if (seen.insert(bigger).second) next.push_back(bigger);
      }
    out.insert(out.end(), next.begin(), next.end());
    cur = std::move(next);
  }
  std::stable_sort(out.begin(), out.end(), [](const IdSubgroup& a, const IdSubgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

template <class E>
std::vector<unsigned> abelian_invariants(const Closure<E>& g, const IdSubgroup& s, u64 p) {
  // s_j = log_p #{x in S : x^(p^j) = 1}
  std::vector<unsigned> sj{0};
  unsigned total = 0;
  {
    u64 n = s.size();
    while (n > 1) {
      if (n % p) throw GroupError("abelian_invariants: not a p-group");
      n /= p;
      total++;
    }
  }
  for (unsigned j = 1; sj.back() < total; j++) {
    u64 pj = 1;
    for (unsigned k = 0; k < j; k++) pj *= p;
    std::size_t cnt = 0;
    for (auto e : s) {
      E x = g.elems[0];
      E base = g.elems[e];
      u64 k = pj;
      while (k) {
        if (k & 1) x = x * base;
        base = base * base;
        k >>= 1;
      }
      if (x == g.elems[0]) cnt++;
    }
    unsigned lg = 0;
    u64 c = cnt;
    while (c > 1) {
      c /= p;
      lg++;
    }
    sj.push_back(lg);
  }
  std::vector<unsigned> f;
  for (unsigned j = 1; j < sj.size(); j++) {
    unsigned cnt = sj[j] - sj[j - 1];
    f.resize(std::max<std::size_t>(f.size(), cnt), 0);
    for (unsigned i = 0; i < cnt; i++) f[i] = j;
  }
  std::sort(f.rbegin(), f.rend());
  return f;
}

// explicit instantiations for the element types in use
template std::vector<IdSubgroup> elementary_abelian_subgroups<Perm>(const Closure<Perm>&, u64,
                                                                    unsigned, std::size_t);
template std::vector<IdSubgroup> elementary_abelian_subgroups<Aut>(const Closure<Aut>&, u64,
                                                                   unsigned, std::size_t);
template std::vector<IdSubgroup> all_subgroups<Perm>(const Closure<Perm>&, std::size_t,
                                                     std::size_t);
template std::vector<IdSubgroup> all_subgroups<Aut>(const Closure<Aut>&, std::size_t,
                                                    std::size_t);
template std::vector<unsigned> abelian_invariants<Perm>(const Closure<Perm>&,
                                                        const IdSubgroup&, u64);
template std::vector<unsigned> abelian_invariants<Aut>(const Closure<Aut>&, const IdSubgroup&,
                                                       u64);

// ---- M12 ----

M12Report verify_m12_embeddings(const std::vector<Perm>& gens) {
  for (auto& g : gens)
    if (g.n != 12) throw GroupError("m12: need permutations of 12 points");
  Closure<Perm> g = close_perm_group(gens, 200000);
  if (g.size() != 95040)
    throw GroupError("m12: closure has order " + std::to_string(g.size()) +
                     ", expected 95040 (wrong generators?)");
  M12Report rep;
  rep.order = g.size();
  auto ord = element_orders(g);

  std::vector<std::uint32_t> invol, fives, threes;
  for (std::uint32_t i = 0; i < g.size(); i++) {
    if (ord[i] == 2) invol.push_back(i);
    if (ord[i] == 5) fives.push_back(i);
    if (ord[i] == 3) threes.push_back(i);
  }
  rep.involutions = (unsigned)invol.size();
  rep.order3 = (unsigned)threes.size();

  const std::size_t stride = Perm::stride(12);
  std::vector<std::uint8_t> packed5(fives.size() * stride);
  for (std::size_t k = 0; k < fives.size(); k++)
    std::copy(g.elems[fives[k]].img.begin(), g.elems[fives[k]].img.end(),
              packed5.begin() + k * stride);

  // (a) every involution t inverts some order-5 element a, so <a,t> = D10
  std::vector<std::uint8_t> tmp(packed5.size()), tmp2(packed5.size());
  for (auto ti : invol) {
    const Perm& t = g.elems[ti];  // t = t^-1
    // compute t * a * t for all order-5 a in two batched passes
    kernels::compose_left_batch(12, stride, t.img.data(), packed5.data(), fives.size(),
                                tmp.data());
    kernels::compose_right_batch(12, stride, t.img.data(), tmp.data(), fives.size(),
                                 tmp2.data());
    bool found = false;
    for (std::size_t k = 0; k < fives.size() && !found; k++) {
      const std::uint8_t* conj = tmp2.data() + k * stride;
      const Perm a = g.elems[fives[k]];
      Perm ainv = a.inverse();
      found = std::equal(ainv.img.begin(), ainv.img.end(), conj);
    }
    if (found) rep.d10_found++;
  }
  rep.all_involutions_in_d10 = rep.d10_found == rep.involutions;

  // (b) every order-3 element x lies in an A4 = <K, x> where K = E4 has all
  // involutions fixed-point-free on the 12 points
  std::vector<std::uint32_t> fpf;
  for (auto ti : invol)
    if (g.elems[ti].fixed_points() == 0) fpf.push_back(ti);
  for (auto xi : threes) {
    const Perm& x = g.elems[xi];
    Perm xinv = x.inverse();
    bool found = false;
    for (auto ki : fpf) {
      const Perm& k = g.elems[ki];
      Perm kx = x * k * xinv;   // k^x
      if (kx == k) continue;
      std::uint32_t kxi = g.id_of(kx);
      if (g.mul(ki, kxi) != g.mul(kxi, ki)) continue;
      Perm kxx = x * kx * xinv;  // k^(x^2)
      if (!(kxx == g.elems[g.mul(ki, kxi)])) continue;
      // third involution k * k^x also has to avoid fixed points (class with
      // free action)
      if (g.elems[g.mul(ki, kxi)].fixed_points() != 0) continue;
      found = true;
      break;
    }
    if (found) rep.a4_found++;
  }
  rep.all_order3_in_a4 = rep.a4_found == rep.order3;
  return rep;
}

}  // namespace obstr
