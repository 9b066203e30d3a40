// Bit-packed GF(2) rows: each vector of dimension <= 64 is one machine word.
// Used for rank/kernel work on elementary abelian 2-groups (24-bit code
// words, rank-12 module actions) where dense Z/p^e rows would be waste.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace obstr::gf2 {

using word = std::uint64_t;

inline int popcount(word x) { return __builtin_popcountll(x); }

// canonical fully-reduced echelon basis, decreasing leading bit; unique per
// subspace, so vector equality is subspace equality
inline std::vector<word> reduced_basis(std::vector<word> rows) {
  std::vector<word> basis;
  for (int b = 63; b >= 0; b--) {
    word pick = 0;
    std::size_t at = rows.size();
    for (std::size_t i = 0; i < rows.size(); i++)
      if ((rows[i] >> b) & 1) {
        pick = rows[i];
        at = i;
        break;
      }
    if (at == rows.size()) continue;
    rows.erase(rows.begin() + at);
    for (auto& r : rows)
      if ((r >> b) & 1) r ^= pick;
    for (auto& r : basis)
      if ((r >> b) & 1) r ^= pick;
    basis.push_back(pick);
  }
  return basis;
}

inline unsigned rank(const std::vector<word>& rows) {
  return (unsigned)reduced_basis(rows).size();
}

inline bool in_span(const std::vector<word>& reduced, word v) {
  word x = v;
  for (word r : reduced) {
    int b = 63 - __builtin_clzll(r);
    if ((x >> b) & 1) x ^= r;
  }
  return x == 0;
}

inline std::vector<word> span_elements(const std::vector<word>& basis) {
  if (basis.size() > 24) throw std::runtime_error("gf2 span too large");
  std::vector<word> out(1, 0);
  out.reserve(1u << basis.size());
  for (word g : basis) {
    std::size_t n = out.size();
    for (std::size_t i = 0; i < n; i++) out.push_back(out[i] ^ g);
  }
  return out;
}

// matrix with col[j] = image of e_j, dimension n <= 64
struct Mat {
  unsigned n = 0;
  std::vector<word> col;

  static Mat identity(unsigned n) {
    Mat m{n, std::vector<word>(n)};
    for (unsigned j = 0; j < n; j++) m.col[j] = word(1) << j;
    return m;
  }
  word apply(word x) const {
    word y = 0;
    while (x) {
      unsigned j = (unsigned)__builtin_ctzll(x);
      y ^= col[j];
      x &= x - 1;
    }
    return y;
  }
  Mat operator*(const Mat& rhs) const {
    Mat m{n, std::vector<word>(n)};
    for (unsigned j = 0; j < n; j++) m.col[j] = apply(rhs.col[j]);
    return m;
  }
  bool operator==(const Mat& rhs) const = default;
  Mat transpose() const {
    Mat m{n, std::vector<word>(n, 0)};
    for (unsigned j = 0; j < n; j++)
      for (unsigned i = 0; i < n; i++)
        if ((col[j] >> i) & 1) m.col[i] |= word(1) << j;
    return m;
  }
  Mat inverse() const {
    // eliminate on (col | I) pairs
    std::vector<word> a(col), inv(n);
    for (unsigned j = 0; j < n; j++) inv[j] = word(1) << j;
    // we solve M X = I columnwise via reduced basis of rows (a_j | e_j)
    // simpler: gaussian on the column space
    std::vector<std::pair<word, word>> rows;
    for (unsigned j = 0; j < n; j++) rows.push_back({a[j], inv[j]});
    std::vector<std::pair<word, word>> red;
    for (int b = (int)n - 1; b >= 0; b--) {
      std::size_t at = rows.size();
      for (std::size_t i = 0; i < rows.size(); i++)
        if ((rows[i].first >> b) & 1) {
          at = i;
          break;
        }
      if (at == rows.size()) throw std::runtime_error("gf2 matrix not invertible");
      auto piv = rows[at];
      rows.erase(rows.begin() + at);
      for (auto& r : rows)
        if ((r.first >> b) & 1) {
          r.first ^= piv.first;
          r.second ^= piv.second;
        }
      red.push_back(piv);
    }
    Mat out{n, std::vector<word>(n)};
    for (unsigned e = 0; e < n; e++) {
      word x = word(1) << e, c = 0;
      for (auto& [pf, pc] : red) {
        int b = 63 - __builtin_clzll(pf);
        if ((x >> b) & 1) {
          x ^= pf;
          c ^= pc;
        }
      }
      if (x) throw std::runtime_error("gf2 matrix not invertible");
      out.col[e] = c;
    }
    return out;
  }
};

inline unsigned rank_mat(const Mat& m) { return rank(m.col); }

}  // namespace obstr::gf2
