#pragma once

// Brute-force reference implementations used to cross-check the library.
// Everything here reads raw tables and re-derives results from definitions by
// exhaustive search; none of it calls the library's algorithms.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "plonka/plonka.hpp"

namespace oracle {

using plonka::Element;
using plonka::FiniteAlgebra;
using plonka::Map;

using Labels = std::vector<std::size_t>;

inline std::size_t index_of(const std::vector<Element>& t, std::size_t n) {
  std::size_t idx = 0;
  for (Element x : t) idx = idx * n + x;
  return idx;
}

inline Element op(const FiniteAlgebra& a, std::size_t s, const std::vector<Element>& t) {
  return a.tables()[s][index_of(t, a.size())];
}

// Every k-tuple over n, in any order.
inline std::vector<std::vector<Element>> tuples(std::size_t n, std::size_t k) {
  std::vector<std::vector<Element>> out{{}};
  for (std::size_t pos = 0; pos < k; ++pos) {
    std::vector<std::vector<Element>> next;
    for (const auto& t : out) {
      for (Element x = 0; x < n; ++x) {
        auto u = t;
        u.push_back(x);
        next.push_back(std::move(u));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::vector<Map> maps(std::size_t n, std::size_t m) { return tuples(m, n); }

// Restricted growth strings: every partition of n elements exactly once.
inline std::vector<Labels> partitions(std::size_t n) {
  std::vector<Labels> out;
  Labels cur(n, 0);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t pos, std::size_t blocks) {
    if (pos == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      cur[pos] = b;
      go(pos + 1, std::max(blocks, b + 1));
    }
  };
  go(0, 0);
  return out;
}

// Relabel so that blocks are numbered by least member.
inline Labels canonical(const Labels& l) {
  std::map<std::size_t, std::size_t> rename;
  Labels out;
  for (auto x : l) {
    auto it = rename.find(x);
    if (it == rename.end()) it = rename.emplace(x, rename.size()).first;
    out.push_back(it->second);
  }
  return out;
}

inline bool refines(const Labels& fine, const Labels& coarse) {
  for (std::size_t x = 0; x < fine.size(); ++x)
    for (std::size_t y = 0; y < fine.size(); ++y)
      if (fine[x] == fine[y] && coarse[x] != coarse[y]) return false;
  return true;
}

inline bool is_hom(const Map& f, const FiniteAlgebra& a, const FiniteAlgebra& b) {
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    for (const auto& t : tuples(a.size(), a.signature()[s].arity)) {
      std::vector<Element> ft;
      for (auto x : t) ft.push_back(f[x]);
      if (f[op(a, s, t)] != op(b, s, ft)) return false;
    }
  }
  return true;
}

inline bool is_congruence(const FiniteAlgebra& a, const Labels& l) {
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    const auto all = tuples(a.size(), a.signature()[s].arity);
    for (const auto& t : all) {
      for (const auto& u : all) {
        bool related = true;
        for (std::size_t j = 0; j < t.size(); ++j) related = related && l[t[j]] == l[u[j]];
        if (related && l[op(a, s, t)] != l[op(a, s, u)]) return false;
      }
    }
  }
  return true;
}

// The least congruence containing the pairs, found among all partitions; the
// result is asserted to refine every other candidate.
inline std::optional<Labels> least_congruence(const FiniteAlgebra& a,
                                              const std::vector<std::pair<Element, Element>>& pairs) {
  std::vector<Labels> candidates;
  for (const auto& l : partitions(a.size())) {
    bool contains = true;
    for (auto [x, y] : pairs) contains = contains && l[x] == l[y];
    if (contains && is_congruence(a, l)) candidates.push_back(l);
  }
  for (const auto& c : candidates) {
    bool least = true;
    for (const auto& d : candidates) least = least && refines(c, d);
    if (least) return canonical(c);
  }
  return std::nullopt;
}

inline bool is_closed(const FiniteAlgebra& a, const std::set<Element>& s) {
  for (std::size_t k = 0; k < a.signature().size(); ++k) {
    for (const auto& t : tuples(a.size(), a.signature()[k].arity)) {
      bool inside = true;
      for (auto x : t) inside = inside && s.count(x);
      if (inside && !s.count(op(a, k, t))) return false;
    }
  }
  return true;
}

// The least closed subset containing seed, by scanning every subset.
inline std::vector<Element> least_closed(const FiniteAlgebra& a, const std::vector<Element>& seed) {
  std::optional<std::set<Element>> best;
  for (std::size_t mask = 0; mask < (std::size_t{1} << a.size()); ++mask) {
    std::set<Element> s;
    for (Element x = 0; x < a.size(); ++x)
      if (mask >> x & 1U) s.insert(x);
    bool has_seed = std::all_of(seed.begin(), seed.end(), [&](Element x) { return s.count(x); });
    if (has_seed && is_closed(a, s) && (!best || s.size() < best->size())) best = s;
  }
  return {best->begin(), best->end()};
}

inline Element d(const std::vector<Element>& table, std::size_t n, Element x, Element y) {
  return table[x * n + y];
}

inline bool is_lnb(const std::vector<Element>& t, std::size_t n) {
  for (Element x = 0; x < n; ++x) {
    if (d(t, n, x, x) != x) return false;
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z) {
        if (d(t, n, x, d(t, n, y, z)) != d(t, n, d(t, n, x, y), z)) return false;
        if (d(t, n, x, d(t, n, y, z)) != d(t, n, x, d(t, n, z, y))) return false;
      }
  }
  return true;
}

inline bool is_ssl(const std::vector<Element>& t, std::size_t n) {
  for (Element x = 0; x < n; ++x) {
    if (d(t, n, x, x) != x) return false;
    for (Element y = 0; y < n; ++y) {
      if (d(t, n, x, y) != d(t, n, y, x)) return false;
      for (Element z = 0; z < n; ++z)
        if (d(t, n, x, d(t, n, y, z)) != d(t, n, d(t, n, x, y), z)) return false;
    }
  }
  return true;
}

inline bool is_join_morphism(const Map& f, const plonka::SupSemilattice& s,
                             const plonka::SupSemilattice& t) {
  for (Element x = 0; x < s.size(); ++x)
    for (Element y = 0; y < s.size(); ++y)
      if (f[s.table()[x * s.size() + y]] != t.table()[f[x] * t.size() + f[y]]) return false;
  return true;
}

inline bool is_band_morphism(const Map& f, const plonka::LeftNormalBand& s,
                             const plonka::LeftNormalBand& t) {
  for (Element x = 0; x < s.size(); ++x)
    for (Element y = 0; y < s.size(); ++y)
      if (f[s.table()[x * s.size() + y]] != t.table()[f[x] * t.size() + f[y]]) return false;
  return true;
}

// D(x_0, D(x_1, ... x_{n-1})).
inline Element fold(const std::vector<Element>& table, std::size_t n, const std::vector<Element>& xs) {
  Element acc = xs.back();
  for (std::size_t j = xs.size() - 1; j-- > 0;) acc = d(table, n, xs[j], acc);
  return acc;
}

// D1-D5 from the definitions.
inline bool is_plonka(const FiniteAlgebra& a, const std::vector<Element>& t) {
  const auto n = a.size();
  if (!is_lnb(t, n)) return false;
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    const auto k = a.signature()[s].arity;
    for (const auto& xs : tuples(n, k)) {
      for (Element y = 0; y < n; ++y) {
        std::vector<Element> pushed;
        for (auto x : xs) pushed.push_back(d(t, n, x, y));
        if (d(t, n, op(a, s, xs), y) != op(a, s, pushed)) return false;
        if (d(t, n, y, op(a, s, xs)) != d(t, n, y, fold(t, n, xs))) return false;
      }
    }
  }
  return true;
}

// Least element (in the order of s) satisfying pred, if unique.
inline std::optional<Element> least_with(const plonka::SupSemilattice& s,
                                         const std::function<bool(Element)>& pred) {
  const auto n = s.size();
  auto leq = [&](Element x, Element y) { return s.table()[x * n + y] == y; };
  for (Element x = 0; x < n; ++x) {
    if (!pred(x)) continue;
    bool least = true;
    for (Element y = 0; y < n; ++y)
      if (pred(y) && !leq(x, y)) least = false;
    if (least) return x;
  }
  return std::nullopt;
}

// ζ(p) = least i with p ≤ ξ(i), then the two adjunction inequalities.
inline std::optional<Map> residual(const Map& xi, const plonka::SupSemilattice& i_sl,
                                   const plonka::SupSemilattice& p_sl) {
  const auto np = p_sl.size();
  const auto ni = i_sl.size();
  auto leq_p = [&](Element x, Element y) { return p_sl.table()[x * np + y] == y; };
  auto leq_i = [&](Element x, Element y) { return i_sl.table()[x * ni + y] == y; };
  Map zeta;
  for (Element p = 0; p < np; ++p) {
    auto z = least_with(i_sl, [&](Element i) { return leq_p(p, xi[i]); });
    if (!z) return std::nullopt;
    zeta.push_back(*z);
  }
  for (Element i = 0; i < ni; ++i)
    if (!leq_i(zeta[xi[i]], i)) return std::nullopt;
  return zeta;
}

// Every system morphism source -> target over xi, by scanning all families of
// maps and checking hom conditions and naturality from the definitions.
inline std::vector<std::vector<Map>> system_homs(const plonka::InductiveSystem& src,
                                                 const plonka::InductiveSystem& tgt, const Map& xi) {
  const auto n = src.index.size();
  std::vector<std::vector<Map>> options(n);
  for (Element i = 0; i < n; ++i)
    for (const auto& f : maps(src.algebras[i].size(), tgt.algebras[xi[i]].size()))
      if (is_hom(f, src.algebras[i], tgt.algebras[xi[i]])) options[i].push_back(f);
  std::vector<std::vector<Map>> out;
  std::vector<Map> cur(n);
  auto natural = [&]() {
    for (Element i = 0; i < n; ++i)
      for (Element j = 0; j < n; ++j) {
        if (src.index.table()[i * n + j] != j) continue;
        const auto& f = src.transitions.at({i, j});
        const auto& g = tgt.transitions.at({xi[i], xi[j]});
        for (Element x = 0; x < src.algebras[i].size(); ++x)
          if (cur[j][f[x]] != g[cur[i][x]]) return false;
      }
    return true;
  };
  std::function<void(Element)> go = [&](Element i) {
    if (i == n) {
      if (natural()) out.push_back(cur);
      return;
    }
    for (const auto& f : options[i]) {
      cur[i] = f;
      go(i + 1);
    }
  };
  go(0);
  return out;
}

// The Płonka sum written straight from the formulas: carrier pairs (i, x)
// listed index-major; returns (operation tables, band table, carrier).
struct RawSum {
  std::vector<std::pair<Element, Element>> carrier;
  std::vector<std::vector<Element>> tables;
  std::vector<Element> band;
};

inline RawSum sum(const plonka::InductiveSystem& sys) {
  RawSum out;
  const auto& I = sys.index;
  const auto ni = I.size();
  for (Element i = 0; i < ni; ++i)
    for (Element x = 0; x < sys.algebras[i].size(); ++x) out.carrier.emplace_back(i, x);
  const auto n = out.carrier.size();
  auto pos = [&](Element i, Element x) {
    return static_cast<Element>(std::find(out.carrier.begin(), out.carrier.end(), std::pair{i, x}) -
                                out.carrier.begin());
  };
  auto join = [&](Element i, Element j) { return I.table()[i * ni + j]; };
  for (std::size_t s = 0; s < sys.signature.size(); ++s) {
    std::vector<Element> table;
    for (const auto& t : tuples(n, sys.signature[s].arity)) {
      Element top = out.carrier[t[0]].first;
      for (auto e : t) top = join(top, out.carrier[e].first);
      std::vector<Element> args;
      for (auto e : t) args.push_back(sys.transitions.at({out.carrier[e].first, top})[out.carrier[e].second]);
      table.push_back(pos(top, op(sys.algebras[top], s, args)));
    }
    out.tables.push_back(std::move(table));
  }
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      auto [j, x] = out.carrier[a];
      auto k = out.carrier[b].first;
      out.band.push_back(pos(join(j, k), sys.transitions.at({j, join(j, k)})[x]));
    }
  return out;
}

}  // namespace oracle
