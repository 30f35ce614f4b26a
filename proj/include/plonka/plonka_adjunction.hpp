#pragma once

// The Płonka sum of an inductive system, the decomposition of a Płonka algebra
// into the inductive system of its induced-congruence classes, the unit and
// counit between them, the universal extension, and an exhaustive check of the
// resulting adjunction on small instances.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plonka/band.hpp"
#include "plonka/core_algebra.hpp"
#include "plonka/inductive_system.hpp"
#include "plonka/plonka_algebra.hpp"
#include "plonka/semilattice.hpp"

namespace plonka {

// An element (i, x) of the disjoint union, x in A_i.
struct SumElement {
  Element index;
  Element value;

  friend bool operator==(const SumElement&, const SumElement&) = default;
  friend auto operator<=>(const SumElement&, const SumElement&) = default;
};

struct PlonkaSum {
  PlonkaAlgebra plonka;
  std::vector<SumElement> elements;  // ordered by (index, value)
  std::vector<std::size_t> offsets;  // offsets[i] = number of elements with index < i

  Element encode(Element index, Element value) const { return offsets.at(index) + value; }
  SumElement decode(Element e) const { return elements.at(e); }
};

namespace detail {

inline std::vector<std::size_t> fiber_offsets(const InductiveSystem& sys) {
  std::vector<std::size_t> offsets;
  std::size_t total = 0;
  for (const auto& a : sys.algebras) {
    offsets.push_back(total);
    total += a.size();
  }
  return offsets;
}

}  // namespace detail

// Operations push every argument to the join of their indices and apply the
// operation there; D((x,j),(y,k)) = (f(j, j∨k)(x), j∨k).
inline PlonkaSum plonka_sum(const InductiveSystem& sys) {
  require_constant_free(sys.signature, "plonka_sum");
  require_valid(sys, "plonka_sum");
  const auto& I = sys.index;
  PlonkaSum sum;
  sum.offsets = detail::fiber_offsets(sys);
  for (Element i = 0; i < I.size(); ++i) {
    for (Element x = 0; x < sys.algebras[i].size(); ++x) {
      sum.elements.push_back({i, x});
    }
  }
  const std::size_t n = sum.elements.size();
  std::vector<Element> indices;
  std::vector<Element> pushed;
  auto algebra = make_algebra(sys.signature, n, [&](std::size_t s, std::span<const Element> t) {
    indices.assign(t.size(), 0);
    for (std::size_t j = 0; j < t.size(); ++j) {
      indices[j] = sum.elements[t[j]].index;
    }
    const Element top = I.join_all(indices);
    pushed.assign(t.size(), 0);
    for (std::size_t j = 0; j < t.size(); ++j) {
      const auto [i, x] = sum.elements[t[j]];
      pushed[j] = sys.transition(i, top)[x];
    }
    return sum.encode(top, sys.algebras[top].apply(s, pushed));
  });
  std::vector<Element> d(n * n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      const auto [j, x] = sum.elements[a];
      const Element top = I.join(j, sum.elements[b].index);
      d[a * n + b] = sum.encode(top, sys.transition(j, top)[x]);
    }
  }
  sum.plonka = PlonkaAlgebra{std::move(algebra), LeftNormalBand(n, std::move(d))};
  if (auto v = validate_plonka(sum.plonka)) {
    fail(ErrorKind::Internal, "Płonka sum fails " + describe(sum.plonka, *v));
  }
  return sum;
}

struct Decomposition {
  SupSemilattice semilattice;                // Sl(A, D)
  InductiveSystem system;                    // one subalgebra per class
  std::vector<std::vector<Element>> classes; // class -> ascending members
  Map block_of;                              // element -> class
  Map position_of;                           // element -> position inside its class

  Element embed(Element block, Element position) const { return classes.at(block).at(position); }
};

// Classes of the induced congruence as subalgebras, ordered as in Sl(A, D),
// with transitions z -> D(z, y) for any y in the larger class.
inline Decomposition decompose(const PlonkaAlgebra& p) {
  if (auto v = validate_plonka(p)) {
    fail(ErrorKind::NotAPlonkaAlgebra, describe(p, *v));
  }
  auto sl = sl_reflect(p.band);
  Decomposition dec;
  dec.semilattice = sl.semilattice;
  dec.classes = sl.relation.blocks();
  dec.block_of = sl.projection;
  dec.position_of.assign(p.size(), 0);
  for (const auto& members : dec.classes) {
    for (std::size_t pos = 0; pos < members.size(); ++pos) {
      dec.position_of[members[pos]] = pos;
    }
  }
  dec.system.signature = p.signature();
  dec.system.index = sl.semilattice;
  for (const auto& members : dec.classes) {
    if (!is_closed(p.algebra, members)) {
      fail(ErrorKind::Internal, "a class of the induced congruence is not closed");
    }
    dec.system.algebras.push_back(subalgebra(p.algebra, members).algebra);
  }
  const auto& S = dec.semilattice;
  for (Element x = 0; x < S.size(); ++x) {
    for (Element y = 0; y < S.size(); ++y) {
      if (!S.leq(x, y)) {
        continue;
      }
      const auto& from = dec.classes[x];
      const auto& to = dec.classes[y];
      Map f(from.size());
      for (std::size_t pos = 0; pos < from.size(); ++pos) {
        const Element image = p.d(from[pos], to.front());
        for (Element other : to) {
          if (p.d(from[pos], other) != image) {
            fail(ErrorKind::Internal, "class transition depends on the representative");
          }
        }
        if (dec.block_of[image] != y) {
          fail(ErrorKind::Internal, "class transition leaves the target class");
        }
        f[pos] = dec.position_of[image];
      }
      dec.system.transitions.emplace(std::pair{x, y}, std::move(f));
    }
  }
  require_valid(dec.system, "decompose");
  return dec;
}

namespace detail {

inline SystemMorphism is_on_morphism(const PlonkaAlgebra& source, const Decomposition& src,
                                     const PlonkaAlgebra& target, const Decomposition& tgt,
                                     const Map& h) {
  Map xi = band_morphism_to_sl_morphism(source.band, target.band, h);
  std::vector<Map> components;
  for (Element block = 0; block < src.classes.size(); ++block) {
    Map u;
    for (Element z : src.classes[block]) {
      if (tgt.block_of[h[z]] != xi[block]) {
        fail(ErrorKind::Internal, "morphism does not map a class into its image class");
      }
      u.push_back(tgt.position_of[h[z]]);
    }
    components.push_back(std::move(u));
  }
  SystemMorphism m{src.system, tgt.system, std::move(xi), std::move(components)};
  require_valid(m, "is_on_morphism");
  return m;
}

}  // namespace detail

// Is(h) = (Sl(h), restrictions of h to the classes).
inline SystemMorphism is_on_morphism(const PlonkaMorphism& h) {
  if (auto v = check_plonka_morphism(h.map, h.source, h.target)) {
    fail(ErrorKind::NotAPlonkaMorphism, v->detail);
  }
  return detail::is_on_morphism(h.source, decompose(h.source), h.target, decompose(h.target), h.map);
}

namespace detail {

inline void require_nonempty_fibers(const InductiveSystem& sys, std::string_view where) {
  for (Element i = 0; i < sys.algebras.size(); ++i) {
    if (sys.algebras[i].size() == 0) {
      fail(ErrorKind::EmptyFiber, std::string(where) + ": fiber " + std::to_string(i) + " is empty");
    }
  }
}

inline SystemMorphism unit_from(const InductiveSystem& sys, const PlonkaSum& sum,
                                const Decomposition& dec) {
  require_nonempty_fibers(sys, "unit");
  Map alpha(sys.index.size());
  std::vector<Map> components;
  for (Element i = 0; i < sys.index.size(); ++i) {
    alpha[i] = dec.block_of[sum.encode(i, 0)];
    Map v;
    for (Element z = 0; z < sys.algebras[i].size(); ++z) {
      const Element e = sum.encode(i, z);
      if (dec.block_of[e] != alpha[i]) {
        fail(ErrorKind::Internal, "unit depends on the choice of fiber element");
      }
      v.push_back(dec.position_of[e]);
    }
    components.push_back(std::move(v));
  }
  SystemMorphism m{sys, dec.system, std::move(alpha), std::move(components)};
  require_valid(m, "unit");
  return m;
}

}  // namespace detail

// η = (α, v): α(i) is the class of (z, i) for any z in A_i, v_i(z) = (z, i).
// Refuses systems with an empty fiber, where α is not determined.
inline SystemMorphism unit(const InductiveSystem& sys) {
  require_valid(sys, "unit");
  detail::require_nonempty_fibers(sys, "unit");
  auto sum = plonka_sum(sys);
  return detail::unit_from(sys, sum, decompose(sum.plonka));
}

// (ξ, u)♯ : Pł(A) -> q, (x, j) -> u_j(x) read inside q.
inline PlonkaMorphism universal_extension(const SystemMorphism& m, const PlonkaAlgebra& q) {
  const auto dec = decompose(q);
  if (m.target != dec.system) {
    fail(ErrorKind::TargetMismatch, "morphism target is not the decomposition of the algebra");
  }
  require_valid(m, "universal_extension");
  auto sum = plonka_sum(m.source);
  Map map;
  for (const auto& [j, x] : sum.elements) {
    map.push_back(dec.embed(m.xi[j], m.components[j][x]));
  }
  if (auto v = check_plonka_morphism(map, sum.plonka, q)) {
    fail(ErrorKind::Internal, "universal extension is not a Płonka morphism: " + v->detail);
  }
  return {std::move(sum.plonka), q, std::move(map)};
}

// ε_q = (id on Is(q))♯, a bijection Pł(Is(q)) -> q.
inline PlonkaMorphism counit(const PlonkaAlgebra& q) {
  auto eps = universal_extension(identity_morphism(decompose(q).system), q);
  if (!detail::is_bijective(eps.map, q.size())) {
    fail(ErrorKind::Internal, "counit is not bijective");
  }
  return eps;
}

// Pł(ξ, u) : (x, i) -> (u_i(x), ξ(i)).
inline PlonkaMorphism pl_on_morphism(const SystemMorphism& m) {
  if (auto v = validate_system_morphism(m)) {
    fail(ErrorKind::InvalidMorphism, *v);
  }
  auto source = plonka_sum(m.source);
  auto target = plonka_sum(m.target);
  Map map;
  for (const auto& [i, x] : source.elements) {
    map.push_back(target.encode(m.xi[i], m.components[i][x]));
  }
  if (auto v = check_plonka_morphism(map, source.plonka, target.plonka)) {
    fail(ErrorKind::Internal, "Pł(m) is not a Płonka morphism: " + v->detail);
  }
  return {std::move(source.plonka), std::move(target.plonka), std::move(map)};
}

// Classes of the sum's induced congruence are exactly the index fibers, and
// the class order is the index order.
inline std::optional<std::string> check_sum_fibration(const InductiveSystem& sys) {
  auto sum = plonka_sum(sys);
  auto sl = sl_reflect(sum.plonka.band);
  const std::size_t n = sum.elements.size();
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      const auto [i, x] = sum.elements[a];
      const auto [j, y] = sum.elements[b];
      if (sl.relation.related(a, b) != (i == j)) {
        return "classes differ from fibers at elements " + std::to_string(a) + ", " +
               std::to_string(b);
      }
      if (sl.semilattice.leq(sl.projection[a], sl.projection[b]) != sys.index.leq(i, j)) {
        return "class order differs from index order at elements " + std::to_string(a) + ", " +
               std::to_string(b);
      }
    }
  }
  return std::nullopt;
}

// Is(ε_q) ∘ η_Is(q) = id_Is(q).
inline bool unit_triangle_holds(const PlonkaAlgebra& q) {
  const auto q_dec = decompose(q);
  const auto& is_q = q_dec.system;
  detail::require_nonempty_fibers(is_q, "unit_triangle_holds");
  const auto eps = counit(q);
  const auto sum = plonka_sum(is_q);
  const auto sum_dec = decompose(sum.plonka);
  const auto eta = detail::unit_from(is_q, sum, sum_dec);
  const auto is_eps = detail::is_on_morphism(sum.plonka, sum_dec, q, q_dec, eps.map);
  return compose(is_eps, eta) == identity_morphism(is_q);
}

// ε_Pł(A) ∘ Pł(η_A) = id_Pł(A).
inline bool counit_triangle_holds(const InductiveSystem& sys) {
  const auto pl_eta = pl_on_morphism(unit(sys));
  const auto eps = counit(pl_eta.source);
  return compose(eps, pl_eta) == identity_morphism(pl_eta.source);
}

struct AdjunctionOptions {
  std::size_t max_carrier = 6;  // largest Płonka sum / target carrier to enumerate over
};

struct AdjunctionReport {
  bool factorization = false;          // m = Is(m♯) ∘ η
  std::size_t factoring_morphisms = 0; // Płonka morphisms h with Is(h) ∘ η = m
  bool unique = false;                 // ... and that set is exactly {m♯}
  bool unit_triangle = false;          // Is(ε_q) ∘ η_Is(q) = id
  bool counit_triangle = false;        // ε_Pł(A) ∘ Pł(η_A) = id
  std::size_t candidates = 0;          // maps enumerated
  PlonkaMorphism extension;

  bool passed() const noexcept { return factorization && unique && unit_triangle && counit_triangle; }
};

// Exhaustive check of the universal property of η at (sys, q, m) together with
// both triangle identities.
inline AdjunctionReport verify_adjunction(const InductiveSystem& sys, const PlonkaAlgebra& q,
                                          const SystemMorphism& m,
                                          const AdjunctionOptions& options = {}) {
  require_valid(sys, "verify_adjunction");
  if (m.source != sys) {
    fail(ErrorKind::InvalidMorphism, "morphism source is not the given system");
  }
  detail::require_nonempty_fibers(sys, "verify_adjunction");
  const auto sum = plonka_sum(sys);
  if (sum.plonka.size() > options.max_carrier || q.size() > options.max_carrier) {
    fail(ErrorKind::SearchSpaceTooLarge,
         "carriers of size " + std::to_string(sum.plonka.size()) + " and " +
             std::to_string(q.size()) + " exceed the bound " + std::to_string(options.max_carrier));
  }
  const auto sum_dec = decompose(sum.plonka);
  const auto q_dec = decompose(q);
  const auto eta = detail::unit_from(sys, sum, sum_dec);

  AdjunctionReport report;
  report.extension = universal_extension(m, q);
  auto is_of = [&](const Map& h) {
    return detail::is_on_morphism(sum.plonka, sum_dec, q, q_dec, h);
  };
  report.factorization = compose(is_of(report.extension.map), eta) == m;

  std::vector<Map> factoring;
  detail::for_each_map(sum.plonka.size(), q.size(), [&](const Map& h) {
    ++report.candidates;
    if (is_plonka_morphism(h, sum.plonka, q) && compose(is_of(h), eta) == m) {
      factoring.push_back(h);
    }
  });
  report.factoring_morphisms = factoring.size();
  report.unique = factoring.size() == 1 && factoring.front() == report.extension.map;

  report.unit_triangle = unit_triangle_holds(q);
  report.counit_triangle = counit_triangle_holds(sys);
  return report;
}

}  // namespace plonka
