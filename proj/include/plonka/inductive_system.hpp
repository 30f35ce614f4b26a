#pragma once

// Inductive systems of algebras indexed by finite sup-semilattices, morphisms
// of the Grothendieck category over Ssl, reindexing, the constant systems on the
// initial and final algebras, and the hom-set transpose along a residuated map.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plonka/core_algebra.hpp"
#include "plonka/semilattice.hpp"

namespace plonka {

// One algebra per index and a transition homomorphism f(i,j) for every i <= j,
// diagonal included.
struct InductiveSystem {
  Signature signature;
  SupSemilattice index;
  std::vector<FiniteAlgebra> algebras;
  std::map<std::pair<Element, Element>, Map> transitions;

  const Map& transition(Element i, Element j) const {
    auto it = transitions.find({i, j});
    if (it == transitions.end()) {
      fail(ErrorKind::InvalidSystem, "no transition for (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
    }
    return it->second;
  }

  friend bool operator==(const InductiveSystem&, const InductiveSystem&) = default;
};

// Fills in identity transitions on the diagonal.
inline void add_identity_transitions(InductiveSystem& sys) {
  for (Element i = 0; i < sys.index.size(); ++i) {
    if (i < sys.algebras.size()) {
      sys.transitions.emplace(std::pair{i, i}, detail::identity_map(sys.algebras[i].size()));
    }
  }
}

inline std::optional<std::string> validate_indsys(const InductiveSystem& sys) {
  auto pair_name = [](Element i, Element j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  };
  if (auto v = validate_ssl(sys.index)) {
    return "index is not a semilattice: " + describe(*v);
  }
  const auto& I = sys.index;
  if (sys.algebras.size() != I.size()) {
    return "expected one algebra per index element";
  }
  for (Element i = 0; i < I.size(); ++i) {
    const auto& a = sys.algebras[i];
    if (a.signature() != sys.signature) {
      return "algebra " + std::to_string(i) + " has a different signature";
    }
    auto report = validate_algebra(a);
    if (!report.ok()) {
      return "algebra " + std::to_string(i) + ": " + describe(a, report.issues.front());
    }
  }
  for (const auto& [key, f] : sys.transitions) {
    auto [i, j] = key;
    if (i >= I.size() || j >= I.size() || !I.leq(i, j)) {
      return "transition given for non-comparable pair " + pair_name(i, j);
    }
  }
  for (Element i = 0; i < I.size(); ++i) {
    for (Element j = 0; j < I.size(); ++j) {
      if (!I.leq(i, j)) {
        continue;
      }
      auto it = sys.transitions.find({i, j});
      if (it == sys.transitions.end()) {
        return "missing transition " + pair_name(i, j);
      }
      const auto& f = it->second;
      const auto& a = sys.algebras[i];
      const auto& b = sys.algebras[j];
      if (f.size() != a.size() ||
          std::any_of(f.begin(), f.end(), [&](Element y) { return y >= b.size(); })) {
        return "transition " + pair_name(i, j) + " is not a total map between the fibers";
      }
      if (i == j && f != detail::identity_map(a.size())) {
        return "transition " + pair_name(i, i) + " is not the identity";
      }
      if (auto v = check_homomorphism(f, a, b)) {
        return "transition " + pair_name(i, j) + " is not a homomorphism at " +
               sys.signature[v->symbol].name + detail::format_tuple(v->tuple);
      }
    }
  }
  for (Element i = 0; i < I.size(); ++i) {
    for (Element j = 0; j < I.size(); ++j) {
      for (Element k = 0; k < I.size(); ++k) {
        if (I.leq(i, j) && I.leq(j, k) &&
            detail::compose(sys.transition(j, k), sys.transition(i, j)) != sys.transition(i, k)) {
          return "composition fails: f" + pair_name(j, k) + " ∘ f" + pair_name(i, j) + " != f" +
                 pair_name(i, k);
        }
      }
    }
  }
  return std::nullopt;
}

inline void require_valid(const InductiveSystem& sys, std::string_view where) {
  if (auto v = validate_indsys(sys)) {
    fail(ErrorKind::InvalidSystem, std::string(where) + ": " + *v);
  }
}

// (ξ, u) : (I, A) -> (P, B) with u_i : A_i -> B_ξ(i).
struct SystemMorphism {
  InductiveSystem source;
  InductiveSystem target;
  Map xi;
  std::vector<Map> components;

  friend bool operator==(const SystemMorphism&, const SystemMorphism&) = default;
};

inline std::optional<std::string> validate_system_morphism(const SystemMorphism& m) {
  const auto& src = m.source;
  const auto& tgt = m.target;
  if (src.signature != tgt.signature) {
    return "source and target have different signatures";
  }
  if (m.xi.size() != src.index.size() ||
      std::any_of(m.xi.begin(), m.xi.end(), [&](Element p) { return p >= tgt.index.size(); })) {
    return "index map is not total";
  }
  if (auto v = check_ssl_morphism(m.xi, src.index, tgt.index)) {
    return "index map does not preserve the join of (" + std::to_string(v->first) + "," +
           std::to_string(v->second) + ")";
  }
  if (m.components.size() != src.index.size()) {
    return "expected one component per source index";
  }
  for (Element i = 0; i < src.index.size(); ++i) {
    const auto& u = m.components[i];
    const auto& a = src.algebras[i];
    const auto& b = tgt.algebras[m.xi[i]];
    if (u.size() != a.size() ||
        std::any_of(u.begin(), u.end(), [&](Element y) { return y >= b.size(); })) {
      return "component " + std::to_string(i) + " is not a total map";
    }
    if (auto v = check_homomorphism(u, a, b)) {
      return "component " + std::to_string(i) + " is not a homomorphism at " +
             src.signature[v->symbol].name + detail::format_tuple(v->tuple);
    }
  }
  for (Element i = 0; i < src.index.size(); ++i) {
    for (Element j = 0; j < src.index.size(); ++j) {
      if (!src.index.leq(i, j)) {
        continue;
      }
      const auto lhs = detail::compose(m.components[j], src.transition(i, j));
      const auto rhs = detail::compose(tgt.transition(m.xi[i], m.xi[j]), m.components[i]);
      if (lhs != rhs) {
        return "naturality square (" + std::to_string(i) + "," + std::to_string(j) +
               ") does not commute";
      }
    }
  }
  return std::nullopt;
}

inline bool is_system_morphism(const SystemMorphism& m) {
  return !validate_system_morphism(m).has_value();
}

inline void require_valid(const SystemMorphism& m, std::string_view where) {
  if (auto v = validate_system_morphism(m)) {
    fail(ErrorKind::InvalidMorphism, std::string(where) + ": " + *v);
  }
}

inline SystemMorphism identity_morphism(const InductiveSystem& sys) {
  std::vector<Map> components;
  for (const auto& a : sys.algebras) {
    components.push_back(detail::identity_map(a.size()));
  }
  return {sys, sys, detail::identity_map(sys.index.size()), std::move(components)};
}

// (ξ2, u2) ∘ (ξ1, u1) = (ξ2 ∘ ξ1, (u2)_ξ1(i) ∘ (u1)_i).
inline SystemMorphism compose(const SystemMorphism& second, const SystemMorphism& first) {
  if (first.target != second.source) {
    fail(ErrorKind::CompositionMismatch, "target of the first morphism is not the source of the second");
  }
  std::vector<Map> components;
  for (Element i = 0; i < first.source.index.size(); ++i) {
    components.push_back(
        detail::compose(second.components[first.xi[i]], first.components[i]));
  }
  SystemMorphism out{first.source, second.target, detail::compose(second.xi, first.xi),
                     std::move(components)};
  require_valid(out, "compose");
  return out;
}

// A_ξ over I: algebras A_ξ(i) and transitions f(ξ(i), ξ(j)).
inline InductiveSystem reindex(const InductiveSystem& sys, const Map& xi,
                               const SupSemilattice& source) {
  if (auto v = check_ssl_morphism(xi, source, sys.index)) {
    fail(ErrorKind::InvalidMorphism, "reindexing map is not a join morphism");
  }
  InductiveSystem out;
  out.signature = sys.signature;
  out.index = source;
  for (Element i = 0; i < source.size(); ++i) {
    out.algebras.push_back(sys.algebras.at(xi[i]));
  }
  for (Element i = 0; i < source.size(); ++i) {
    for (Element j = 0; j < source.size(); ++j) {
      if (source.leq(i, j)) {
        out.transitions.emplace(std::pair{i, j}, sys.transition(xi[i], xi[j]));
      }
    }
  }
  return out;
}

namespace detail {

inline FiniteAlgebra empty_algebra(const Signature& sig) {
  require_constant_free(sig, "empty algebra");
  return FiniteAlgebra(sig, 0, std::vector<std::vector<Element>>(sig.size()));
}

inline FiniteAlgebra singleton_algebra(const Signature& sig) {
  return make_algebra(sig, 1, [](std::size_t, std::span<const Element>) { return Element{0}; });
}

inline InductiveSystem constant_system(const SupSemilattice& s, const Signature& sig,
                                       const FiniteAlgebra& fiber) {
  InductiveSystem out{sig, s, std::vector<FiniteAlgebra>(s.size(), fiber), {}};
  for (Element i = 0; i < s.size(); ++i) {
    for (Element j = 0; j < s.size(); ++j) {
      if (s.leq(i, j)) {
        out.transitions.emplace(std::pair{i, j}, identity_map(fiber.size()));
      }
    }
  }
  return out;
}

}  // namespace detail

// L(s): the empty (initial) algebra at every index. Only constant-free
// signatures are supported, where the initial algebra is finite.
inline InductiveSystem constant_initial_system(const SupSemilattice& s, const Signature& sig) {
  require_constant_free(sig, "constant_initial_system");
  return detail::constant_system(s, sig, detail::empty_algebra(sig));
}

// K(s): the one-element algebra at every index.
inline InductiveSystem constant_final_system(const SupSemilattice& s, const Signature& sig) {
  return detail::constant_system(s, sig, detail::singleton_algebra(sig));
}

// L(ξ) : L(I) -> L(P).
inline SystemMorphism initial_system_morphism(const Map& xi, const SupSemilattice& source,
                                              const SupSemilattice& target, const Signature& sig) {
  SystemMorphism m{constant_initial_system(source, sig), constant_initial_system(target, sig), xi,
                   std::vector<Map>(source.size())};
  require_valid(m, "initial_system_morphism");
  return m;
}

// K(ξ) : K(I) -> K(P).
inline SystemMorphism final_system_morphism(const Map& xi, const SupSemilattice& source,
                                            const SupSemilattice& target, const Signature& sig) {
  SystemMorphism m{constant_final_system(source, sig), constant_final_system(target, sig), xi,
                   std::vector<Map>(source.size(), Map{0})};
  require_valid(m, "final_system_morphism");
  return m;
}

// γ_s : L(s) -> K(s), identity on the index and empty component maps.
inline SystemMorphism canonical_comparison(const SupSemilattice& s, const Signature& sig) {
  require_constant_free(sig, "canonical_comparison");
  SystemMorphism m{constant_initial_system(s, sig), constant_final_system(s, sig),
                   detail::identity_map(s.size()), std::vector<Map>(s.size())};
  require_valid(m, "canonical_comparison");
  return m;
}

// The unique morphism L(I) -> B lying over ξ : I -> P.
inline SystemMorphism morphism_from_initial(const SupSemilattice& source, const Map& xi,
                                            const InductiveSystem& target) {
  SystemMorphism m{constant_initial_system(source, target.signature), target, xi,
                   std::vector<Map>(source.size())};
  require_valid(m, "morphism_from_initial");
  return m;
}

// The unique morphism A -> K(P) lying over ξ : I -> P.
inline SystemMorphism morphism_to_final(const InductiveSystem& source, const Map& xi,
                                        const SupSemilattice& target) {
  std::vector<Map> components;
  for (const auto& a : source.algebras) {
    components.emplace_back(a.size(), 0);
  }
  SystemMorphism m{source, constant_final_system(target, source.signature), xi,
                   std::move(components)};
  require_valid(m, "morphism_to_final");
  return m;
}

// Every morphism source -> target over the fixed index map xi, in lexicographic
// order of the component families.
template <typename F>
void for_each_system_morphism(const InductiveSystem& source, const InductiveSystem& target,
                              const Map& xi, F&& f) {
  const std::size_t n = source.index.size();
  std::vector<std::vector<Map>> candidates(n);
  for (Element i = 0; i < n; ++i) {
    for_each_homomorphism(source.algebras[i], target.algebras.at(xi[i]),
                          [&](const Map& h) { candidates[i].push_back(h); });
    if (candidates[i].empty()) {
      return;
    }
  }
  std::vector<std::size_t> choice(n, 0);
  while (true) {
    SystemMorphism m{source, target, xi, {}};
    for (Element i = 0; i < n; ++i) {
      m.components.push_back(candidates[i][choice[i]]);
    }
    if (is_system_morphism(m)) {
      f(m);
    }
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++choice[pos] < candidates[pos].size()) {
        break;
      }
      choice[pos] = 0;
      if (pos == 0) {
        return;
      }
    }
    if (n == 0) {
      return;
    }
  }
}

// φ(u)_p = u_ζ(p) ∘ g(p, ξζ(p)) for u : B_ξ -> A over I; the result is a
// morphism B -> A_ζ over P. Both are represented with identity index maps.
inline SystemMorphism residuated_transpose(const InductiveSystem& a, const InductiveSystem& b,
                                           const Map& xi, const SystemMorphism& u) {
  auto zeta = residual_left_adjoint(xi, a.index, b.index);
  if (!zeta) {
    fail(ErrorKind::NotResiduated, "index map has no residual");
  }
  const auto b_xi = reindex(b, xi, a.index);
  if (u.source != b_xi || u.target != a || u.xi != detail::identity_map(a.index.size())) {
    fail(ErrorKind::InvalidMorphism, "expected a morphism B_ξ -> A over the identity");
  }
  require_valid(u, "residuated_transpose");
  const auto a_zeta = reindex(a, *zeta, b.index);
  std::vector<Map> components;
  for (Element p = 0; p < b.index.size(); ++p) {
    const Element zp = (*zeta)[p];
    components.push_back(detail::compose(u.components[zp], b.transition(p, xi[zp])));
  }
  SystemMorphism v{b, a_zeta, detail::identity_map(b.index.size()), std::move(components)};
  require_valid(v, "residuated_transpose result");
  return v;
}

// ψ(v)_i = f(ζξ(i), i) ∘ v_ξ(i) for v : B -> A_ζ over P.
inline SystemMorphism inverse_transpose(const InductiveSystem& a, const InductiveSystem& b,
                                        const Map& xi, const SystemMorphism& v) {
  auto zeta = residual_left_adjoint(xi, a.index, b.index);
  if (!zeta) {
    fail(ErrorKind::NotResiduated, "index map has no residual");
  }
  const auto a_zeta = reindex(a, *zeta, b.index);
  if (v.source != b || v.target != a_zeta || v.xi != detail::identity_map(b.index.size())) {
    fail(ErrorKind::InvalidMorphism, "expected a morphism B -> A_ζ over the identity");
  }
  require_valid(v, "inverse_transpose");
  std::vector<Map> components;
  for (Element i = 0; i < a.index.size(); ++i) {
    const Element zxi = (*zeta)[xi[i]];
    components.push_back(detail::compose(a.transition(zxi, i), v.components[xi[i]]));
  }
  SystemMorphism u{reindex(b, xi, a.index), a, detail::identity_map(a.index.size()),
                   std::move(components)};
  require_valid(u, "inverse_transpose result");
  return u;
}

}  // namespace plonka
