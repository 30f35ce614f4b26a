#include <gtest/gtest.h>

#include <random>
#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "plonka/plonka.hpp"

using namespace plonka;
using gen::kind_of;

namespace {

InductiveSystem single(const FiniteAlgebra& a) {
  InductiveSystem sys{a.signature(), SupSemilattice::chain(1), {a}, {}};
  add_identity_transitions(sys);
  return sys;
}

// Cocone into the top index: ξ constant at the top, u_i = f(i, top).
SystemMorphism to_top(const InductiveSystem& sys) {
  const auto n = sys.index.size();
  Element top = 0;
  for (Element i = 0; i < n; ++i) top = sys.index.join(top, i);
  SystemMorphism m{sys, sys, Map(n, top), {}};
  for (Element i = 0; i < n; ++i) m.components.push_back(sys.transition(i, top));
  return m;
}

std::set<std::vector<Map>> component_set(const std::vector<std::vector<Map>>& homs) {
  return {homs.begin(), homs.end()};
}

}  // namespace

TEST(ValidateIndsys, Examples) {
  EXPECT_FALSE(validate_indsys(single(gen::from_table(2, {0, 1, 1, 0}))));
  EXPECT_FALSE(validate_indsys(gen::two_chain()));
  auto bad = gen::two_chain();
  bad.transitions[{0, 1}] = {1};
  EXPECT_TRUE(validate_indsys(bad));
}

TEST(ValidateIndsys, CompositionLaw) {
  const auto a = gen::from_table(2, {0, 0, 1, 1});
  InductiveSystem sys{gen::binary(), SupSemilattice::chain(3), {a, a, a}, {}};
  sys.transitions[{0, 1}] = {1, 0};
  sys.transitions[{1, 2}] = {1, 0};
  sys.transitions[{0, 2}] = {1, 0};
  add_identity_transitions(sys);
  EXPECT_TRUE(validate_indsys(sys));
  sys.transitions[{0, 2}] = {0, 1};
  EXPECT_FALSE(validate_indsys(sys));
  sys.transitions[{1, 1}] = {1, 0};
  EXPECT_TRUE(validate_indsys(sys));
}

TEST(SystemMorphism, Examples) {
  const auto sys = gen::two_chain();
  EXPECT_FALSE(validate_system_morphism(identity_morphism(sys)));
  EXPECT_FALSE(validate_system_morphism(to_top(sys)));
  auto bad = to_top(sys);
  bad.components[0] = {1};
  EXPECT_TRUE(validate_system_morphism(bad));
}

TEST(SystemMorphism, NaturalityAgainstOracle) {
  const auto corpus = gen::system_corpus(12);
  for (const auto& a : corpus)
    for (const auto& b : corpus)
      for (const auto& xi : oracle::maps(a.index.size(), b.index.size())) {
        if (!oracle::is_join_morphism(xi, a.index, b.index)) continue;
        std::set<std::vector<Map>> found;
        for_each_system_morphism(a, b, xi, [&](const SystemMorphism& m) { found.insert(m.components); });
        EXPECT_EQ(found, component_set(oracle::system_homs(a, b, xi)));
      }
}

TEST(Reindex, Examples) {
  const auto sys = gen::two_chain();
  EXPECT_EQ(reindex(sys, {0, 1}, sys.index), sys);

  const auto top = reindex(sys, {1, 1}, sys.index);
  EXPECT_EQ(top.algebras[0], sys.algebras[1]);
  EXPECT_EQ(top.transition(0, 1), (Map{0, 1}));

  const auto point = reindex(sys, {1}, SupSemilattice::chain(1));
  EXPECT_EQ(point, single(sys.algebras[1]));
  EXPECT_EQ(kind_of([&] { reindex(sys, {1, 0}, sys.index); }), ErrorKind::InvalidMorphism);
}

TEST(Reindex, Functorial) {
  const auto corpus = gen::system_corpus(12);
  const auto shapes = gen::index_shapes();
  for (const auto& sys : corpus)
    for (const auto& mid : shapes)
      for (const auto& src : shapes)
        for_each_ssl_morphism(mid, sys.index, [&](const Map& xi2) {
          const auto once = reindex(sys, xi2, mid);
          EXPECT_FALSE(validate_indsys(once));
          for_each_ssl_morphism(src, mid, [&](const Map& xi1) {
            EXPECT_EQ(reindex(sys, detail::compose(xi2, xi1), src), reindex(once, xi1, src));
          });
        });
}

TEST(Compose, Examples) {
  const auto sys = gen::two_chain();
  const auto m = to_top(sys);
  EXPECT_EQ(compose(identity_morphism(sys), m), m);
  EXPECT_EQ(compose(m, identity_morphism(sys)), m);
  const auto mm = compose(m, m);
  EXPECT_EQ(mm.xi, (Map{1, 1}));
  EXPECT_EQ(mm.components[0], (Map{0}));
  EXPECT_EQ(mm.components[1], (Map{0, 1}));
  EXPECT_EQ(kind_of([&] { compose(identity_morphism(single(sys.algebras[0])), m); }),
            ErrorKind::CompositionMismatch);
}

TEST(Compose, AssociativeAndUnital) {
  std::mt19937 rng(73);
  const auto corpus = gen::system_corpus(10);
  auto random_morphism = [&](const InductiveSystem& a, const InductiveSystem& b) {
    std::vector<SystemMorphism> all;
    for_each_ssl_morphism(a.index, b.index, [&](const Map& xi) {
      for_each_system_morphism(a, b, xi, [&](const SystemMorphism& m) { all.push_back(m); });
    });
    return all;
  };
  std::size_t checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto& a = gen::pick(rng, corpus);
    const auto& b = gen::pick(rng, corpus);
    const auto& c = gen::pick(rng, corpus);
    const auto& d = gen::pick(rng, corpus);
    const auto ab = random_morphism(a, b);
    const auto bc = random_morphism(b, c);
    const auto cd = random_morphism(c, d);
    if (ab.empty() || bc.empty() || cd.empty()) continue;
    const auto& f = gen::pick(rng, ab);
    const auto& g = gen::pick(rng, bc);
    const auto& h = gen::pick(rng, cd);
    EXPECT_EQ(compose(h, compose(g, f)), compose(compose(h, g), f));
    EXPECT_EQ(compose(identity_morphism(b), f), f);
    EXPECT_EQ(compose(f, identity_morphism(a)), f);
    ++checked;
  }
  EXPECT_GT(checked, 5u);
}

TEST(ConstantSystems, Examples) {
  const auto c2 = SupSemilattice::chain(2);
  const auto l = constant_initial_system(c2, gen::binary());
  EXPECT_EQ(l.algebras.size(), 2u);
  for (const auto& a : l.algebras) EXPECT_EQ(a.size(), 0u);
  EXPECT_FALSE(validate_indsys(l));
  EXPECT_EQ(constant_initial_system(SupSemilattice::chain(1), gen::binary()).algebras.size(), 1u);
  EXPECT_EQ(kind_of([&] { constant_initial_system(c2, Signature({{"c", 0}})); }),
            ErrorKind::ConstantInSignature);

  const auto k = constant_final_system(c2, gen::binary());
  for (const auto& a : k.algebras) EXPECT_EQ(a.size(), 1u);
  EXPECT_EQ(k.transition(0, 1), (Map{0}));
  EXPECT_TRUE(constant_final_system(SupSemilattice(0, {}), gen::binary()).algebras.empty());

  const auto c1 = SupSemilattice::chain(1);
  EXPECT_FALSE(validate_system_morphism(initial_system_morphism({1}, c1, c2, gen::binary())));
  EXPECT_FALSE(validate_system_morphism(final_system_morphism({1}, c1, c2, gen::binary())));
}

TEST(ConstantSystems, StrongCylinder) {
  for (std::size_t n = 0; n <= 3; ++n)
    for (const auto& s : all_semilattices(n)) {
      EXPECT_EQ(constant_initial_system(s, gen::binary()).index, s);
      EXPECT_EQ(constant_final_system(s, gen::binary()).index, s);
    }
}

TEST(ConstantSystems, UniqueMorphismsFromInitialAndToFinal) {
  const auto corpus = gen::system_corpus(12);
  const auto shapes = gen::index_shapes();
  for (const auto& sys : corpus)
    for (const auto& s : shapes) {
      const auto l = constant_initial_system(s, sys.signature);
      for_each_ssl_morphism(s, sys.index, [&](const Map& xi) {
        EXPECT_EQ(oracle::system_homs(l, sys, xi).size(), 1u);
        EXPECT_FALSE(validate_system_morphism(morphism_from_initial(s, xi, sys)));
      });
      const auto k = constant_final_system(s, sys.signature);
      for_each_ssl_morphism(sys.index, s, [&](const Map& xi) {
        EXPECT_EQ(oracle::system_homs(sys, k, xi).size(), 1u);
        EXPECT_FALSE(validate_system_morphism(morphism_to_final(sys, xi, s)));
      });
    }
}

TEST(CanonicalComparison, Examples) {
  const auto c1 = SupSemilattice::chain(1);
  const auto c2 = SupSemilattice::chain(2);
  const auto g2 = canonical_comparison(c2, gen::binary());
  EXPECT_EQ(g2.components, (std::vector<Map>{{}, {}}));
  EXPECT_EQ(canonical_comparison(c1, gen::binary()).components.size(), 1u);
  EXPECT_EQ(kind_of([&] { canonical_comparison(c1, Signature({{"c", 0}})); }),
            ErrorKind::ConstantInSignature);
}

TEST(CanonicalComparison, Natural) {
  const auto shapes = gen::index_shapes();
  const auto sig = gen::binary();
  for (const auto& s : shapes)
    for (const auto& t : shapes)
      for_each_ssl_morphism(s, t, [&](const Map& xi) {
        const auto left = compose(canonical_comparison(t, sig), initial_system_morphism(xi, s, t, sig));
        const auto right = compose(final_system_morphism(xi, s, t, sig), canonical_comparison(s, sig));
        EXPECT_EQ(left, right);
      });
}

TEST(Transpose, Examples) {
  // ξ = identity: φ(u) = u.
  const auto sys = gen::two_chain();
  const auto id = identity_morphism(sys);
  EXPECT_EQ(residuated_transpose(sys, sys, {0, 1}, id), id);

  // ξ : 1 -> 2-chain, * ↦ 1; A is the top fiber on its own.
  const auto a = single(sys.algebras[1]);
  const Map xi{1};
  const auto b_xi = reindex(sys, xi, a.index);
  const SystemMorphism u{b_xi, a, {0}, {{0, 1}}};
  const auto v = residuated_transpose(a, sys, xi, u);
  EXPECT_EQ(v.components, (std::vector<Map>{{0}, {0, 1}}));
  EXPECT_EQ(inverse_transpose(a, sys, xi, v), u);
}

TEST(Transpose, RejectsUnresiduated) {
  // ξ : 1 -> 2-chain, * ↦ 0 has no residual: nothing maps above 1.
  const auto sys = gen::two_chain();
  const auto a = single(sys.algebras[0]);
  const SystemMorphism u{reindex(sys, {0}, a.index), a, {0}, {{0}}};
  EXPECT_EQ(kind_of([&] { residuated_transpose(a, sys, {0}, u); }), ErrorKind::NotResiduated);
}

TEST(Transpose, BijectionBetweenHomSets) {
  const auto corpus = gen::system_corpus(14);
  std::size_t residuated = 0;
  for (const auto& a : corpus)
    for (const auto& b : corpus)
      for_each_ssl_morphism(a.index, b.index, [&](const Map& xi) {
        const auto zeta = residual_left_adjoint(xi, a.index, b.index);
        if (!zeta) return;
        ++residuated;
        const auto b_xi = reindex(b, xi, a.index);
        const auto a_zeta = reindex(a, *zeta, b.index);
        const auto id_i = detail::identity_map(a.index.size());
        const auto id_p = detail::identity_map(b.index.size());
        const auto left = oracle::system_homs(b_xi, a, id_i);
        const auto right = oracle::system_homs(b, a_zeta, id_p);
        EXPECT_EQ(left.size(), right.size());
        std::set<std::vector<Map>> image;
        for (const auto& comps : left) {
          const SystemMorphism u{b_xi, a, id_i, comps};
          const auto v = residuated_transpose(a, b, xi, u);
          image.insert(v.components);
          EXPECT_EQ(inverse_transpose(a, b, xi, v), u);
        }
        EXPECT_EQ(image, component_set(right));
        for (const auto& comps : right) {
          const SystemMorphism v{b, a_zeta, id_p, comps};
          EXPECT_EQ(residuated_transpose(a, b, xi, inverse_transpose(a, b, xi, v)), v);
        }
      });
  EXPECT_GE(residuated, 5u);
}

TEST(Transpose, NaturalInTargetOnSamples) {
  // Post-composing u with w : A -> A' (over the identity) commutes with φ.
  const auto corpus = gen::system_corpus(10);
  std::size_t squares = 0;
  for (const auto& a : corpus)
    for (const auto& a2 : corpus) {
      if (a2.index != a.index) continue;
      const auto id_i = detail::identity_map(a.index.size());
      std::vector<SystemMorphism> ws;
      for_each_system_morphism(a, a2, id_i, [&](const SystemMorphism& w) { ws.push_back(w); });
      if (ws.empty()) continue;
      for (const auto& b : corpus)
        for_each_ssl_morphism(a.index, b.index, [&](const Map& xi) {
          const auto zeta = residual_left_adjoint(xi, a.index, b.index);
          if (!zeta || squares > 200) return;
          const auto b_xi = reindex(b, xi, a.index);
          for_each_system_morphism(b_xi, a, id_i, [&](const SystemMorphism& u) {
            for (const auto& w : ws) {
              const auto lhs = residuated_transpose(a2, b, xi, compose(w, u));
              const auto v = residuated_transpose(a, b, xi, u);
              for (Element p = 0; p < b.index.size(); ++p)
                EXPECT_EQ(lhs.components[p], detail::compose(w.components[(*zeta)[p]], v.components[p]));
              ++squares;
            }
          });
        });
    }
  EXPECT_GT(squares, 0u);
}
