#pragma once

// Płonka operators on constant-free algebras: a left normal band operation D
// that distributes over every operation in its first argument (D4) and
// collapses operations to iterates in its second argument (D5).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plonka/band.hpp"
#include "plonka/core_algebra.hpp"

namespace plonka {

struct PlonkaAlgebra {
  FiniteAlgebra algebra;
  LeftNormalBand band;

  std::size_t size() const noexcept { return algebra.size(); }
  const Signature& signature() const noexcept { return algebra.signature(); }
  Element d(Element x, Element y) const { return band.op(x, y); }

  friend bool operator==(const PlonkaAlgebra&, const PlonkaAlgebra&) = default;
};

struct PlonkaViolation {
  enum class Law { Band, D4, D5 };
  Law law;
  BandViolation band{};       // when law == Band
  std::size_t symbol = 0;     // D4 / D5
  std::vector<Element> args;  // D4 / D5
  Element y = 0;              // D4 / D5
};

inline std::string describe(const PlonkaAlgebra& p, const PlonkaViolation& v) {
  if (v.law == PlonkaViolation::Law::Band) {
    return describe(v.band);
  }
  return std::string(v.law == PlonkaViolation::Law::D4 ? "D4" : "D5") + " at " +
         p.signature()[v.symbol].name + detail::format_tuple(v.args) + ", y=" +
         std::to_string(v.y);
}

namespace detail {

inline std::optional<PlonkaViolation> check_d4_d5(const FiniteAlgebra& a, const LeftNormalBand& d) {
  using Law = PlonkaViolation::Law;
  std::optional<PlonkaViolation> violation;
  std::vector<Element> shifted;
  for (std::size_t s = 0; s < a.signature().size() && !violation; ++s) {
    const std::size_t k = a.signature().arity(s);
    for_each_tuple(a.size(), k, [&](std::span<const Element> xs) {
      const Element fx = a.apply(s, xs);
      const Element dn = right_iterate(d, xs);
      for (Element y = 0; y < a.size(); ++y) {
        shifted.assign(k, 0);
        for (std::size_t j = 0; j < k; ++j) {
          shifted[j] = d.op(xs[j], y);
        }
        if (d.op(fx, y) != a.apply(s, shifted)) {
          violation = PlonkaViolation{Law::D4, {}, s, {xs.begin(), xs.end()}, y};
          return false;
        }
        if (d.op(y, fx) != d.op(y, dn)) {
          violation = PlonkaViolation{Law::D5, {}, s, {xs.begin(), xs.end()}, y};
          return false;
        }
      }
      return true;
    });
  }
  return violation;
}

}  // namespace detail

// D1-D3 on the band, then D4 and D5 per symbol, argument tuple and y.
inline std::optional<PlonkaViolation> validate_plonka(const FiniteAlgebra& a,
                                                      const LeftNormalBand& d) {
  require_constant_free(a.signature(), "validate_plonka");
  if (d.size() != a.size()) {
    fail(ErrorKind::InvalidArgument, "operator and algebra have different carriers");
  }
  if (auto v = validate_lnb(d)) {
    return PlonkaViolation{PlonkaViolation::Law::Band, *v, 0, {}, 0};
  }
  return detail::check_d4_d5(a, d);
}

inline std::optional<PlonkaViolation> validate_plonka(const PlonkaAlgebra& p) {
  return validate_plonka(p.algebra, p.band);
}

inline bool is_plonka(const FiniteAlgebra& a, const LeftNormalBand& d) {
  return !validate_plonka(a, d).has_value();
}

inline PlonkaAlgebra make_plonka(FiniteAlgebra a, LeftNormalBand d) {
  PlonkaAlgebra p{std::move(a), std::move(d)};
  if (auto v = validate_plonka(p)) {
    fail(ErrorKind::NotAPlonkaAlgebra, describe(p, *v));
  }
  return p;
}

// Exhaustive check of the consequences of D1-D5 relating D to the operations:
//   D(F(xs), x_k) = F(xs)
//   D(F(xs), y) = F(x_0, ..., D(x_k, y), ..., x_{n-1})
//   D(F(xs), F(ys)) = F(D(x_j, y_j))_j
//   D(F(xs), D_m(x∘φ)) = F(xs)          for φ : m -> n, m <= max arity + 1
//   D(F(xs), F(D_n(xs), ..., D_n(xs))) = F(xs)
//   the induced relation of D is a congruence of the algebra
// Band-only laws are left to verify_band_laws.
inline std::vector<LawViolation> verify_derived_laws(const PlonkaAlgebra& p) {
  if (auto v = validate_plonka(p)) {
    fail(ErrorKind::NotAPlonkaAlgebra, describe(p, *v));
  }
  std::vector<LawViolation> out;
  const auto& a = p.algebra;
  const std::size_t n = a.size();
  const std::size_t reindex_bound = a.signature().max_arity() + 1;
  auto report = [&](std::string law, std::size_t s, std::span<const Element> xs,
                    std::string extra = {}) {
    out.push_back({std::move(law), a.signature()[s].name + detail::format_tuple(xs) + extra});
  };

  std::vector<Element> args;
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    const std::size_t k = a.signature().arity(s);
    detail::for_each_tuple(n, k, [&](std::span<const Element> xs) {
      const Element fx = a.apply(s, xs);
      const Element dn = right_iterate(p.band, xs);
      for (std::size_t j = 0; j < k; ++j) {
        if (p.d(fx, xs[j]) != fx) {
          report("absorbs-argument", s, xs, " k=" + std::to_string(j));
        }
      }
      for (Element y = 0; y < n; ++y) {
        for (std::size_t j = 0; j < k; ++j) {
          args.assign(xs.begin(), xs.end());
          args[j] = p.d(xs[j], y);
          if (p.d(fx, y) != a.apply(s, args)) {
            report("single-slot-distribution", s, xs,
                   " k=" + std::to_string(j) + " y=" + std::to_string(y));
          }
        }
      }
      detail::for_each_tuple(n, k, [&](std::span<const Element> ys) {
        args.assign(k, 0);
        for (std::size_t j = 0; j < k; ++j) {
          args[j] = p.d(xs[j], ys[j]);
        }
        if (p.d(fx, a.apply(s, ys)) != a.apply(s, args)) {
          report("d-is-homomorphism", s, xs, " ys=" + detail::format_tuple(ys));
        }
      });
      for (std::size_t m = 1; m <= reindex_bound; ++m) {
        detail::for_each_map(m, k, [&](const Map& phi) {
          args.assign(m, 0);
          for (std::size_t i = 0; i < m; ++i) {
            args[i] = xs[phi[i]];
          }
          if (p.d(fx, right_iterate(p.band, args)) != fx) {
            report("absorbs-reindexed-iterate", s, xs, " phi=" + detail::format_tuple(phi));
          }
        });
      }
      args.assign(k, dn);
      if (p.d(fx, a.apply(s, args)) != fx) {
        report("absorbs-diagonal", s, xs);
      }
    });
  }
  const auto phi = induced_relation(p.band);
  if (auto v = check_congruence(a, phi)) {
    report("induced-congruence", v->symbol, v->left, " vs " + detail::format_tuple(v->right));
  }
  return out;
}

// (A, F, D) with D a homomorphism A² -> A and (A, D) a left normal band.
struct TensorObject {
  FiniteAlgebra algebra;
  LeftNormalBand band;

  const FiniteAlgebra& algebra_part() const noexcept { return algebra; }  // P
  const LeftNormalBand& band_part() const noexcept { return band; }       // Q

  friend bool operator==(const TensorObject&, const TensorObject&) = default;
};

inline bool is_tensor_object(const FiniteAlgebra& a, const LeftNormalBand& d) {
  if (!is_lnb(d) || d.size() != a.size()) {
    return false;
  }
  return is_homomorphism(d.table(), power_algebra(a, 2), a);
}

inline TensorObject tensor_embed(const PlonkaAlgebra& p) {
  if (auto v = validate_plonka(p)) {
    fail(ErrorKind::NotAPlonkaAlgebra, describe(p, *v));
  }
  if (!is_tensor_object(p.algebra, p.band)) {
    fail(ErrorKind::Internal, "Płonka operator is not a homomorphism from the square");
  }
  return {p.algebra, p.band};
}

inline bool is_tensor_morphism(const Map& h, const TensorObject& source, const TensorObject& target) {
  return is_homomorphism(h, source.algebra, target.algebra) &&
         is_band_morphism(h, source.band, target.band);
}

// All Płonka operators on a, as band tables in lexicographic order. Refuses
// carriers larger than max_size.
inline std::vector<LeftNormalBand> enumerate_plonka_operators(const FiniteAlgebra& a,
                                                              std::size_t max_size = 3) {
  require_constant_free(a.signature(), "enumerate_plonka_operators");
  if (a.size() > max_size) {
    fail(ErrorKind::CarrierTooLarge, "carrier of size " + std::to_string(a.size()) +
                                         " exceeds the enumeration bound " +
                                         std::to_string(max_size));
  }
  std::vector<LeftNormalBand> out;
  for (auto& b : all_left_normal_bands(a.size())) {
    if (!detail::check_d4_d5(a, b)) {
      out.push_back(std::move(b));
    }
  }
  return out;
}

struct PlonkaMorphism {
  PlonkaAlgebra source;
  PlonkaAlgebra target;
  Map map;

  friend bool operator==(const PlonkaMorphism&, const PlonkaMorphism&) = default;
};

struct PlonkaMorphismViolation {
  enum class Part { Algebra, Band };
  Part part;
  std::string detail;
};

inline std::optional<PlonkaMorphismViolation> check_plonka_morphism(const Map& h,
                                                                    const PlonkaAlgebra& p,
                                                                    const PlonkaAlgebra& q) {
  if (p.signature() != q.signature()) {
    fail(ErrorKind::SignatureMismatch, "Płonka algebras over different signatures");
  }
  if (auto v = check_homomorphism(h, p.algebra, q.algebra)) {
    return PlonkaMorphismViolation{PlonkaMorphismViolation::Part::Algebra,
                                   p.signature()[v->symbol].name + detail::format_tuple(v->tuple)};
  }
  if (auto v = check_band_morphism(h, p.band, q.band)) {
    const Element pair[] = {v->first, v->second};
    return PlonkaMorphismViolation{PlonkaMorphismViolation::Part::Band,
                                   "D" + detail::format_tuple(pair)};
  }
  return std::nullopt;
}

inline bool is_plonka_morphism(const Map& h, const PlonkaAlgebra& p, const PlonkaAlgebra& q) {
  return !check_plonka_morphism(h, p, q).has_value();
}

inline PlonkaMorphism make_plonka_morphism(PlonkaAlgebra source, PlonkaAlgebra target, Map map) {
  if (auto v = check_plonka_morphism(map, source, target)) {
    fail(ErrorKind::NotAPlonkaMorphism,
         (v->part == PlonkaMorphismViolation::Part::Algebra ? "operation " : "operator ") +
             v->detail);
  }
  return {std::move(source), std::move(target), std::move(map)};
}

inline PlonkaMorphism compose(const PlonkaMorphism& g, const PlonkaMorphism& f) {
  if (f.target != g.source) {
    fail(ErrorKind::CompositionMismatch, "Płonka morphisms are not composable");
  }
  return {f.source, g.target, detail::compose(g.map, f.map)};
}

inline PlonkaMorphism identity_morphism(const PlonkaAlgebra& p) {
  return {p, p, detail::identity_map(p.size())};
}

// (join_algebra(s, sig), join) is a Płonka algebra for every semilattice s.
inline PlonkaAlgebra semilattice_plonka(const SupSemilattice& s, const Signature& sig) {
  return make_plonka(join_algebra(s, sig), ssl_to_band(s));
}

}  // namespace plonka
