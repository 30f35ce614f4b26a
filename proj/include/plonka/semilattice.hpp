#pragma once

// Finite sup-semilattices presented by their join table, join morphisms,
// residuals, free semilattices, the join-algebra functor and its left adjoint.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plonka/core_algebra.hpp"

namespace plonka {

class SupSemilattice {
 public:
  SupSemilattice() = default;

  SupSemilattice(std::size_t size, std::vector<Element> join) : size_(size), join_(std::move(join)) {
    if (join_.size() != size_ * size_) {
      fail(ErrorKind::InvalidArgument, "join table must have size^2 entries");
    }
  }

  // The chain 0 < 1 < ... < n-1.
  static SupSemilattice chain(std::size_t n) {
    std::vector<Element> table(n * n);
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        table[x * n + y] = std::max(x, y);
      }
    }
    return SupSemilattice(n, std::move(table));
  }

  std::size_t size() const noexcept { return size_; }
  const std::vector<Element>& table() const noexcept { return join_; }

  Element join(Element x, Element y) const { return join_[x * size_ + y]; }
  bool leq(Element x, Element y) const { return join(x, y) == y; }

  // Join of a nonempty family.
  Element join_all(std::span<const Element> xs) const {
    if (xs.empty()) {
      fail(ErrorKind::InvalidArgument, "join of an empty family");
    }
    Element acc = xs[0];
    for (std::size_t j = 1; j < xs.size(); ++j) {
      acc = join(acc, xs[j]);
    }
    return acc;
  }

  friend bool operator==(const SupSemilattice&, const SupSemilattice&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<Element> join_;
};

struct SslViolation {
  enum class Law { OutOfRange, Idempotence, Commutativity, Associativity };
  Law law;
  Element x = 0, y = 0, z = 0;
};

inline std::string describe(const SslViolation& v) {
  switch (v.law) {
    case SslViolation::Law::OutOfRange:
      return "join entry out of range at (" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
    case SslViolation::Law::Idempotence:
      return "idempotence at (" + std::to_string(v.x) + ")";
    case SslViolation::Law::Commutativity:
      return "commutativity at (" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
    case SslViolation::Law::Associativity:
      return "associativity at (" + std::to_string(v.x) + "," + std::to_string(v.y) + "," +
             std::to_string(v.z) + ")";
  }
  return {};
}

inline std::optional<SslViolation> validate_ssl(const SupSemilattice& s) {
  using Law = SslViolation::Law;
  const std::size_t n = s.size();
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (s.join(x, y) >= n) {
        return SslViolation{Law::OutOfRange, x, y, 0};
      }
    }
  }
  for (Element x = 0; x < n; ++x) {
    if (s.join(x, x) != x) {
      return SslViolation{Law::Idempotence, x, 0, 0};
    }
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (s.join(x, y) != s.join(y, x)) {
        return SslViolation{Law::Commutativity, x, y, 0};
      }
    }
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      for (Element z = 0; z < n; ++z) {
        if (s.join(x, s.join(y, z)) != s.join(s.join(x, y), z)) {
          return SslViolation{Law::Associativity, x, y, z};
        }
      }
    }
  }
  return std::nullopt;
}

inline bool is_semilattice(const SupSemilattice& s) { return !validate_ssl(s).has_value(); }

// First pair (i, j) with xi(i ∨ j) != xi(i) ∨ xi(j).
inline std::optional<std::pair<Element, Element>> check_ssl_morphism(const Map& xi,
                                                                     const SupSemilattice& s,
                                                                     const SupSemilattice& t) {
  require_total_map(xi, s.size(), t.size(), "check_ssl_morphism");
  for (Element i = 0; i < s.size(); ++i) {
    for (Element j = 0; j < s.size(); ++j) {
      if (xi[s.join(i, j)] != t.join(xi[i], xi[j])) {
        return std::pair{i, j};
      }
    }
  }
  return std::nullopt;
}

inline bool is_ssl_morphism(const Map& xi, const SupSemilattice& s, const SupSemilattice& t) {
  return !check_ssl_morphism(xi, s, t).has_value();
}

inline bool is_isotone(const Map& f, const SupSemilattice& s, const SupSemilattice& t) {
  for (Element i = 0; i < s.size(); ++i) {
    for (Element j = 0; j < s.size(); ++j) {
      if (s.leq(i, j) && !t.leq(f[i], f[j])) {
        return false;
      }
    }
  }
  return true;
}

template <typename F>
void for_each_ssl_morphism(const SupSemilattice& s, const SupSemilattice& t, F&& f) {
  detail::for_each_map(s.size(), t.size(), [&](const Map& map) {
    if (is_ssl_morphism(map, s, t)) {
      f(map);
    }
  });
}

// Every semilattice structure on 0..n-1 (labelled, so isomorphic copies repeat).
inline std::vector<SupSemilattice> all_semilattices(std::size_t n) {
  std::vector<std::pair<Element, Element>> free_cells;
  for (Element x = 0; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      free_cells.emplace_back(x, y);
    }
  }
  std::vector<SupSemilattice> out;
  detail::for_each_tuple(n, free_cells.size(), [&](std::span<const Element> values) {
    std::vector<Element> table(n * n);
    for (Element x = 0; x < n; ++x) {
      table[x * n + x] = x;
    }
    for (std::size_t c = 0; c < free_cells.size(); ++c) {
      auto [x, y] = free_cells[c];
      table[x * n + y] = values[c];
      table[y * n + x] = values[c];
    }
    SupSemilattice s(n, std::move(table));
    if (is_semilattice(s)) {
      out.push_back(std::move(s));
    }
  });
  return out;
}

struct FreeSsl {
  SupSemilattice semilattice;
  Map embedding;  // generator g -> {g}

  // Element index of a nonempty generator subset given as a bitmask.
  static Element element_of_mask(std::size_t mask) { return mask - 1; }
  static std::size_t mask_of_element(Element e) { return e + 1; }
};

// Nonempty subsets of 0..m-1 under union; element e is the subset with bitmask e+1.
inline FreeSsl free_ssl(std::size_t generators) {
  if (generators > 16) {
    fail(ErrorKind::CarrierTooLarge, "free semilattice on more than 16 generators");
  }
  const std::size_t size = (std::size_t{1} << generators) - 1;
  std::vector<Element> table(size * size);
  for (Element x = 0; x < size; ++x) {
    for (Element y = 0; y < size; ++y) {
      table[x * size + y] = FreeSsl::element_of_mask(FreeSsl::mask_of_element(x) |
                                                     FreeSsl::mask_of_element(y));
    }
  }
  Map embedding(generators);
  for (std::size_t g = 0; g < generators; ++g) {
    embedding[g] = FreeSsl::element_of_mask(std::size_t{1} << g);
  }
  return {SupSemilattice(size, std::move(table)), std::move(embedding)};
}

// Left adjoint ζ of an isotone ξ: ζ(p) is the least i with p <= ξ(i). Returns
// nullopt when some p has no such least i or the adjunction inequalities fail.
inline std::optional<Map> residual_left_adjoint(const Map& xi, const SupSemilattice& source,
                                                const SupSemilattice& target) {
  require_total_map(xi, source.size(), target.size(), "residual_left_adjoint");
  Map zeta(target.size(), 0);
  for (Element p = 0; p < target.size(); ++p) {
    std::optional<Element> least;
    for (Element i = 0; i < source.size(); ++i) {
      if (!target.leq(p, xi[i])) {
        continue;
      }
      bool below_all = true;
      for (Element j = 0; j < source.size(); ++j) {
        if (target.leq(p, xi[j]) && !source.leq(i, j)) {
          below_all = false;
          break;
        }
      }
      if (below_all) {
        least = i;
        break;
      }
    }
    if (!least) {
      return std::nullopt;
    }
    zeta[p] = *least;
  }
  if (!is_isotone(zeta, target, source)) {
    return std::nullopt;
  }
  for (Element i = 0; i < source.size(); ++i) {
    if (!source.leq(zeta[xi[i]], i)) {
      return std::nullopt;
    }
  }
  for (Element p = 0; p < target.size(); ++p) {
    if (!target.leq(p, xi[zeta[p]])) {
      return std::nullopt;
    }
  }
  return zeta;
}

// Every operation symbol of arity n is interpreted as the n-fold join.
inline FiniteAlgebra join_algebra(const SupSemilattice& s, const Signature& sig) {
  require_constant_free(sig, "join_algebra");
  return make_algebra(sig, s.size(), [&](std::size_t, std::span<const Element> t) {
    return s.join_all(t);
  });
}

inline Signature join_signature() { return Signature({{"join", 2}}); }

// The semilattice read off a binary operation that is known to be a join.
inline SupSemilattice semilattice_from_join_algebra(const FiniteAlgebra& a) {
  return SupSemilattice(a.size(), a.table(0));
}

struct SslReflection {
  SupSemilattice semilattice;  // M(A)
  Map unit;                    // η_A : A -> M(A)
  FreeSsl free;                // free semilattice on the carrier of A
  Map free_projection;         // T_∨(A) -> M(A)
};

// The universal map from a constant-free algebra into a join algebra: the free
// semilattice on the carrier modulo the least congruence identifying
// η(F_σ(x)) with the join of the η(x_j).
inline SslReflection ssl_reflection_of_algebra(const FiniteAlgebra& a) {
  require_constant_free(a.signature(), "ssl_reflection_of_algebra");
  auto free = free_ssl(a.size());
  const auto free_view = join_algebra(free.semilattice, join_signature());
  std::vector<std::pair<Element, Element>> pairs;
  std::vector<Element> gens;
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    detail::for_each_tuple(a.size(), a.signature().arity(s), [&](std::span<const Element> t) {
      gens.assign(t.size(), 0);
      for (std::size_t j = 0; j < t.size(); ++j) {
        gens[j] = free.embedding[t[j]];
      }
      pairs.emplace_back(free.embedding[a.apply(s, t)], free.semilattice.join_all(gens));
    });
  }
  const auto psi = generated_congruence(free_view, pairs);
  auto quotient = quotient_algebra(free_view, psi);
  SupSemilattice m = semilattice_from_join_algebra(quotient.algebra);
  Map unit = detail::compose(quotient.projection, free.embedding);
  return {std::move(m), std::move(unit), std::move(free), std::move(quotient.projection)};
}

// f♭ : M(A) -> I with f♭ ∘ η_A = f, for a homomorphism f : A -> W(I).
inline Map factor_through_reflection(const FiniteAlgebra& a, const SslReflection& reflection,
                                     const Map& f, const SupSemilattice& target) {
  const auto w = join_algebra(target, a.signature());
  if (auto v = check_homomorphism(f, a, w)) {
    fail(ErrorKind::NotAHomomorphism, "map into the join algebra fails at symbol '" +
                                          a.signature()[v->symbol].name + "' on " +
                                          detail::format_tuple(v->tuple));
  }
  const auto& m = reflection.semilattice;
  std::vector<std::optional<Element>> flat(m.size());
  const std::size_t free_size = reflection.free.semilattice.size();
  for (Element e = 0; e < free_size; ++e) {
    // f♯ on the subset e is the join of f over its members.
    const std::size_t mask = FreeSsl::mask_of_element(e);
    std::optional<Element> value;
    for (std::size_t g = 0; g < a.size(); ++g) {
      if (mask & (std::size_t{1} << g)) {
        value = value ? target.join(*value, f[g]) : f[g];
      }
    }
    auto& slot = flat[reflection.free_projection[e]];
    if (!slot) {
      slot = value;
    } else if (*slot != *value) {
      fail(ErrorKind::Internal, "reflection congruence is not contained in the kernel of f♯");
    }
  }
  Map out(m.size());
  for (Element b = 0; b < m.size(); ++b) {
    out[b] = flat[b].value();
  }
  if (!is_ssl_morphism(out, m, target) || detail::compose(out, reflection.unit) != f) {
    fail(ErrorKind::Internal, "factorization through the reflection failed");
  }
  return out;
}

}  // namespace plonka
