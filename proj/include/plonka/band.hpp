#pragma once

// Left normal bands: axioms, right and left iterates of the operation, the
// induced congruence and the reflection into sup-semilattices.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plonka/core_algebra.hpp"
#include "plonka/semilattice.hpp"

namespace plonka {

// A binary operation table on 0..size-1, intended to satisfy
//   D1  d(x,x) = x
//   D2  d(x,d(y,z)) = d(d(x,y),z)
//   D3  d(x,d(y,z)) = d(x,d(z,y)).
class LeftNormalBand {
 public:
  LeftNormalBand() = default;

  LeftNormalBand(std::size_t size, std::vector<Element> table)
      : size_(size), table_(std::move(table)) {
    if (table_.size() != size_ * size_) {
      fail(ErrorKind::InvalidArgument, "band table must have size^2 entries");
    }
  }

  static LeftNormalBand left_zero(std::size_t n) {
    std::vector<Element> table(n * n);
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        table[x * n + y] = x;
      }
    }
    return LeftNormalBand(n, std::move(table));
  }

  std::size_t size() const noexcept { return size_; }
  const std::vector<Element>& table() const noexcept { return table_; }
  Element op(Element x, Element y) const { return table_[x * size_ + y]; }

  friend bool operator==(const LeftNormalBand&, const LeftNormalBand&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<Element> table_;
};

struct BandViolation {
  enum class Axiom { OutOfRange, D1, D2, D3 };
  Axiom axiom;
  Element x = 0, y = 0, z = 0;
};

inline std::string describe(const BandViolation& v) {
  auto pair = "(" + std::to_string(v.x) + "," + std::to_string(v.y);
  switch (v.axiom) {
    case BandViolation::Axiom::OutOfRange: return "table entry out of range at " + pair + ")";
    case BandViolation::Axiom::D1: return "D1 at (" + std::to_string(v.x) + ")";
    case BandViolation::Axiom::D2: return "D2 at " + pair + "," + std::to_string(v.z) + ")";
    case BandViolation::Axiom::D3: return "D3 at " + pair + "," + std::to_string(v.z) + ")";
  }
  return {};
}

// Checks D1, then D2, then D3, each over tuples in lexicographic order.
inline std::optional<BandViolation> validate_lnb(const LeftNormalBand& b) {
  using Axiom = BandViolation::Axiom;
  const std::size_t n = b.size();
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (b.op(x, y) >= n) {
        return BandViolation{Axiom::OutOfRange, x, y, 0};
      }
    }
  }
  for (Element x = 0; x < n; ++x) {
    if (b.op(x, x) != x) {
      return BandViolation{Axiom::D1, x, 0, 0};
    }
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      for (Element z = 0; z < n; ++z) {
        if (b.op(x, b.op(y, z)) != b.op(b.op(x, y), z)) {
          return BandViolation{Axiom::D2, x, y, z};
        }
      }
    }
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      for (Element z = 0; z < n; ++z) {
        if (b.op(x, b.op(y, z)) != b.op(x, b.op(z, y))) {
          return BandViolation{Axiom::D3, x, y, z};
        }
      }
    }
  }
  return std::nullopt;
}

inline bool is_lnb(const LeftNormalBand& b) { return !validate_lnb(b).has_value(); }

inline void require_lnb(const LeftNormalBand& b, std::string_view where) {
  if (auto v = validate_lnb(b)) {
    fail(ErrorKind::NotALnb, std::string(where) + ": " + describe(*v));
  }
}

// Every left normal band on 0..n-1, in lexicographic table order.
inline std::vector<LeftNormalBand> all_left_normal_bands(std::size_t n) {
  std::vector<LeftNormalBand> out;
  std::vector<std::size_t> off_diagonal;
  for (std::size_t c = 0; c < n * n; ++c) {
    if (c / n != c % n) {
      off_diagonal.push_back(c);
    }
  }
  detail::for_each_tuple(n, off_diagonal.size(), [&](std::span<const Element> values) {
    std::vector<Element> table(n * n);
    for (Element x = 0; x < n; ++x) {
      table[x * n + x] = x;
    }
    for (std::size_t c = 0; c < off_diagonal.size(); ++c) {
      table[off_diagonal[c]] = values[c];
    }
    LeftNormalBand b(n, std::move(table));
    if (is_lnb(b)) {
      out.push_back(std::move(b));
    }
  });
  return out;
}

inline std::optional<std::pair<Element, Element>> check_band_morphism(const Map& h,
                                                                      const LeftNormalBand& source,
                                                                      const LeftNormalBand& target) {
  require_total_map(h, source.size(), target.size(), "check_band_morphism");
  for (Element x = 0; x < source.size(); ++x) {
    for (Element y = 0; y < source.size(); ++y) {
      if (target.op(h[x], h[y]) != h[source.op(x, y)]) {
        return std::pair{x, y};
      }
    }
  }
  return std::nullopt;
}

inline bool is_band_morphism(const Map& h, const LeftNormalBand& source,
                             const LeftNormalBand& target) {
  return !check_band_morphism(h, source, target).has_value();
}

// D(x0, D(x1, ... D(x_{n-2}, x_{n-1})))
inline Element right_iterate(const LeftNormalBand& b, std::span<const Element> xs) {
  if (xs.empty()) {
    fail(ErrorKind::InvalidArgument, "iterate of an empty tuple");
  }
  Element acc = xs.back();
  for (std::size_t j = xs.size() - 1; j-- > 0;) {
    acc = b.op(xs[j], acc);
  }
  return acc;
}

// D(... D(D(x0, x1), x2) ..., x_{n-1})
inline Element left_iterate(const LeftNormalBand& b, std::span<const Element> xs) {
  if (xs.empty()) {
    fail(ErrorKind::InvalidArgument, "iterate of an empty tuple");
  }
  Element acc = xs.front();
  for (std::size_t j = 1; j < xs.size(); ++j) {
    acc = b.op(acc, xs[j]);
  }
  return acc;
}

// D_n(xs). Both folds are computed; on a left normal band they agree.
inline Element iterate_d(const LeftNormalBand& b, std::span<const Element> xs) {
  const Element r = right_iterate(b, xs);
  const Element l = left_iterate(b, xs);
  if (r != l) {
    fail(ErrorKind::IterateMismatch, "right fold gives " + std::to_string(r) +
                                         ", left fold gives " + std::to_string(l) + " on " +
                                         detail::format_tuple(xs));
  }
  return r;
}

inline Element iterate_d(const LeftNormalBand& b, std::initializer_list<Element> xs) {
  return iterate_d(b, std::span<const Element>(xs.begin(), xs.size()));
}

// The band viewed as an algebra with one binary symbol "D".
inline FiniteAlgebra band_as_algebra(const LeftNormalBand& b) {
  return FiniteAlgebra(Signature({{"D", 2}}), b.size(), {b.table()});
}

// x ~ y iff D(x,y) = x and D(y,x) = y.
inline Partition induced_relation(const LeftNormalBand& b) {
  require_lnb(b, "induced_relation");
  const std::size_t n = b.size();
  auto related = [&](Element x, Element y) { return b.op(x, y) == x && b.op(y, x) == y; };
  std::vector<std::size_t> labels(n);
  for (Element x = 0; x < n; ++x) {
    labels[x] = x;
    for (Element y = 0; y < x; ++y) {
      if (related(x, y)) {
        labels[x] = labels[y];
        break;
      }
    }
  }
  auto phi = canonical_partition(labels);
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (related(x, y) != phi.related(x, y)) {
        fail(ErrorKind::Internal, "induced relation is not an equivalence at (" +
                                      std::to_string(x) + "," + std::to_string(y) + ")");
      }
    }
  }
  if (!is_congruence(band_as_algebra(b), phi)) {
    fail(ErrorKind::Internal, "induced relation is not compatible with the band operation");
  }
  return phi;
}

inline LeftNormalBand ssl_to_band(const SupSemilattice& s) {
  return LeftNormalBand(s.size(), s.table());
}

struct SlReflection {
  SupSemilattice semilattice;
  Map projection;  // x -> [x], a band morphism onto the join band
  Partition relation;
};

// Blocks of the induced relation, joined by [x] ∨ [y] = [D(x,y)].
inline SlReflection sl_reflect(const LeftNormalBand& b) {
  auto phi = induced_relation(b);
  const std::size_t m = phi.block_count;
  const auto reps = phi.representatives();
  std::vector<Element> join(m * m);
  for (Element p = 0; p < m; ++p) {
    for (Element q = 0; q < m; ++q) {
      join[p * m + q] = phi.block_of[b.op(reps[p], reps[q])];
    }
  }
  SupSemilattice s(m, std::move(join));
  Map projection(phi.block_of.begin(), phi.block_of.end());
  if (auto v = validate_ssl(s)) {
    fail(ErrorKind::Internal, "block semilattice fails " + describe(*v));
  }
  if (!is_band_morphism(projection, b, ssl_to_band(s))) {
    fail(ErrorKind::Internal, "projection onto the block semilattice is not a band morphism");
  }
  return {std::move(s), std::move(projection), std::move(phi)};
}

// Reads a band whose operation is a semilattice join back as a semilattice.
inline SupSemilattice band_as_semilattice(const LeftNormalBand& b) {
  SupSemilattice s(b.size(), b.table());
  if (auto v = validate_ssl(s)) {
    fail(ErrorKind::TargetNotASemilatticeBand, describe(*v));
  }
  return s;
}

// h♭ : Sl(b) -> I with h♭ ∘ pr = h, for a band morphism h into the join band of I.
inline Map factor_through_sl(const LeftNormalBand& source, const Map& h,
                             const LeftNormalBand& target) {
  const auto target_ssl = band_as_semilattice(target);
  if (auto v = check_band_morphism(h, source, target)) {
    fail(ErrorKind::NotAHomomorphism, "not a band morphism at (" + std::to_string(v->first) + "," +
                                          std::to_string(v->second) + ")");
  }
  const auto sl = sl_reflect(source);
  Map flat(sl.semilattice.size(), 0);
  const auto reps = sl.relation.representatives();
  for (Element block = 0; block < reps.size(); ++block) {
    flat[block] = h[reps[block]];
  }
  if (detail::compose(flat, sl.projection) != h ||
      !is_ssl_morphism(flat, sl.semilattice, target_ssl)) {
    fail(ErrorKind::Internal, "band morphism does not factor through its semilattice reflection");
  }
  return flat;
}

// Sl(h) : [x] -> [h(x)].
inline Map band_morphism_to_sl_morphism(const LeftNormalBand& source, const LeftNormalBand& target,
                                        const Map& h) {
  if (auto v = check_band_morphism(h, source, target)) {
    fail(ErrorKind::NotAHomomorphism, "not a band morphism at (" + std::to_string(v->first) + "," +
                                          std::to_string(v->second) + ")");
  }
  const auto tgt = sl_reflect(target);
  return factor_through_sl(source, detail::compose(tgt.projection, h),
                           ssl_to_band(tgt.semilattice));
}

// A failed instance of a law that should hold for every input of its kind.
struct LawViolation {
  std::string law;
  std::string witness;
};

// Exhaustive check of the consequences of D1-D3: absorption of iterates,
// generalized absorption under reindexing, agreement of right and left folds,
// compatibility of the induced relation with D and every D_n, and
// (D(x,y), D(y,x)) related. Tuples range over lengths 1..max_length; reindexing
// maps range over lengths 1..min(max_length, 3).
inline std::vector<LawViolation> verify_band_laws(const LeftNormalBand& b,
                                                  std::size_t max_length = 4) {
  require_lnb(b, "verify_band_laws");
  std::vector<LawViolation> out;
  const std::size_t n = b.size();
  auto report = [&](std::string law, std::span<const Element> xs, std::string extra = {}) {
    out.push_back({std::move(law), detail::format_tuple(xs) + extra});
  };

  for (std::size_t len = 1; len <= max_length; ++len) {
    detail::for_each_tuple(n, len, [&](std::span<const Element> xs) {
      const Element r = right_iterate(b, xs);
      const Element l = left_iterate(b, xs);
      if (r != l) {
        report("fold-agreement", xs);
      }
      for (std::size_t k = 0; k < len; ++k) {
        if (b.op(r, xs[k]) != r) {
          report("absorption-right", xs, " k=" + std::to_string(k));
        }
        if (b.op(l, xs[k]) != l) {
          report("absorption-left", xs, " k=" + std::to_string(k));
        }
      }
    });
  }

  const std::size_t reindex_bound = std::min<std::size_t>(max_length, 3);
  for (std::size_t len = 1; len <= reindex_bound; ++len) {
    for (std::size_t m = 1; m <= reindex_bound; ++m) {
      detail::for_each_tuple(n, len, [&](std::span<const Element> xs) {
        const Element rn = right_iterate(b, xs);
        const Element ln = left_iterate(b, xs);
        detail::for_each_map(m, len, [&](const Map& phi) {
          std::vector<Element> ys(m);
          for (std::size_t k = 0; k < m; ++k) {
            ys[k] = xs[phi[k]];
          }
          const Element rm = right_iterate(b, ys);
          const Element lm = left_iterate(b, ys);
          if (b.op(rn, rm) != rn || b.op(rn, lm) != rn || b.op(ln, rm) != ln ||
              b.op(ln, lm) != ln) {
            report("generalized-absorption", xs, " phi=" + detail::format_tuple(phi));
          }
        });
      });
    }
  }

  const auto phi = induced_relation(b);
  if (!is_congruence(band_as_algebra(b), phi)) {
    out.push_back({"induced-congruence", "D"});
  }
  for (std::size_t len = 1; len <= std::min<std::size_t>(max_length, 3); ++len) {
    detail::for_each_tuple(n, len, [&](std::span<const Element> xs) {
      detail::for_each_tuple(n, len, [&](std::span<const Element> ys) {
        for (std::size_t j = 0; j < len; ++j) {
          if (!phi.related(xs[j], ys[j])) {
            return;
          }
        }
        if (!phi.related(right_iterate(b, xs), right_iterate(b, ys))) {
          report("iterate-congruence", xs, " vs " + detail::format_tuple(ys));
        }
      });
    });
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (!phi.related(b.op(x, y), b.op(y, x))) {
        const Element pair[] = {x, y};
        report("swap-related", pair);
      }
    }
  }
  return out;
}

}  // namespace plonka
