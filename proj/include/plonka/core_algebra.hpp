#pragma once

// Signatures, finite algebras given by full operation tables, homomorphisms,
// subalgebra and congruence generation, quotients and finite powers.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "plonka/detail/tuples.hpp"
#include "plonka/error.hpp"

namespace plonka {

struct Symbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

class Signature {
 public:
  Signature() = default;

  explicit Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i].name.empty()) {
        fail(ErrorKind::InvalidArgument, "operation symbol with empty name");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (symbols_[i].name == symbols_[j].name) {
          fail(ErrorKind::InvalidArgument, "duplicate operation symbol '" + symbols_[i].name + "'");
        }
      }
    }
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  const Symbol& operator[](std::size_t i) const { return symbols_.at(i); }
  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }

  std::size_t arity(std::size_t symbol) const { return symbols_.at(symbol).arity; }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i].name == name) {
        return i;
      }
    }
    return std::nullopt;
  }

  bool has_constants() const {
    return std::any_of(symbols_.begin(), symbols_.end(),
                       [](const Symbol& s) { return s.arity == 0; });
  }

  std::size_t max_arity() const {
    std::size_t m = 0;
    for (const auto& s : symbols_) {
      m = std::max(m, s.arity);
    }
    return m;
  }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Symbol> symbols_;
};

// The subsignature without 0-ary symbols, in the original order.
inline Signature restrict_nonzero(const Signature& sig) {
  std::vector<Symbol> kept;
  for (const auto& s : sig) {
    if (s.arity != 0) {
      kept.push_back(s);
    }
  }
  return Signature(std::move(kept));
}

inline void require_constant_free(const Signature& sig, std::string_view where) {
  for (const auto& s : sig) {
    if (s.arity == 0) {
      fail(ErrorKind::ConstantInSignature,
           std::string(where) + ": symbol '" + s.name + "' has arity 0");
    }
  }
}

// A Σ-algebra on the carrier 0..size-1. Table entries are stored row-major over
// argument tuples (first argument most significant). The constructor only checks
// the shape of the table list; use validate_algebra for the contents.
class FiniteAlgebra {
 public:
  FiniteAlgebra() = default;

  FiniteAlgebra(Signature signature, std::size_t size, std::vector<std::vector<Element>> tables)
      : signature_(std::move(signature)), size_(size), tables_(std::move(tables)) {
    if (tables_.size() != signature_.size()) {
      fail(ErrorKind::InvalidArgument, "expected one table per operation symbol");
    }
  }

  const Signature& signature() const noexcept { return signature_; }
  std::size_t size() const noexcept { return size_; }
  const std::vector<Element>& table(std::size_t symbol) const { return tables_.at(symbol); }
  const std::vector<std::vector<Element>>& tables() const noexcept { return tables_; }

  Element apply(std::size_t symbol, std::span<const Element> args) const {
    return tables_[symbol][detail::tuple_index(args, size_)];
  }

  Element apply(std::size_t symbol, std::initializer_list<Element> args) const {
    return apply(symbol, std::span<const Element>(args.begin(), args.size()));
  }

  friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;

 private:
  Signature signature_;
  std::size_t size_ = 0;
  std::vector<std::vector<Element>> tables_;
};

// Builds an algebra from per-symbol functions of the argument tuple.
template <typename F>
FiniteAlgebra make_algebra(const Signature& sig, std::size_t size, F&& op) {
  std::vector<std::vector<Element>> tables;
  for (std::size_t s = 0; s < sig.size(); ++s) {
    std::vector<Element> table;
    detail::for_each_tuple(size, sig.arity(s), [&](std::span<const Element> t) {
      table.push_back(op(s, t));
    });
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra(sig, size, std::move(tables));
}

struct TableIssue {
  enum class Kind { OutOfRange, Missing, Extra };
  Kind kind;
  std::size_t symbol;
  std::vector<Element> tuple;  // empty for Extra
  Element value = 0;

  friend bool operator==(const TableIssue&, const TableIssue&) = default;
};

struct AlgebraReport {
  std::vector<TableIssue> issues;
  bool ok() const noexcept { return issues.empty(); }
};

inline AlgebraReport validate_algebra(const FiniteAlgebra& a) {
  AlgebraReport report;
  const std::size_t n = a.size();
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    const std::size_t k = a.signature().arity(s);
    const auto expected = detail::checked_pow(n, k);
    if (!expected) {
      fail(ErrorKind::InvalidArgument, "table size overflows");
    }
    const auto& table = a.table(s);
    // An arity-0 table always has one slot, even over the empty carrier.
    const std::size_t slots = *expected;
    for (std::size_t idx = 0; idx < slots; ++idx) {
      auto tuple = (n == 0) ? std::vector<Element>{} : detail::tuple_at(idx, n, k);
      if (idx >= table.size()) {
        report.issues.push_back({TableIssue::Kind::Missing, s, std::move(tuple), 0});
      } else if (table[idx] >= n) {
        report.issues.push_back({TableIssue::Kind::OutOfRange, s, std::move(tuple), table[idx]});
      }
    }
    for (std::size_t idx = slots; idx < table.size(); ++idx) {
      report.issues.push_back({TableIssue::Kind::Extra, s, {}, table[idx]});
    }
  }
  return report;
}

inline std::string describe(const FiniteAlgebra& a, const TableIssue& issue) {
  const auto& name = a.signature()[issue.symbol].name;
  switch (issue.kind) {
    case TableIssue::Kind::OutOfRange:
      return name + detail::format_tuple(issue.tuple) + " = " + std::to_string(issue.value) +
             " is outside the carrier";
    case TableIssue::Kind::Missing:
      return name + detail::format_tuple(issue.tuple) + " has no value";
    case TableIssue::Kind::Extra:
      return name + " has surplus table entries";
  }
  return {};
}

inline void require_valid(const FiniteAlgebra& a, std::string_view where) {
  auto report = validate_algebra(a);
  if (!report.ok()) {
    fail(ErrorKind::ValidationError, std::string(where) + ": " + describe(a, report.issues.front()));
  }
}

inline void require_total_map(const Map& f, std::size_t source_size, std::size_t target_size,
                              std::string_view what) {
  if (f.size() != source_size) {
    fail(ErrorKind::InvalidArgument, std::string(what) + ": map has " + std::to_string(f.size()) +
                                         " entries, expected " + std::to_string(source_size));
  }
  for (Element y : f) {
    if (y >= target_size) {
      fail(ErrorKind::InvalidArgument, std::string(what) + ": map value " + std::to_string(y) +
                                           " outside target carrier");
    }
  }
}

// First (symbol, tuple) at which f(F(args)) != G(f(args)).
struct HomViolation {
  std::size_t symbol;
  std::vector<Element> tuple;

  friend bool operator==(const HomViolation&, const HomViolation&) = default;
};

inline std::optional<HomViolation> check_homomorphism(const Map& f, const FiniteAlgebra& a,
                                                      const FiniteAlgebra& b) {
  if (a.signature() != b.signature()) {
    fail(ErrorKind::SignatureMismatch, "homomorphism between algebras of different signatures");
  }
  require_total_map(f, a.size(), b.size(), "check_homomorphism");
  std::optional<HomViolation> violation;
  std::vector<Element> image;
  for (std::size_t s = 0; s < a.signature().size() && !violation; ++s) {
    detail::for_each_tuple(a.size(), a.signature().arity(s), [&](std::span<const Element> t) {
      image.assign(t.size(), 0);
      for (std::size_t j = 0; j < t.size(); ++j) {
        image[j] = f[t[j]];
      }
      if (f[a.apply(s, t)] != b.apply(s, image)) {
        violation = HomViolation{s, std::vector<Element>(t.begin(), t.end())};
        return false;
      }
      return true;
    });
  }
  return violation;
}

inline bool is_homomorphism(const Map& f, const FiniteAlgebra& a, const FiniteAlgebra& b) {
  return !check_homomorphism(f, a, b).has_value();
}

// Calls f(map) for every homomorphism a -> b in lexicographic map order.
template <typename F>
void for_each_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, F&& f) {
  detail::for_each_map(a.size(), b.size(), [&](const Map& map) {
    if (is_homomorphism(map, a, b)) {
      f(map);
    }
  });
}

// Least closed superset of seed, as a sorted element list.
inline std::vector<Element> generated_subalgebra(const FiniteAlgebra& a,
                                                 std::span<const Element> seed) {
  std::vector<bool> member(a.size(), false);
  for (Element x : seed) {
    if (x >= a.size()) {
      fail(ErrorKind::InvalidArgument, "seed element outside the carrier");
    }
    member[x] = true;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Element> current;
    for (Element x = 0; x < a.size(); ++x) {
      if (member[x]) {
        current.push_back(x);
      }
    }
    std::vector<Element> args;
    for (std::size_t s = 0; s < a.signature().size(); ++s) {
      const std::size_t k = a.signature().arity(s);
      detail::for_each_tuple(current.size(), k, [&](std::span<const Element> positions) {
        args.assign(k, 0);
        for (std::size_t j = 0; j < k; ++j) {
          args[j] = current[positions[j]];
        }
        const Element y = a.apply(s, args);
        if (!member[y]) {
          member[y] = true;
          changed = true;
        }
      });
    }
  }
  std::vector<Element> out;
  for (Element x = 0; x < a.size(); ++x) {
    if (member[x]) {
      out.push_back(x);
    }
  }
  return out;
}

inline bool is_closed(const FiniteAlgebra& a, std::span<const Element> subset) {
  auto closure = generated_subalgebra(a, subset);
  std::vector<Element> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return closure == sorted;
}

struct Subalgebra {
  FiniteAlgebra algebra;
  Map embedding;  // position -> element of the ambient algebra
};

// The subalgebra on a closed subset, renumbered by ascending element.
inline Subalgebra subalgebra(const FiniteAlgebra& a, std::span<const Element> subset) {
  std::vector<Element> elements(subset.begin(), subset.end());
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!is_closed(a, elements)) {
    fail(ErrorKind::NotClosed, "subset is not closed under the operations");
  }
  std::vector<std::size_t> position(a.size(), 0);
  for (std::size_t p = 0; p < elements.size(); ++p) {
    position[elements[p]] = p;
  }
  std::vector<Element> args;
  auto sub = make_algebra(a.signature(), elements.size(),
                          [&](std::size_t s, std::span<const Element> t) {
                            args.assign(t.size(), 0);
                            for (std::size_t j = 0; j < t.size(); ++j) {
                              args[j] = elements[t[j]];
                            }
                            return position[a.apply(s, args)];
                          });
  return {std::move(sub), elements};
}

// An equivalence relation as block labels. Canonical form numbers blocks in
// order of their least member.
struct Partition {
  std::vector<std::size_t> block_of;
  std::size_t block_count = 0;

  std::size_t size() const noexcept { return block_of.size(); }

  bool related(Element x, Element y) const { return block_of.at(x) == block_of.at(y); }

  std::vector<std::vector<Element>> blocks() const {
    std::vector<std::vector<Element>> out(block_count);
    for (Element x = 0; x < block_of.size(); ++x) {
      out[block_of[x]].push_back(x);
    }
    return out;
  }

  // Least member of each block.
  std::vector<Element> representatives() const {
    std::vector<Element> reps(block_count, 0);
    std::vector<bool> seen(block_count, false);
    for (Element x = 0; x < block_of.size(); ++x) {
      if (!seen[block_of[x]]) {
        seen[block_of[x]] = true;
        reps[block_of[x]] = x;
      }
    }
    return reps;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
};

using Congruence = Partition;

// Relabels arbitrary block labels canonically.
inline Partition canonical_partition(std::span<const std::size_t> labels) {
  Partition p;
  p.block_of.resize(labels.size());
  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    auto [it, inserted] = renumber.emplace(labels[x], renumber.size());
    p.block_of[x] = it->second;
  }
  p.block_count = renumber.size();
  return p;
}

inline Partition discrete_partition(std::size_t n) {
  auto labels = detail::identity_map(n);
  return canonical_partition(labels);
}

inline Partition total_partition(std::size_t n) {
  std::vector<std::size_t> labels(n, 0);
  return canonical_partition(labels);
}

// True when every block of fine lies inside a block of coarse.
inline bool refines(const Partition& fine, const Partition& coarse) {
  if (fine.size() != coarse.size()) {
    return false;
  }
  std::vector<std::optional<std::size_t>> image(fine.block_count);
  for (Element x = 0; x < fine.size(); ++x) {
    auto& slot = image[fine.block_of[x]];
    if (!slot) {
      slot = coarse.block_of[x];
    } else if (*slot != coarse.block_of[x]) {
      return false;
    }
  }
  return true;
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(identity_map(n)) {}

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) {
      return false;
    }
    if (y < x) {
      std::swap(x, y);
    }
    parent_[y] = x;
    return true;
  }

  Partition partition() {
    std::vector<std::size_t> labels(parent_.size());
    for (std::size_t x = 0; x < parent_.size(); ++x) {
      labels[x] = find(x);
    }
    return canonical_partition(labels);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

// Pair of blockwise-related argument tuples whose results are not related.
struct CongruenceViolation {
  std::size_t symbol;
  std::vector<Element> left;
  std::vector<Element> right;
};

inline std::optional<CongruenceViolation> check_congruence(const FiniteAlgebra& a,
                                                           const Partition& phi) {
  if (phi.size() != a.size()) {
    fail(ErrorKind::InvalidArgument, "partition size differs from carrier size");
  }
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    const std::size_t k = a.signature().arity(s);
    std::map<std::vector<std::size_t>, std::vector<Element>> first_by_blocks;
    std::optional<CongruenceViolation> violation;
    detail::for_each_tuple(a.size(), k, [&](std::span<const Element> t) {
      std::vector<std::size_t> key(k);
      for (std::size_t j = 0; j < k; ++j) {
        key[j] = phi.block_of[t[j]];
      }
      auto [it, inserted] = first_by_blocks.emplace(key, std::vector<Element>(t.begin(), t.end()));
      if (!inserted && !phi.related(a.apply(s, it->second), a.apply(s, t))) {
        violation = CongruenceViolation{s, it->second, std::vector<Element>(t.begin(), t.end())};
        return false;
      }
      return true;
    });
    if (violation) {
      return violation;
    }
  }
  return std::nullopt;
}

inline bool is_congruence(const FiniteAlgebra& a, const Partition& phi) {
  return !check_congruence(a, phi).has_value();
}

// Least congruence containing the given pairs: union-find seeded with the
// pairs, then merge F(t) with F(t') for blockwise-related t, t' until stable.
inline Congruence generated_congruence(const FiniteAlgebra& a,
                                       std::span<const std::pair<Element, Element>> pairs) {
  detail::UnionFind uf(a.size());
  for (auto [x, y] : pairs) {
    if (x >= a.size() || y >= a.size()) {
      fail(ErrorKind::InvalidArgument, "pair element outside the carrier");
    }
    uf.unite(x, y);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < a.signature().size(); ++s) {
      const std::size_t k = a.signature().arity(s);
      std::map<std::vector<std::size_t>, Element> result_by_blocks;
      detail::for_each_tuple(a.size(), k, [&](std::span<const Element> t) {
        std::vector<std::size_t> key(k);
        for (std::size_t j = 0; j < k; ++j) {
          key[j] = uf.find(t[j]);
        }
        const Element y = a.apply(s, t);
        auto [it, inserted] = result_by_blocks.emplace(std::move(key), y);
        if (!inserted && uf.unite(it->second, y)) {
          changed = true;
        }
      });
    }
  }
  return uf.partition();
}

struct Quotient {
  FiniteAlgebra algebra;
  Map projection;
};

// A/Φ with blocks numbered by least member, and the canonical projection.
inline Quotient quotient_algebra(const FiniteAlgebra& a, const Congruence& phi) {
  if (auto v = check_congruence(a, phi)) {
    fail(ErrorKind::NotACongruence,
         "operation '" + a.signature()[v->symbol].name + "' separates " +
             detail::format_tuple(v->left) + " and " + detail::format_tuple(v->right));
  }
  const auto canon = canonical_partition(phi.block_of);
  const auto reps = canon.representatives();
  std::vector<Element> args;
  auto q = make_algebra(a.signature(), canon.block_count,
                        [&](std::size_t s, std::span<const Element> t) {
                          args.assign(t.size(), 0);
                          for (std::size_t j = 0; j < t.size(); ++j) {
                            args[j] = reps[t[j]];
                          }
                          return canon.block_of[a.apply(s, args)];
                        });
  Map projection(canon.block_of.begin(), canon.block_of.end());
  if (!is_homomorphism(projection, a, q)) {
    fail(ErrorKind::Internal, "quotient projection is not a homomorphism");
  }
  return {std::move(q), std::move(projection)};
}

// The map A/Φ -> A/Ψ with p ∘ pr_Φ = pr_Ψ, for Φ ⊆ Ψ.
inline Map factor_map(const Congruence& phi, const Congruence& psi) {
  if (!refines(phi, psi)) {
    fail(ErrorKind::NotRefinement, "first congruence is not contained in the second");
  }
  const auto fine = canonical_partition(phi.block_of);
  const auto coarse = canonical_partition(psi.block_of);
  Map out(fine.block_count, 0);
  for (Element x = 0; x < fine.size(); ++x) {
    out[fine.block_of[x]] = coarse.block_of[x];
  }
  return out;
}

// A^k with coordinatewise operations; k-tuples numbered lexicographically.
inline FiniteAlgebra power_algebra(const FiniteAlgebra& a, std::size_t k) {
  if (k == 0) {
    fail(ErrorKind::InvalidArgument, "power exponent must be positive");
  }
  const std::size_t n = a.size();
  const auto size = detail::checked_pow(n, k);
  if (!size) {
    fail(ErrorKind::InvalidArgument, "power algebra too large");
  }
  std::vector<Element> coords;
  std::vector<std::vector<Element>> unpacked(*size);
  for (std::size_t e = 0; e < *size; ++e) {
    unpacked[e] = detail::tuple_at(e, n, k);
  }
  return make_algebra(a.signature(), *size, [&](std::size_t s, std::span<const Element> t) {
    std::vector<Element> result(k);
    coords.assign(t.size(), 0);
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t j = 0; j < t.size(); ++j) {
        coords[j] = unpacked[t[j]][c];
      }
      result[c] = a.apply(s, coords);
    }
    return detail::tuple_index(result, n);
  });
}

inline Map coordinate_projection(const FiniteAlgebra& a, std::size_t k, std::size_t coordinate) {
  const std::size_t size = detail::pow(a.size(), k);
  Map out(size);
  for (std::size_t e = 0; e < size; ++e) {
    out[e] = detail::tuple_at(e, a.size(), k)[coordinate];
  }
  return out;
}

}  // namespace plonka
