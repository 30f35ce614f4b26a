#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace plonka {

// Elements of a finite carrier are the indices 0..n-1.
using Element = std::size_t;

// A total function between carriers, stored as its value list.
using Map = std::vector<Element>;

namespace detail {

// n^k, or nullopt on overflow.
inline std::optional<std::size_t> checked_pow(std::size_t base, std::size_t exp) {
  std::size_t result = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<std::size_t>::max() / base) {
      return std::nullopt;
    }
    result *= base;
  }
  return result;
}

inline std::size_t pow(std::size_t base, std::size_t exp) {
  return checked_pow(base, exp).value();
}

// Row-major index of a tuple: the first coordinate is most significant.
inline std::size_t tuple_index(std::span<const Element> tuple, std::size_t n) {
  std::size_t index = 0;
  for (Element x : tuple) {
    index = index * n + x;
  }
  return index;
}

inline std::vector<Element> tuple_at(std::size_t index, std::size_t n, std::size_t k) {
  std::vector<Element> tuple(k, 0);
  for (std::size_t j = k; j-- > 0;) {
    tuple[j] = index % n;
    index /= n;
  }
  return tuple;
}

// Calls f(tuple) for every k-tuple over 0..n-1 in lexicographic order.
// Stops early and returns false when f returns false.
template <typename F>
bool for_each_tuple(std::size_t n, std::size_t k, F&& f) {
  std::vector<Element> tuple(k, 0);
  if (k > 0 && n == 0) {
    return true;
  }
  while (true) {
    if constexpr (std::is_same_v<decltype(f(std::span<const Element>(tuple))), bool>) {
      if (!f(std::span<const Element>(tuple))) {
        return false;
      }
    } else {
      f(std::span<const Element>(tuple));
    }
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++tuple[pos] < n) {
        break;
      }
      tuple[pos] = 0;
      if (pos == 0) {
        return true;
      }
    }
    if (k == 0) {
      return true;
    }
  }
}

// Every map from an n-element set to an m-element set, lexicographically.
template <typename F>
bool for_each_map(std::size_t n, std::size_t m, F&& f) {
  return for_each_tuple(m, n, [&](std::span<const Element> t) {
    Map map(t.begin(), t.end());
    if constexpr (std::is_same_v<decltype(f(map)), bool>) {
      return f(map);
    } else {
      f(map);
      return true;
    }
  });
}

inline std::string format_tuple(std::span<const Element> tuple) {
  std::string out = "(";
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    if (j > 0) {
      out += ",";
    }
    out += std::to_string(tuple[j]);
  }
  out += ")";
  return out;
}

inline Map identity_map(std::size_t n) {
  Map map(n);
  for (std::size_t i = 0; i < n; ++i) {
    map[i] = i;
  }
  return map;
}

// (g ∘ f)(x) = g(f(x)).
inline Map compose(const Map& g, const Map& f) {
  Map out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = g.at(f[i]);
  }
  return out;
}

inline bool is_bijective(const Map& map, std::size_t target_size) {
  if (map.size() != target_size) {
    return false;
  }
  std::vector<bool> seen(target_size, false);
  for (Element y : map) {
    if (y >= target_size || seen[y]) {
      return false;
    }
    seen[y] = true;
  }
  return true;
}

inline Map inverse_bijection(const Map& map) {
  Map inverse(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    inverse[map[i]] = i;
  }
  return inverse;
}

}  // namespace detail
}  // namespace plonka
