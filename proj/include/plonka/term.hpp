#pragma once

// Terms over a signature and a finite set of variables, the free-algebra fold,
// and depth-bounded enumeration of the term algebra.

#include <cctype>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "plonka/core_algebra.hpp"

namespace plonka {

struct Term;

struct Variable {
  std::size_t index;
  friend bool operator==(const Variable&, const Variable&) = default;
};

struct Application {
  std::size_t symbol;
  std::vector<Term> args;
  friend bool operator==(const Application&, const Application&);
};

// A term is a variable or an operation symbol applied to as many subterms as its
// arity. Constants are applications with no arguments.
struct Term {
  std::variant<Variable, Application> node;

  enum class Shape { Variable, Constant, Composite };

  static Term variable(std::size_t index) { return Term{Variable{index}}; }
  static Term apply(std::size_t symbol, std::vector<Term> args = {}) {
    return Term{Application{symbol, std::move(args)}};
  }

  Shape shape() const {
    if (std::holds_alternative<Variable>(node)) {
      return Shape::Variable;
    }
    return std::get<Application>(node).args.empty() ? Shape::Constant : Shape::Composite;
  }

  std::size_t height() const {
    if (const auto* app = std::get_if<Application>(&node)) {
      std::size_t h = 0;
      for (const auto& t : app->args) {
        h = std::max(h, t.height());
      }
      return h + 1;
    }
    return 0;
  }

  friend bool operator==(const Term&, const Term&) = default;
};

inline bool operator==(const Application& a, const Application& b) {
  return a.symbol == b.symbol && a.args == b.args;
}

// Prefix notation: a variable name, a constant name, or name(t, ..., t).
// A constant may also be written name().
inline Term parse_term(std::string_view text, const Signature& sig,
                       std::span<const std::string> vars) {
  for (const auto& v : vars) {
    if (sig.find(v)) {
      fail(ErrorKind::ParseError, "variable '" + v + "' collides with an operation symbol");
    }
  }
  std::size_t pos = 0;
  // positions count code points, not bytes
  auto error = [&](const std::string& msg) -> Error {
    std::size_t chars = 0;
    for (std::size_t k = 0; k < pos && k < text.size(); ++k) {
      if ((static_cast<unsigned char>(text[k]) & 0xC0) != 0x80) ++chars;
    }
    return Error(ErrorKind::ParseError, "at position " + std::to_string(chars) + ": " + msg);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  };
  auto is_delim = [](char c) {
    return c == '(' || c == ')' || c == ',' || std::isspace(static_cast<unsigned char>(c));
  };

  std::function<Term()> parse = [&]() -> Term {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() && !is_delim(text[pos])) {
      ++pos;
    }
    if (pos == start) {
      throw error("expected a name");
    }
    const std::string name(text.substr(start, pos - start));
    skip_ws();
    const bool has_parens = pos < text.size() && text[pos] == '(';
    if (auto symbol = sig.find(name)) {
      const std::size_t arity = sig.arity(*symbol);
      std::vector<Term> args;
      if (has_parens) {
        ++pos;
        skip_ws();
        if (pos < text.size() && text[pos] == ')') {
          ++pos;
        } else {
          while (true) {
            args.push_back(parse());
            skip_ws();
            if (pos < text.size() && text[pos] == ',') {
              ++pos;
              continue;
            }
            if (pos < text.size() && text[pos] == ')') {
              ++pos;
              break;
            }
            throw error("expected ',' or ')'");
          }
        }
      }
      if (args.size() != arity) {
        fail(ErrorKind::ArityError, "symbol '" + name + "' has arity " + std::to_string(arity) +
                                        " but was given " + std::to_string(args.size()) +
                                        " arguments");
      }
      return Term::apply(*symbol, std::move(args));
    }
    for (std::size_t v = 0; v < vars.size(); ++v) {
      if (vars[v] == name) {
        if (has_parens) {
          throw error("variable '" + name + "' cannot take arguments");
        }
        return Term::variable(v);
      }
    }
    pos = start;
    throw error("unknown name '" + name + "'");
  };

  Term t = parse();
  skip_ws();
  if (pos != text.size()) {
    throw error("trailing input");
  }
  return t;
}

inline std::string print_term(const Term& t, const Signature& sig,
                              std::span<const std::string> vars) {
  if (const auto* v = std::get_if<Variable>(&t.node)) {
    return vars[v->index];
  }
  const auto& app = std::get<Application>(t.node);
  std::string out = sig[app.symbol].name;
  if (app.args.empty()) {
    return out;
  }
  out += "(";
  for (std::size_t j = 0; j < app.args.size(); ++j) {
    if (j > 0) {
      out += ",";
    }
    out += print_term(app.args[j], sig, vars);
  }
  return out + ")";
}

// The unique homomorphic extension of env along the variables.
inline Element evaluate_term(const Term& t, const FiniteAlgebra& a, std::span<const Element> env) {
  if (const auto* v = std::get_if<Variable>(&t.node)) {
    if (v->index >= env.size()) {
      fail(ErrorKind::InvalidArgument, "environment does not cover variable " +
                                           std::to_string(v->index));
    }
    return env[v->index];
  }
  const auto& app = std::get<Application>(t.node);
  if (app.symbol >= a.signature().size() || a.signature().arity(app.symbol) != app.args.size()) {
    fail(ErrorKind::SignatureMismatch, "term does not fit the algebra's signature");
  }
  std::vector<Element> values;
  values.reserve(app.args.size());
  for (const auto& arg : app.args) {
    values.push_back(evaluate_term(arg, a, env));
  }
  return a.apply(app.symbol, values);
}

// All terms of height <= depth: variables first, then each symbol in signature
// order applied to argument tuples drawn lexicographically from depth - 1.
inline std::vector<Term> enumerate_terms(const Signature& sig, std::size_t var_count,
                                         std::size_t depth) {
  std::vector<Term> level;
  for (std::size_t v = 0; v < var_count; ++v) {
    level.push_back(Term::variable(v));
  }
  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<Term> next;
    for (std::size_t v = 0; v < var_count; ++v) {
      next.push_back(Term::variable(v));
    }
    for (std::size_t s = 0; s < sig.size(); ++s) {
      detail::for_each_tuple(level.size(), sig.arity(s), [&](std::span<const Element> t) {
        std::vector<Term> args;
        args.reserve(t.size());
        for (Element i : t) {
          args.push_back(level[i]);
        }
        next.push_back(Term::apply(s, std::move(args)));
      });
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace plonka
