#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "generators.hpp"
#include "plonka/plonka.hpp"

using namespace plonka;
using gen::kind_of;

namespace {

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kX{"x"};

}  // namespace

TEST(ParseTerm, Examples) {
  const auto sig = gen::binary();
  EXPECT_EQ(parse_term("x", sig, kX), Term::variable(0));
  EXPECT_EQ(parse_term("σ(x,x)", sig, kX), Term::apply(0, {Term::variable(0), Term::variable(0)}));
  EXPECT_EQ(kind_of([&] { parse_term("σ(x)", sig, kX); }), ErrorKind::ArityError);
}

TEST(ParseTerm, WhitespaceAndErrors) {
  const auto sig = gen::binary();
  EXPECT_EQ(parse_term("  σ ( x , y ) ", sig, kXY),
            Term::apply(0, {Term::variable(0), Term::variable(1)}));
  EXPECT_EQ(kind_of([&] { parse_term("σ(x,", sig, kXY); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([&] { parse_term("z", sig, kXY); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([&] { parse_term("x y", sig, kXY); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([&] { parse_term("x(y)", sig, kXY); }), ErrorKind::ParseError);
  const std::vector<std::string> clash{"σ"};
  EXPECT_EQ(kind_of([&] { parse_term("σ", sig, clash); }), ErrorKind::ParseError);
  try {
    parse_term("σ(x,?)", sig, kXY);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("position 4"), std::string::npos) << e.what();
  }
}

TEST(ParseTerm, Constants) {
  const Signature sig({{"c", 0}, {"σ", 2}});
  EXPECT_EQ(parse_term("c", sig, kX), Term::apply(0));
  EXPECT_EQ(parse_term("c()", sig, kX), Term::apply(0));
  EXPECT_EQ(parse_term("c", sig, kX).shape(), Term::Shape::Constant);
  EXPECT_EQ(parse_term("σ(c,x)", sig, kX).shape(), Term::Shape::Composite);
  EXPECT_EQ(parse_term("x", sig, kX).shape(), Term::Shape::Variable);
}

TEST(EvaluateTerm, Examples) {
  const auto a = gen::from_table(2, {0, 0, 0, 0});
  const std::vector<Element> env{1};
  EXPECT_EQ(evaluate_term(Term::variable(0), a, env), 1u);
  EXPECT_EQ(evaluate_term(parse_term("σ(x,x)", a.signature(), kX), a, env), 0u);
  EXPECT_EQ(evaluate_term(parse_term("σ(σ(x,x),x)", a.signature(), kX), a, env), 0u);
}

TEST(EvaluateTerm, SignatureMismatch) {
  const FiniteAlgebra unary(Signature({{"τ", 1}}), 2, {{1, 0}});
  const auto t = Term::apply(0, {Term::variable(0), Term::variable(0)});
  const std::vector<Element> env{0};
  EXPECT_EQ(kind_of([&] { evaluate_term(t, unary, env); }), ErrorKind::SignatureMismatch);
}

TEST(EnumerateTerms, Examples) {
  const auto sig = gen::binary();
  EXPECT_EQ(enumerate_terms(sig, 2, 0), (std::vector<Term>{Term::variable(0), Term::variable(1)}));
  EXPECT_EQ(enumerate_terms(sig, 1, 1),
            (std::vector<Term>{Term::variable(0), Term::apply(0, {Term::variable(0), Term::variable(0)})}));
  EXPECT_EQ(enumerate_terms(sig, 2, 1).size(), 6u);
  for (const auto& t : enumerate_terms(sig, 2, 2)) EXPECT_LE(t.height(), 2u);
}

TEST(EvaluateTerm, Compositional) {
  std::mt19937 rng(41);
  const Signature sig({{"σ", 2}, {"τ", 1}});
  const std::vector<std::string> names{"x", "y"};
  auto terms = enumerate_terms(sig, 2, 2);
  // subterms print shorter, so this puts them first
  std::stable_sort(terms.begin(), terms.end(), [&](const Term& l, const Term& r) {
    return print_term(l, sig, names).size() < print_term(r, sig, names).size();
  });
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const auto a = gen::random_algebra(rng, sig, n);
    const std::vector<Element> env{static_cast<Element>(rng() % n), static_cast<Element>(rng() % n)};
    for (const auto& t : terms) {
      const auto* app = std::get_if<Application>(&t.node);
      if (!app) continue;
      std::vector<Element> values;
      for (const auto& arg : app->args) values.push_back(evaluate_term(arg, a, env));
      EXPECT_EQ(evaluate_term(t, a, env), a.apply(app->symbol, values));
    }
  }
}

TEST(EvaluateTerm, UniqueExtensionAtFiniteDepth) {
  // Any assignment on the enumerated terms that extends env and commutes with
  // the operations is forced, level by level, to equal evaluation.
  std::mt19937 rng(43);
  const auto sig = gen::binary();
  const std::vector<std::string> names{"x", "y"};
  auto terms = enumerate_terms(sig, 2, 2);
  // subterms print shorter, so this puts them first
  std::stable_sort(terms.begin(), terms.end(), [&](const Term& l, const Term& r) {
    return print_term(l, sig, names).size() < print_term(r, sig, names).size();
  });
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = gen::random_algebra(rng, sig, 3);
    const std::vector<Element> env{static_cast<Element>(rng() % 3), static_cast<Element>(rng() % 3)};
    std::map<std::string, Element> assigned;
    for (const auto& t : terms) {
      const auto key = print_term(t, sig, names);
      if (const auto* v = std::get_if<Variable>(&t.node)) {
        assigned[key] = env[v->index];
      } else {
        const auto& app = std::get<Application>(t.node);
        std::vector<Element> values;
        for (const auto& arg : app.args) values.push_back(assigned.at(print_term(arg, sig, names)));
        assigned[key] = a.apply(app.symbol, values);
      }
      EXPECT_EQ(assigned[key], evaluate_term(t, a, env));
    }
  }
}

TEST(PrintTerm, ParseInvertsPrint) {
  const Signature sig({{"σ", 2}, {"τ", 1}});
  for (const auto& t : enumerate_terms(sig, 2, 2)) {
    const auto text = print_term(t, sig, kXY);
    EXPECT_EQ(parse_term(text, sig, kXY), t) << text;
  }
}
