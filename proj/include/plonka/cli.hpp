#pragma once

// Command-line driver. run_command takes the arguments after the program name
// and writes to the given streams; exit codes are 0 pass, 1 check failed,
// 2 parse or usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plonka/band.hpp"
#include "plonka/format.hpp"
#include "plonka/inductive_system.hpp"
#include "plonka/plonka_adjunction.hpp"
#include "plonka/plonka_algebra.hpp"
#include "plonka/semilattice.hpp"

namespace plonka {

namespace cli_detail {

using Json = nlohmann::ordered_json;

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool json = false;
};

inline std::string read_text(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    fail(ErrorKind::ParseError, "cannot read " + path);
  }
  buf << file.rdbuf();
  return buf.str();
}

inline Document load(const Context& ctx, const std::string& path,
                     Validation mode = Validation::Full) {
  return parse_document(read_text(path, ctx.in), mode);
}

template <typename T>
const T& expect(const Document& doc, const char* what) {
  if (!doc.holds<T>()) {
    fail(ErrorKind::ParseError, std::string("expected ") + what + " document, got " +
                                    std::string(kind_name(doc.value)));
  }
  return doc.as<T>();
}

inline std::string name_of(const NameTable& names, const std::string& path, Element x) {
  if (auto it = names.find(path); it != names.end() && x < it->second.size()) {
    return it->second[x];
  }
  return std::to_string(x);
}

inline std::string join(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "/" + b;
}

// Moves names found under path `from` to path `to`.
inline NameTable rebase(const NameTable& names, const std::string& from, const std::string& to) {
  NameTable out;
  for (const auto& [k, v] : names) {
    std::string rest;
    if (from.empty()) {
      rest = k;
    } else if (k == from) {
      rest = "";
    } else if (k.rfind(from + "/", 0) == 0) {
      rest = k.substr(from.size() + 1);
    } else {
      continue;
    }
    out[join(to, rest)] = v;
  }
  return out;
}

// "(i,x)" from index and fiber names.
inline NameTable sum_names(const PlonkaSum& sum, const NameTable& names) {
  std::vector<std::string> out;
  for (const auto& [i, x] : sum.elements) {
    out.push_back("(" + name_of(names, "index", i) + "," +
                  name_of(names, "fibers/" + std::to_string(i), x) + ")");
  }
  return {{"", std::move(out)}};
}

// Blocks named "[least member]", fibers by their members' names.
inline NameTable decomposition_names(const Decomposition& dec, const NameTable& names,
                                     const std::string& prefix = "") {
  NameTable out;
  std::vector<std::string> index;
  for (std::size_t b = 0; b < dec.classes.size(); ++b) {
    index.push_back("[" + name_of(names, "", dec.classes[b].front()) + "]");
    std::vector<std::string> fiber;
    for (Element z : dec.classes[b]) {
      fiber.push_back(name_of(names, "", z));
    }
    out[join(prefix, "fibers/" + std::to_string(b))] = std::move(fiber);
  }
  out[join(prefix, "index")] = std::move(index);
  return out;
}

inline void emit(const Context& ctx, const Document& doc) { ctx.out << serialize_document(doc); }

inline void emit_report(const Context& ctx, const Json& report) {
  if (ctx.json) {
    ctx.out << report.dump() << "\n";
    return;
  }
  for (auto it = report.begin(); it != report.end(); ++it) {
    ctx.out << it.key() << ": ";
    if (it.value().is_string()) {
      ctx.out << it.value().get<std::string>();
    } else {
      ctx.out << it.value().dump();
    }
    ctx.out << "\n";
  }
}

inline Map parse_list(const std::string& text) {
  Map out;
  if (text.empty()) {
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos ||
        item.size() > 6) {
      fail(ErrorKind::ParseError, "expected a comma-separated list of elements, got \"" + text + "\"");
    }
    out.push_back(std::stoul(item));
  }
  return out;
}

// --- commands ----------------------------------------------------------------

inline int check(const Context& ctx, const std::string& what, const std::string& path) {
  const auto doc = load(ctx, path, Validation::Shape);
  std::optional<std::string> witness;
  if (what == "lnb") {
    if (auto v = validate_lnb(expect<LeftNormalBand>(doc, "a band"))) witness = describe(*v);
  } else if (what == "ssl") {
    if (auto v = validate_ssl(expect<SupSemilattice>(doc, "a semilattice"))) witness = describe(*v);
  } else if (what == "algebra") {
    const auto& a = expect<FiniteAlgebra>(doc, "an algebra");
    auto report = validate_algebra(a);
    if (!report.ok()) witness = describe(a, report.issues.front());
  } else if (what == "plonka") {
    const auto& p = expect<PlonkaAlgebra>(doc, "a plonka");
    auto report = validate_algebra(p.algebra);
    if (!report.ok()) {
      witness = describe(p.algebra, report.issues.front());
    } else if (p.signature().has_constants()) {
      witness = "signature has constants";
    } else if (auto v = validate_plonka(p)) {
      witness = describe(p, *v);
    }
  } else if (what == "system") {
    witness = validate_indsys(expect<InductiveSystem>(doc, "a system"));
  }
  Json report = Json::object();
  report["check"] = what;
  report["result"] = witness ? "fail" : "pass";
  if (witness) {
    report["witness"] = *witness;
  }
  emit_report(ctx, report);
  return witness ? 1 : 0;
}

inline int sl(const Context& ctx, const std::string& path) {
  const auto doc = load(ctx, path);
  LeftNormalBand band;
  if (doc.holds<PlonkaAlgebra>()) {
    band = doc.as<PlonkaAlgebra>().band;
  } else {
    band = expect<LeftNormalBand>(doc, "a band or plonka");
  }
  const auto r = sl_reflect(band);
  std::vector<std::string> names;
  for (const auto& block : r.relation.blocks()) {
    names.push_back("[" + name_of(doc.names, "", block.front()) + "]");
  }
  emit(ctx, {r.semilattice, {{"", names}}});
  return 0;
}

inline int sum(const Context& ctx, const std::string& path) {
  const auto doc = load(ctx, path);
  const auto& sys = expect<InductiveSystem>(doc, "a system");
  const auto s = plonka_sum(sys);
  emit(ctx, {s.plonka, sum_names(s, doc.names)});
  return 0;
}

inline int decompose_cmd(const Context& ctx, const std::string& path) {
  const auto doc = load(ctx, path);
  const auto dec = decompose(expect<PlonkaAlgebra>(doc, "a plonka"));
  emit(ctx, {dec.system, decomposition_names(dec, doc.names)});
  return 0;
}

inline int unit_cmd(const Context& ctx, const std::string& path) {
  const auto doc = load(ctx, path);
  const auto& sys = expect<InductiveSystem>(doc, "a system");
  const auto eta = unit(sys);
  const auto s = plonka_sum(sys);
  NameTable names = rebase(doc.names, "", "source");
  names.merge(decomposition_names(decompose(s.plonka), sum_names(s, doc.names), "target"));
  emit(ctx, {eta, std::move(names)});
  return 0;
}

inline int extend(const Context& ctx, const std::string& morphism_path, const std::string& q_path) {
  const auto mdoc = load(ctx, morphism_path);
  const auto qdoc = load(ctx, q_path);
  const auto& m = expect<SystemMorphism>(mdoc, "a system morphism");
  const auto& q = expect<PlonkaAlgebra>(qdoc, "a plonka");
  const auto ext = universal_extension(m, q);
  const auto s = plonka_sum(m.source);
  NameTable names = rebase(sum_names(s, rebase(mdoc.names, "source", "")), "", "source");
  names.merge(rebase(qdoc.names, "", "target"));
  emit(ctx, {ext, std::move(names)});
  return 0;
}

inline bool is_isomorphism(const PlonkaMorphism& h) {
  if (!detail::is_bijective(h.map, h.target.size())) {
    return false;
  }
  return is_plonka_morphism(detail::inverse_bijection(h.map), h.target, h.source);
}

inline bool is_isomorphism(const SystemMorphism& m) {
  if (!detail::is_bijective(m.xi, m.target.index.size())) {
    return false;
  }
  for (Element i = 0; i < m.components.size(); ++i) {
    if (!detail::is_bijective(m.components[i], m.target.algebras[m.xi[i]].size())) {
      return false;
    }
  }
  // The inverse index map must preserve joins and order; with bijective
  // components the inverse family is then natural as well.
  const auto inv = detail::inverse_bijection(m.xi);
  return is_ssl_morphism(inv, m.target.index, m.source.index);
}

inline int roundtrip(const Context& ctx, const std::string& path) {
  const auto doc = load(ctx, path);
  const auto& sys = expect<InductiveSystem>(doc, "a system");
  const auto s = plonka_sum(sys);
  const bool unit_iso = is_isomorphism(unit(sys));
  const bool counit_iso = is_isomorphism(counit(s.plonka));
  const bool triangles = unit_triangle_holds(s.plonka) && counit_triangle_holds(sys);
  if (ctx.json) {
    Json report = Json::object();
    report["unit"] = unit_iso ? "isomorphism" : "not an isomorphism";
    report["counit"] = counit_iso ? "isomorphism" : "not an isomorphism";
    report["triangles"] = triangles ? "pass" : "fail";
    emit_report(ctx, report);
  } else {
    ctx.out << "unit: " << (unit_iso ? "isomorphism" : "not an isomorphism") << "\n";
    ctx.out << "counit: " << (counit_iso ? "isomorphism" : "not an isomorphism")
            << "; triangles: " << (triangles ? "pass" : "fail") << "\n";
  }
  return unit_iso && counit_iso && triangles ? 0 : 1;
}

inline int verify(const Context& ctx, const std::string& sys_path, const std::string& q_path,
                  const std::string& m_path, std::size_t bound) {
  const auto sdoc = load(ctx, sys_path);
  const auto& sys = expect<InductiveSystem>(sdoc, "a system");
  PlonkaAlgebra q;
  SystemMorphism m;
  if (q_path.empty()) {
    q = plonka_sum(sys).plonka;
    m = unit(sys);
  } else {
    const auto qdoc = load(ctx, q_path);
    const auto mdoc = load(ctx, m_path);
    q = expect<PlonkaAlgebra>(qdoc, "a plonka");
    m = expect<SystemMorphism>(mdoc, "a system morphism");
  }
  const auto report = verify_adjunction(sys, q, m, AdjunctionOptions{bound});
  Json out = Json::object();
  out["factorization"] = report.factorization ? "pass" : "fail";
  out["factoring morphisms"] = report.factoring_morphisms;
  out["maps enumerated"] = report.candidates;
  out["uniqueness"] = report.unique ? "pass" : "fail";
  out["unit triangle"] = report.unit_triangle ? "pass" : "fail";
  out["counit triangle"] = report.counit_triangle ? "pass" : "fail";
  out["adjunction"] = report.passed() ? "pass" : "fail";
  emit_report(ctx, out);
  return report.passed() ? 0 : 1;
}

inline int enumerate_plonka(const Context& ctx, const std::string& path, std::size_t bound) {
  const auto doc = load(ctx, path);
  const auto& a = expect<FiniteAlgebra>(doc, "an algebra");
  const auto ops = enumerate_plonka_operators(a, bound);
  Json tables = Json::array();
  for (const auto& d : ops) {
    tables.push_back(format_detail::write_table(d.table(), 2, d.size()));
  }
  if (ctx.json) {
    Json out = Json::object();
    out["count"] = ops.size();
    out["operators"] = tables;
    ctx.out << out.dump() << "\n";
  } else {
    ctx.out << "operators: " << ops.size() << "\n";
    for (const auto& t : tables) {
      std::string line;
      format_detail::print_inline(t, line);
      ctx.out << line << "\n";
    }
  }
  return 0;
}

inline std::string subset_name(std::size_t mask, const NameTable& names) {
  std::string out = "{";
  bool first = true;
  for (std::size_t g = 0; mask >> g; ++g) {
    if ((mask >> g) & 1U) {
      if (!first) out += ",";
      first = false;
      out += name_of(names, "", g);
    }
  }
  return out + "}";
}

inline int free_ssl_cmd(const Context& ctx, const std::string& count) {
  const auto n = parse_list(count);
  if (n.size() != 1) {
    fail(ErrorKind::ParseError, "expected a single generator count");
  }
  const auto f = free_ssl(n.front());
  std::vector<std::string> names;
  for (Element e = 0; e < f.semilattice.size(); ++e) {
    names.push_back(subset_name(FreeSsl::mask_of_element(e), {}));
  }
  emit(ctx, {f.semilattice, {{"", names}}});
  return 0;
}

inline int m_adjoint(const Context& ctx, const std::string& path) {
  const auto doc = load(ctx, path);
  const auto r = ssl_reflection_of_algebra(expect<FiniteAlgebra>(doc, "an algebra"));
  std::vector<std::string> names(r.semilattice.size());
  for (Element e = r.free.semilattice.size(); e-- > 0;) {
    names[r.free_projection[e]] = subset_name(FreeSsl::mask_of_element(e), doc.names);
  }
  emit(ctx, {r.semilattice, {{"", names}}});
  return 0;
}

inline int transpose(const Context& ctx, const std::string& a_path, const std::string& b_path,
                     const std::string& xi_text, const std::string& u_path) {
  const auto adoc = load(ctx, a_path);
  const auto bdoc = load(ctx, b_path);
  const auto& a = expect<InductiveSystem>(adoc, "a system");
  const auto& b = expect<InductiveSystem>(bdoc, "a system");
  const auto xi = parse_list(xi_text);
  if (xi.size() != a.index.size() ||
      std::any_of(xi.begin(), xi.end(), [&](Element p) { return p >= b.index.size(); })) {
    fail(ErrorKind::InvalidArgument, "index map is not a total map between the index semilattices");
  }
  const auto zeta = residual_left_adjoint(xi, a.index, b.index);
  if (!zeta) {
    fail(ErrorKind::NotResiduated, "index map has no residual");
  }
  if (!u_path.empty()) {
    const auto udoc = load(ctx, u_path);
    emit(ctx, {residuated_transpose(a, b, xi, expect<SystemMorphism>(udoc, "a system morphism")), {}});
    return 0;
  }
  const auto b_xi = reindex(b, xi, a.index);
  const auto a_zeta = reindex(a, *zeta, b.index);
  std::vector<SystemMorphism> left, right;
  for_each_system_morphism(b_xi, a, detail::identity_map(a.index.size()),
                           [&](const SystemMorphism& u) { left.push_back(u); });
  for_each_system_morphism(b, a_zeta, detail::identity_map(b.index.size()),
                           [&](const SystemMorphism& v) { right.push_back(v); });
  bool ok = left.size() == right.size();
  for (const auto& u : left) {
    const auto v = residuated_transpose(a, b, xi, u);
    ok = ok && std::find(right.begin(), right.end(), v) != right.end() &&
         inverse_transpose(a, b, xi, v) == u;
  }
  for (const auto& v : right) {
    ok = ok && residuated_transpose(a, b, xi, inverse_transpose(a, b, xi, v)) == v;
  }
  Json out = Json::object();
  out["residual"] = *zeta;
  out["left hom-set"] = left.size();
  out["right hom-set"] = right.size();
  out["transpose"] = ok ? "bijection" : "fail";
  emit_report(ctx, out);
  return ok ? 0 : 1;
}

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidArgument:
    case ErrorKind::ArityError:
    case ErrorKind::CarrierTooLarge:
    case ErrorKind::SearchSpaceTooLarge:
      return 2;
    default:
      return 1;
  }
}

}  // namespace cli_detail

inline int run_command(std::vector<std::string> args, std::istream& in, std::ostream& out,
                       std::ostream& err) {
  using namespace cli_detail;
  CLI::App app{"Płonka sums, decompositions and their adjunction on finite algebras", "plonka"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");
  std::size_t bound = 3;
  std::string what, f1, f2, f3, f4;

  auto* check_cmd = app.add_subcommand("check", "check the laws of a structure");
  check_cmd->add_option("what", what)->required()->check(
      CLI::IsMember({"lnb", "plonka", "ssl", "algebra", "system"}));
  check_cmd->add_option("file", f1)->required();
  auto* sl_cmd = app.add_subcommand("sl", "semilattice reflection of a band or Płonka algebra");
  sl_cmd->add_option("file", f1)->required();
  auto* decompose_sub = app.add_subcommand("decompose", "inductive system of a Płonka algebra");
  decompose_sub->add_option("file", f1)->required();
  auto* sum_cmd = app.add_subcommand("sum", "Płonka sum of an inductive system");
  sum_cmd->add_option("file", f1)->required();
  auto* unit_sub = app.add_subcommand("unit", "unit morphism of an inductive system");
  unit_sub->add_option("file", f1)->required();
  auto* extend_cmd = app.add_subcommand("extend", "universal extension of a system morphism");
  extend_cmd->add_option("morphism", f1)->required();
  extend_cmd->add_option("plonka", f2)->required();
  auto* roundtrip_cmd = app.add_subcommand("roundtrip", "sum, decompose and compare");
  roundtrip_cmd->add_option("file", f1)->required();
  auto* verify_cmd = app.add_subcommand("verify-adjunction", "exhaustive adjunction check");
  verify_cmd->add_option("system", f1)->required();
  verify_cmd->add_option("plonka", f2);
  verify_cmd->add_option("morphism", f3);
  verify_cmd->add_option("--bound", bound, "largest carrier to enumerate over")->capture_default_str();
  auto* enumerate_cmd = app.add_subcommand("enumerate-plonka", "all Płonka operators on an algebra");
  enumerate_cmd->add_option("algebra", f1)->required();
  enumerate_cmd->add_option("--bound", bound, "largest carrier to enumerate over")->capture_default_str();
  auto* free_cmd = app.add_subcommand("free-ssl", "free semilattice on N generators");
  free_cmd->add_option("n", f1)->required();
  auto* madj_cmd = app.add_subcommand("m-adjoint", "semilattice reflection of an algebra");
  madj_cmd->add_option("algebra", f1)->required();
  auto* transpose_cmd = app.add_subcommand("transpose", "residuated transpose of system morphisms");
  transpose_cmd->add_option("a", f1)->required();
  transpose_cmd->add_option("b", f2)->required();
  transpose_cmd->add_option("xi", f3)->required();
  transpose_cmd->add_option("u", f4);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (verify_cmd->parsed() && f2.empty() != f3.empty()) {
    err << "error: verify-adjunction takes both a Płonka algebra and a morphism, or neither\n";
    return 2;
  }

  Context ctx{in, out, err, json};
  try {
    if (check_cmd->parsed()) return check(ctx, what, f1);
    if (sl_cmd->parsed()) return sl(ctx, f1);
    if (decompose_sub->parsed()) return decompose_cmd(ctx, f1);
    if (sum_cmd->parsed()) return sum(ctx, f1);
    if (unit_sub->parsed()) return unit_cmd(ctx, f1);
    if (extend_cmd->parsed()) return extend(ctx, f1, f2);
    if (roundtrip_cmd->parsed()) return roundtrip(ctx, f1);
    if (verify_cmd->parsed()) return verify(ctx, f1, f2, f3, bound);
    if (enumerate_cmd->parsed()) return enumerate_plonka(ctx, f1, bound);
    if (free_cmd->parsed()) return free_ssl_cmd(ctx, f1);
    if (madj_cmd->parsed()) return m_adjoint(ctx, f1);
    if (transpose_cmd->parsed()) return transpose(ctx, f1, f2, f3, f4);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

inline int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  return run_command(std::move(args), std::cin, out, err);
}

}  // namespace plonka
