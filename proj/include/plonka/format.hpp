#pragma once

// Text format: a JSON object with a "kind" field, integer-coded elements,
// operation tables as nested row-major arrays, transitions keyed "i<j".
// Element names are optional metadata kept beside the structure.

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "plonka/band.hpp"
#include "plonka/core_algebra.hpp"
#include "plonka/error.hpp"
#include "plonka/inductive_system.hpp"
#include "plonka/plonka_algebra.hpp"
#include "plonka/semilattice.hpp"

namespace plonka {

using DocumentValue = std::variant<Signature, FiniteAlgebra, SupSemilattice, LeftNormalBand,
                                   PlonkaAlgebra, InductiveSystem, SystemMorphism, PlonkaMorphism>;

// Names are keyed by the path of the sized object they label: "" for the
// top level, "index", "fibers/2", "source/fibers/0", ...
using NameTable = std::map<std::string, std::vector<std::string>>;

struct Document {
  DocumentValue value;
  NameTable names;

  template <typename T>
  bool holds() const noexcept {
    return std::holds_alternative<T>(value);
  }

  template <typename T>
  const T& as() const {
    if (const T* p = std::get_if<T>(&value)) {
      return *p;
    }
    fail(ErrorKind::ParseError, "document does not hold the expected structure");
  }

  friend bool operator==(const Document&, const Document&) = default;
};

inline std::string_view kind_name(const DocumentValue& v) {
  static constexpr std::string_view names[] = {"signature", "algebra", "semilattice", "band",
                                               "plonka",    "system",  "morphism",    "morphism"};
  return names[v.index()];
}

// Full runs every validator (laws included); Shape only checks that the text
// describes a well-formed structure, leaving laws to an explicit check.
enum class Validation { Full, Shape };

namespace format_detail {

using Json = nlohmann::ordered_json;

inline std::string join_path(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "/" + key;
}

[[noreturn]] inline void schema_error(const std::string& path, const std::string& msg) {
  fail(ErrorKind::ParseError, "at /" + path + ": " + msg);
}

[[noreturn]] inline void invalid(const std::string& path, const std::string& msg) {
  fail(ErrorKind::ValidationError, (path.empty() ? std::string() : path + ": ") + msg);
}

inline void expect_keys(const Json& j, const std::string& path,
                        std::initializer_list<std::string_view> required,
                        std::initializer_list<std::string_view> optional = {}) {
  if (!j.is_object()) {
    schema_error(path, "expected an object");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& k = it.key();
    bool known = false;
    for (auto r : required) known = known || r == k;
    for (auto o : optional) known = known || o == k;
    if (!known) {
      schema_error(path, "unknown key \"" + k + "\"");
    }
  }
  for (auto r : required) {
    if (!j.contains(std::string(r))) {
      schema_error(path, "missing key \"" + std::string(r) + "\"");
    }
  }
}

inline Element get_element(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned()) {
    schema_error(path, "expected a non-negative integer");
  }
  return j.get<Element>();
}

inline Map get_map(const Json& j, const std::string& path) {
  if (!j.is_array()) {
    schema_error(path, "expected an array of elements");
  }
  Map out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(get_element(j[k], path + "/" + std::to_string(k)));
  }
  return out;
}

inline std::size_t get_size(const Json& j, const std::string& path) {
  const auto& v = j.at("size");
  const auto n = get_element(v, join_path(path, "size"));
  if (n > 4096) {
    schema_error(join_path(path, "size"), "carrier too large");
  }
  return n;
}

inline void get_names(const Json& j, std::size_t size, const std::string& path, NameTable& names) {
  if (!j.contains("names")) {
    return;
  }
  const auto& v = j.at("names");
  const auto where = join_path(path, "names");
  if (!v.is_array() || v.size() != size) {
    schema_error(where, "expected an array of " + std::to_string(size) + " strings");
  }
  std::vector<std::string> out;
  for (const auto& s : v) {
    if (!s.is_string()) {
      schema_error(where, "expected an array of strings");
    }
    out.push_back(s.get<std::string>());
  }
  names[path] = std::move(out);
}

inline void read_table(const Json& j, std::size_t depth, std::size_t n, const std::string& path,
                       std::vector<Element>& out) {
  if (depth == 0) {
    out.push_back(get_element(j, path));
    return;
  }
  if (!j.is_array() || j.size() != n) {
    schema_error(path, "expected a nested array of length " + std::to_string(n));
  }
  for (std::size_t k = 0; k < n; ++k) {
    read_table(j[k], depth - 1, n, path + "/" + std::to_string(k), out);
  }
}

inline std::vector<Element> get_table(const Json& j, std::size_t arity, std::size_t n,
                                      const std::string& path) {
  std::vector<Element> out;
  read_table(j, arity, n, path, out);
  return out;
}

inline Json write_table(const std::vector<Element>& table, std::size_t arity, std::size_t n,
                        std::size_t& pos) {
  if (arity == 0) {
    return Json(table[pos++]);
  }
  Json out = Json::array();
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(write_table(table, arity - 1, n, pos));
  }
  return out;
}

inline Json write_table(const std::vector<Element>& table, std::size_t arity, std::size_t n) {
  std::size_t pos = 0;
  return write_table(table, arity, n, pos);
}

inline Signature get_signature(const Json& j, const std::string& path) {
  if (!j.is_array()) {
    schema_error(path, "expected an array of symbols");
  }
  std::vector<Symbol> symbols;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto where = path + "/" + std::to_string(k);
    expect_keys(j[k], where, {"name", "arity"});
    if (!j[k].at("name").is_string()) {
      schema_error(where + "/name", "expected a string");
    }
    const auto arity = get_element(j[k].at("arity"), where + "/arity");
    if (arity > 8) {
      schema_error(where + "/arity", "arity too large");
    }
    symbols.push_back({j[k].at("name").get<std::string>(), arity});
  }
  try {
    return Signature(std::move(symbols));
  } catch (const Error& e) {
    invalid(path, e.what());
  }
}

inline Json write_signature(const Signature& sig) {
  Json out = Json::array();
  for (const auto& s : sig) {
    Json sym = Json::object();
    sym["name"] = s.name;
    sym["arity"] = s.arity;
    out.push_back(std::move(sym));
  }
  return out;
}

inline std::vector<std::vector<Element>> get_operations(const Json& j, const Signature& sig,
                                                        std::size_t n, const std::string& path) {
  if (!j.is_object()) {
    schema_error(path, "expected an object of operation tables");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!sig.find(it.key())) {
      schema_error(path, "table for unknown symbol \"" + it.key() + "\"");
    }
  }
  std::vector<std::vector<Element>> tables;
  for (const auto& s : sig) {
    if (!j.contains(s.name)) {
      schema_error(path, "missing table for \"" + s.name + "\"");
    }
    tables.push_back(get_table(j.at(s.name), s.arity, n, path + "/" + s.name));
  }
  return tables;
}

inline Json write_operations(const FiniteAlgebra& a) {
  Json out = Json::object();
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    out[a.signature()[s].name] = write_table(a.table(s), a.signature()[s].arity, a.size());
  }
  return out;
}

inline void put_names(Json& out, const NameTable& names, const std::string& path) {
  if (auto it = names.find(path); it != names.end()) {
    out["names"] = it->second;
  }
}

// --- validation hooks --------------------------------------------------------

inline void check_algebra(const FiniteAlgebra& a, const std::string& path) {
  auto report = validate_algebra(a);
  if (!report.ok()) {
    invalid(path, describe(a, report.issues.front()));
  }
}

inline void check_semilattice(const SupSemilattice& s, const std::string& path) {
  if (auto v = validate_ssl(s)) {
    invalid(path, "not a semilattice: " + describe(*v));
  }
}

// --- per-kind readers ---------------------------------------------------------

inline FiniteAlgebra read_algebra_body(const Json& j, const Signature& sig, const std::string& path,
                                       NameTable& names) {
  const auto n = get_size(j, path);
  get_names(j, n, path, names);
  return FiniteAlgebra(sig, n, get_operations(j.at("operations"), sig, n, join_path(path, "operations")));
}

inline SupSemilattice read_semilattice_body(const Json& j, const std::string& path, NameTable& names,
                                            Validation mode) {
  const auto n = get_size(j, path);
  get_names(j, n, path, names);
  SupSemilattice s(n, get_table(j.at("join"), 2, n, join_path(path, "join")));
  if (mode == Validation::Full) {
    check_semilattice(s, path);
  }
  return s;
}

inline Document read(const Json& j, const std::string& path, Validation mode);

inline std::pair<Element, Element> parse_transition_key(const std::string& key,
                                                        const std::string& path) {
  const auto lt = key.find('<');
  auto number = [&](std::string_view digits) {
    if (digits.empty() || digits.size() > 6 ||
        digits.find_first_not_of("0123456789") != std::string_view::npos) {
      schema_error(path, "malformed transition key \"" + key + "\"");
    }
    return static_cast<Element>(std::stoul(std::string(digits)));
  };
  if (lt == std::string::npos) {
    schema_error(path, "malformed transition key \"" + key + "\"");
  }
  const auto i = number(std::string_view(key).substr(0, lt));
  const auto k = number(std::string_view(key).substr(lt + 1));
  if (std::to_string(i) + "<" + std::to_string(k) != key) {
    schema_error(path, "non-canonical transition key \"" + key + "\"");
  }
  if (i == k) {
    schema_error(path, "diagonal transitions are implicit: \"" + key + "\"");
  }
  return {i, k};
}

inline InductiveSystem read_system(const Json& j, const std::string& path, NameTable& names,
                                   Validation mode) {
  expect_keys(j, path, {"kind", "signature", "index", "fibers", "transitions"});
  InductiveSystem sys;
  sys.signature = get_signature(j.at("signature"), join_path(path, "signature"));
  const auto index_path = join_path(path, "index");
  expect_keys(j.at("index"), index_path, {"size", "join"}, {"names"});
  sys.index = read_semilattice_body(j.at("index"), index_path, names, mode);
  const auto& fibers = j.at("fibers");
  const auto fibers_path = join_path(path, "fibers");
  if (!fibers.is_array() || fibers.size() != sys.index.size()) {
    schema_error(fibers_path, "expected one fiber per index element");
  }
  for (std::size_t k = 0; k < fibers.size(); ++k) {
    const auto where = fibers_path + "/" + std::to_string(k);
    expect_keys(fibers[k], where, {"size", "operations"}, {"names"});
    sys.algebras.push_back(read_algebra_body(fibers[k], sys.signature, where, names));
  }
  const auto& transitions = j.at("transitions");
  const auto transitions_path = join_path(path, "transitions");
  if (!transitions.is_object()) {
    schema_error(transitions_path, "expected an object");
  }
  for (auto it = transitions.begin(); it != transitions.end(); ++it) {
    auto key = parse_transition_key(it.key(), transitions_path);
    if (key.first >= sys.index.size() || key.second >= sys.index.size()) {
      invalid(transitions_path, "transition \"" + it.key() + "\" names a missing index");
    }
    sys.transitions[key] = get_map(it.value(), transitions_path + "/" + it.key());
  }
  add_identity_transitions(sys);
  if (mode == Validation::Full) {
    if (auto v = validate_indsys(sys)) {
      invalid(path, *v);
    }
  }
  return sys;
}

inline Document read(const Json& j, const std::string& path, Validation mode) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    schema_error(path, "expected an object with a string \"kind\"");
  }
  const auto kind = j.at("kind").get<std::string>();
  Document doc{Signature{}, {}};
  if (kind == "signature") {
    expect_keys(j, path, {"kind", "symbols"});
    doc.value = get_signature(j.at("symbols"), join_path(path, "symbols"));
  } else if (kind == "algebra") {
    expect_keys(j, path, {"kind", "signature", "size", "operations"}, {"names"});
    const auto sig = get_signature(j.at("signature"), join_path(path, "signature"));
    auto a = read_algebra_body(j, sig, path, doc.names);
    if (mode == Validation::Full) {
      check_algebra(a, path);
    }
    doc.value = std::move(a);
  } else if (kind == "semilattice") {
    expect_keys(j, path, {"kind", "size", "join"}, {"names"});
    doc.value = read_semilattice_body(j, path, doc.names, mode);
  } else if (kind == "band") {
    expect_keys(j, path, {"kind", "size", "table"}, {"names"});
    const auto n = get_size(j, path);
    get_names(j, n, path, doc.names);
    LeftNormalBand b(n, get_table(j.at("table"), 2, n, join_path(path, "table")));
    if (mode == Validation::Full) {
      if (auto v = validate_lnb(b)) {
        invalid(path, "not a left normal band: " + describe(*v));
      }
    }
    doc.value = std::move(b);
  } else if (kind == "plonka") {
    expect_keys(j, path, {"kind", "signature", "size", "operations", "band"}, {"names"});
    const auto sig = get_signature(j.at("signature"), join_path(path, "signature"));
    auto a = read_algebra_body(j, sig, path, doc.names);
    const auto n = a.size();
    PlonkaAlgebra p{std::move(a), LeftNormalBand(n, get_table(j.at("band"), 2, n, join_path(path, "band")))};
    if (mode == Validation::Full) {
      check_algebra(p.algebra, path);
      if (p.signature().has_constants()) {
        invalid(path, "Płonka algebra over a signature with constants");
      }
      if (auto v = validate_plonka(p)) {
        invalid(path, "not a Płonka algebra: " + describe(p, *v));
      }
    }
    doc.value = std::move(p);
  } else if (kind == "system") {
    doc.value = read_system(j, path, doc.names, mode);
  } else if (kind == "morphism") {
    // Morphism endpoints are always fully validated.
    const bool over_systems = j.contains("xi") || j.contains("components");
    if (over_systems) {
      expect_keys(j, path, {"kind", "source", "target", "xi", "components"});
    } else {
      expect_keys(j, path, {"kind", "source", "target", "map"});
    }
    const auto src_path = join_path(path, "source");
    const auto tgt_path = join_path(path, "target");
    auto src = read(j.at("source"), src_path, Validation::Full);
    auto tgt = read(j.at("target"), tgt_path, Validation::Full);
    doc.names.merge(src.names);
    doc.names.merge(tgt.names);
    if (over_systems) {
      if (!src.holds<InductiveSystem>() || !tgt.holds<InductiveSystem>()) {
        schema_error(path, "xi/components morphisms join two systems");
      }
      SystemMorphism m{src.as<InductiveSystem>(), tgt.as<InductiveSystem>(),
                       get_map(j.at("xi"), join_path(path, "xi")), {}};
      const auto& comps = j.at("components");
      if (!comps.is_array()) {
        schema_error(join_path(path, "components"), "expected an array of maps");
      }
      for (std::size_t k = 0; k < comps.size(); ++k) {
        m.components.push_back(get_map(comps[k], join_path(path, "components/" + std::to_string(k))));
      }
      if (m.xi.size() != m.source.index.size() ||
          std::any_of(m.xi.begin(), m.xi.end(), [&](Element p) { return p >= m.target.index.size(); })) {
        invalid(path, "xi is not a total map between the index semilattices");
      }
      if (auto v = validate_system_morphism(m)) {
        invalid(path, *v);
      }
      doc.value = std::move(m);
    } else {
      if (!src.holds<PlonkaAlgebra>() || !tgt.holds<PlonkaAlgebra>()) {
        schema_error(path, "map morphisms join two Płonka algebras");
      }
      PlonkaMorphism m{src.as<PlonkaAlgebra>(), tgt.as<PlonkaAlgebra>(),
                       get_map(j.at("map"), join_path(path, "map"))};
      if (m.source.signature() != m.target.signature()) {
        invalid(path, "source and target have different signatures");
      }
      if (m.map.size() != m.source.size() ||
          std::any_of(m.map.begin(), m.map.end(), [&](Element y) { return y >= m.target.size(); })) {
        invalid(path, "map is not a total map between the carriers");
      }
      if (auto v = check_plonka_morphism(m.map, m.source, m.target)) {
        invalid(path, "not a Płonka morphism: " + v->detail);
      }
      doc.value = std::move(m);
    }
  } else {
    schema_error(join_path(path, "kind"), "unknown kind \"" + kind + "\"");
  }
  return doc;
}

// --- writers -----------------------------------------------------------------

inline Json write(const DocumentValue& value, const NameTable& names, const std::string& path);

inline Json write_semilattice_body(const SupSemilattice& s, const NameTable& names,
                                   const std::string& path) {
  Json out = Json::object();
  out["size"] = s.size();
  put_names(out, names, path);
  out["join"] = write_table(s.table(), 2, s.size());
  return out;
}

inline Json write_system(const InductiveSystem& sys, const NameTable& names, const std::string& path) {
  Json out = Json::object();
  out["kind"] = "system";
  out["signature"] = write_signature(sys.signature);
  out["index"] = write_semilattice_body(sys.index, names, join_path(path, "index"));
  Json fibers = Json::array();
  for (std::size_t k = 0; k < sys.algebras.size(); ++k) {
    const auto& a = sys.algebras[k];
    Json fiber = Json::object();
    fiber["size"] = a.size();
    put_names(fiber, names, join_path(path, "fibers/" + std::to_string(k)));
    fiber["operations"] = write_operations(a);
    fibers.push_back(std::move(fiber));
  }
  out["fibers"] = std::move(fibers);
  Json transitions = Json::object();
  for (const auto& [key, f] : sys.transitions) {
    if (key.first != key.second) {
      transitions[std::to_string(key.first) + "<" + std::to_string(key.second)] = f;
    }
  }
  out["transitions"] = std::move(transitions);
  return out;
}

inline Json write(const DocumentValue& value, const NameTable& names, const std::string& path) {
  Json out = Json::object();
  out["kind"] = std::string(kind_name(value));
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Signature>) {
          out["symbols"] = write_signature(v);
        } else if constexpr (std::is_same_v<T, FiniteAlgebra>) {
          out["signature"] = write_signature(v.signature());
          out["size"] = v.size();
          put_names(out, names, path);
          out["operations"] = write_operations(v);
        } else if constexpr (std::is_same_v<T, SupSemilattice>) {
          out.update(write_semilattice_body(v, names, path));
        } else if constexpr (std::is_same_v<T, LeftNormalBand>) {
          out["size"] = v.size();
          put_names(out, names, path);
          out["table"] = write_table(v.table(), 2, v.size());
        } else if constexpr (std::is_same_v<T, PlonkaAlgebra>) {
          out["signature"] = write_signature(v.signature());
          out["size"] = v.size();
          put_names(out, names, path);
          out["operations"] = write_operations(v.algebra);
          out["band"] = write_table(v.band.table(), 2, v.size());
        } else if constexpr (std::is_same_v<T, InductiveSystem>) {
          out = write_system(v, names, path);
        } else if constexpr (std::is_same_v<T, SystemMorphism>) {
          out["source"] = write(v.source, names, join_path(path, "source"));
          out["target"] = write(v.target, names, join_path(path, "target"));
          out["xi"] = v.xi;
          out["components"] = v.components;
        } else if constexpr (std::is_same_v<T, PlonkaMorphism>) {
          out["source"] = write(v.source, names, join_path(path, "source"));
          out["target"] = write(v.target, names, join_path(path, "target"));
          out["map"] = v.map;
        }
      },
      value);
  return out;
}

inline void print_inline(const Json& j, std::string& out) {
  if (j.is_object()) {
    out += '{';
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ", ";
      first = false;
      out += Json(it.key()).dump(-1, ' ', false);
      out += ": ";
      print_inline(it.value(), out);
    }
    out += '}';
  } else if (j.is_array()) {
    out += '[';
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (k) out += ", ";
      print_inline(j[k], out);
    }
    out += ']';
  } else {
    out += j.dump(-1, ' ', false);
  }
}

inline std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace format_detail

inline Document parse_document(std::string_view text, Validation mode = Validation::Full) {
  using format_detail::Json;
  // Reject duplicate keys, which the JSON reader would otherwise merge.
  std::vector<std::vector<std::string>> seen;
  std::optional<std::string> duplicate;
  auto callback = [&](int, Json::parse_event_t event, Json& parsed) {
    if (event == Json::parse_event_t::object_start) {
      seen.emplace_back();
    } else if (event == Json::parse_event_t::object_end) {
      seen.pop_back();
    } else if (event == Json::parse_event_t::key && !seen.empty()) {
      auto key = parsed.get<std::string>();
      auto& keys = seen.back();
      if (std::find(keys.begin(), keys.end(), key) != keys.end() && !duplicate) {
        duplicate = key;
      }
      keys.push_back(std::move(key));
    }
    return true;
  };
  Json j;
  try {
    j = Json::parse(text.begin(), text.end(), callback);
  } catch (const nlohmann::json::parse_error& e) {
    std::string msg = e.what();
    if (auto p = msg.find("parse error"); p != std::string::npos) {
      msg = msg.substr(p);
    }
    fail(ErrorKind::ParseError, format_detail::line_column(text, e.byte ? e.byte - 1 : 0) + ": " + msg);
  }
  if (duplicate) {
    fail(ErrorKind::ParseError, "duplicate key \"" + *duplicate + "\"");
  }
  return format_detail::read(j, "", mode);
}

// Canonical form: fixed key order, top-level keys one per line, nested values
// inline with ", " and ": ", newline-terminated.
inline std::string serialize_document(const Document& doc) {
  const auto j = format_detail::write(doc.value, doc.names, "");
  std::string out = "{\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += "  ";
    out += format_detail::Json(it.key()).dump(-1, ' ', false);
    out += ": ";
    format_detail::print_inline(it.value(), out);
  }
  out += "\n}\n";
  return out;
}

inline Document strip_names(Document doc) {
  doc.names.clear();
  return doc;
}

}  // namespace plonka
