#pragma once

// JSON and DOT serialization of the stonekit artifact formats.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "stonekit/descent.hpp"
#include "stonekit/dlat.hpp"
#include "stonekit/fork.hpp"
#include "stonekit/stone.hpp"
#include "stonekit/topology.hpp"

namespace stonekit::io {

using nlohmann::json;
namespace fs = std::filesystem;

[[noreturn]] inline void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

inline json load_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    parse_error(path.string() + ": " + e.what());
  }
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    parse_error(e.what());
  }
}

/// Reads a JSON file, recording its directory so nested file references
/// resolve relative to it.
struct Document {
  json value;
  fs::path base;

  static Document open(const fs::path& path) { return {load_file(path), path.parent_path()}; }

  /// A nested object given inline or as a path string.
  Document child(const json& node) const {
    if (node.is_string()) return open(base / node.get<std::string>());
    return {node, base};
  }
};

// ---- field access ---------------------------------------------------------

inline const json& field(const json& obj, const char* key) {
  if (!obj.is_object()) parse_error(std::string("expected an object holding '") + key + "'");
  auto it = obj.find(key);
  if (it == obj.end()) parse_error(std::string("missing field '") + key + "'");
  return *it;
}

inline std::size_t to_index(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) parse_error(std::string(what) + " must be a non-negative integer");
  return v.get<std::size_t>();
}

inline std::vector<std::size_t> to_indices(const json& v, const char* what) {
  if (!v.is_array()) parse_error(std::string(what) + " must be an array");
  std::vector<std::size_t> out;
  for (const auto& e : v) out.push_back(to_index(e, what));
  return out;
}

inline std::vector<Pair> to_pairs(const json& v, const char* what) {
  if (!v.is_array()) parse_error(std::string(what) + " must be an array of pairs");
  std::vector<Pair> out;
  for (const auto& e : v) {
    if (!e.is_array() || e.size() != 2) parse_error(std::string(what) + " entries must be [x, y]");
    out.emplace_back(to_index(e[0], what), to_index(e[1], what));
  }
  return out;
}

inline std::vector<std::string> to_labels(const json& obj) {
  std::vector<std::string> out;
  if (auto it = obj.find("labels"); it != obj.end()) {
    if (!it->is_array()) parse_error("labels must be an array of strings");
    for (const auto& l : *it) {
      if (!l.is_string()) parse_error("labels must be an array of strings");
      out.push_back(l.get<std::string>());
    }
  }
  return out;
}

// ---- parsing --------------------------------------------------------------

inline FinPoset parse_poset(const json& j) {
  const std::size_t n = to_index(field(j, "n"), "n");
  std::vector<Pair> pairs = j.contains("leq") ? to_pairs(j["leq"], "leq") : std::vector<Pair>{};
  return FinPoset::from_pairs(n, pairs, to_labels(j));
}

inline FinSpace parse_space(const json& j) {
  const std::size_t n = to_index(field(j, "n"), "n");
  std::vector<Pair> pairs = j.contains("pre") ? to_pairs(j["pre"], "pre") : std::vector<Pair>{};
  return FinSpace::from_pairs(n, pairs, to_labels(j));
}

inline EquivRelation parse_relation(const json& j, std::size_t n) {
  const json& cls = field(j, "classes");
  if (!cls.is_array()) parse_error("classes must be an array");
  std::vector<std::vector<std::size_t>> classes;
  for (const auto& c : cls) classes.push_back(to_indices(c, "class"));
  return EquivRelation::from_classes(n, std::move(classes));
}

/// Either {"birkhoff": poset} or {"tables": {...}}; tables are normalised.
inline DistLattice parse_lattice(const Document& d) {
  const json& j = d.value;
  if (j.contains("birkhoff")) return DistLattice::from_birkhoff(parse_poset(d.child(j["birkhoff"]).value));
  if (j.contains("tables")) {
    const json& t = d.child(j["tables"]).value;
    LatticeTables tab;
    tab.n = to_index(field(t, "n"), "n");
    for (const char* key : {"meet", "join"}) {
      const json& rows = field(t, key);
      if (!rows.is_array()) parse_error(std::string(key) + " must be a matrix");
      auto& dst = std::string(key) == "meet" ? tab.meet : tab.join;
      for (const auto& r : rows) dst.push_back(to_indices(r, key));
    }
    tab.bot = to_index(field(t, "bot"), "bot");
    tab.top = to_index(field(t, "top"), "top");
    return from_tables(tab).lattice;
  }
  parse_error("lattice needs 'birkhoff' or 'tables'");
}

/// Map file {"src": lattice, "dst": lattice, "assign": [...]}. Assignments
/// index Birkhoff-normalised elements.
inline LatticeMap parse_lattice_map(const Document& d) {
  DistLattice src = parse_lattice(d.child(field(d.value, "src")));
  DistLattice dst = parse_lattice(d.child(field(d.value, "dst")));
  return LatticeMap::validate(std::move(src), std::move(dst), to_indices(field(d.value, "assign"), "assign"));
}

inline SpectralMap parse_spectral_map(const Document& d) {
  FinSpace src = parse_space(d.child(field(d.value, "src")).value);
  FinSpace dst = parse_space(d.child(field(d.value, "dst")).value);
  return SpectralMap::validate(std::move(src), std::move(dst), to_indices(field(d.value, "assign"), "assign"));
}

/// {"Z": space, "Y": space, "g": [...], "h": [...]}.
inline CoeqProblem parse_coeq(const Document& d) {
  FinSpace z = parse_space(d.child(field(d.value, "Z")).value);
  FinSpace y = parse_space(d.child(field(d.value, "Y")).value);
  return CoeqProblem::validate(SpectralMap::validate(z, y, to_indices(field(d.value, "g"), "g")),
                               SpectralMap::validate(z, y, to_indices(field(d.value, "h"), "h")));
}

/// Row {"sizes": [s0, s1, s2], "f": [...], "alpha": [...], "beta": [...]};
/// the bottom row may name its maps g, gamma, delta instead.
inline ParallelRow parse_row(const json& j) {
  std::vector<std::size_t> s = to_indices(field(j, "sizes"), "sizes");
  if (s.size() != 3) parse_error("sizes must list three set sizes");
  auto pick = [&](const char* a, const char* b) { return to_indices(j.contains(a) ? j[a] : field(j, b), a); };
  ParallelRow r{s[0], s[1], s[2], pick("f", "g"), pick("alpha", "gamma"), pick("beta", "delta")};
  r.validate();
  return r;
}

inline std::optional<Assignment> optional_map(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return to_indices(j[key], key);
}

inline ForkDiagram parse_fork(const json& j) {
  return ForkDiagram::validate(parse_row(j), optional_map(j, "u"), optional_map(j, "v"));
}

struct LadderFile {
  std::string kind;  // "injective" or "retraction"
  LadderDiagram ladder;
};

/// {"kind", "top": row+u+v, "bottom": row, "i0".."i2", "r0".."r2"}.
inline LadderFile parse_ladder(const json& j) {
  LadderFile out;
  const json& kind = field(j, "kind");
  if (!kind.is_string()) parse_error("kind must be a string");
  out.kind = kind.get<std::string>();
  if (out.kind != "injective" && out.kind != "retraction") parse_error("kind must be 'injective' or 'retraction'");
  const json& top = field(j, "top");
  out.ladder.top = parse_row(top);
  out.ladder.u = optional_map(top, "u");
  out.ladder.v = optional_map(top, "v");
  out.ladder.bottom = parse_row(field(j, "bottom"));
  out.ladder.i0 = to_indices(field(j, "i0"), "i0");
  out.ladder.i1 = to_indices(field(j, "i1"), "i1");
  out.ladder.i2 = to_indices(field(j, "i2"), "i2");
  out.ladder.r0 = optional_map(j, "r0");
  out.ladder.r1 = optional_map(j, "r1");
  out.ladder.r2 = optional_map(j, "r2");
  out.ladder.validate();
  return out;
}

/// {"L0", "L1", "L2": lattices, "f", "alpha", "beta", "u", "v": index arrays}.
inline DescentDiagram parse_descent(const Document& d) {
  DistLattice l0 = parse_lattice(d.child(field(d.value, "L0")));
  DistLattice l1 = parse_lattice(d.child(field(d.value, "L1")));
  DistLattice l2 = parse_lattice(d.child(field(d.value, "L2")));
  LatticeMap f = LatticeMap::validate(l0, l1, to_indices(field(d.value, "f"), "f"));
  LatticeMap a = LatticeMap::validate(l1, l2, to_indices(field(d.value, "alpha"), "alpha"));
  LatticeMap b = LatticeMap::validate(l1, l2, to_indices(field(d.value, "beta"), "beta"));
  return DescentDiagram::validate(std::move(f), std::move(a), std::move(b), to_indices(field(d.value, "u"), "u"),
                                  to_indices(field(d.value, "v"), "v"));
}

/// {"space": space, "group": [[...]]} or {"space": ..., "generators": [[...]]}.
inline GroupAction parse_action(const Document& d) {
  FinSpace x = parse_space(d.child(field(d.value, "space")).value);
  auto read = [&](const char* key) {
    const json& arr = field(d.value, key);
    if (!arr.is_array()) parse_error(std::string(key) + " must be an array of permutations");
    std::vector<Assignment> out;
    for (const auto& g : arr) out.push_back(to_indices(g, key));
    return out;
  };
  if (d.value.contains("group")) return GroupAction::validate(std::move(x), read("group"));
  return GroupAction::generated(std::move(x), read("generators"));
}

// ---- emission -------------------------------------------------------------

inline json pairs_json(const std::vector<Pair>& pairs) {
  json arr = json::array();
  for (const auto& [x, y] : pairs) arr.push_back({x, y});
  return arr;
}

inline void put_labels(json& j, const std::vector<std::string>& labels) {
  if (!labels.empty()) j["labels"] = labels;
}

/// Canonical form: the covering pairs.
inline json emit_poset(const FinPoset& p) {
  json j{{"n", p.size()}, {"leq", pairs_json(p.covers())}};
  put_labels(j, p.labels());
  return j;
}

/// Canonical generators of a preorder: each class as a cycle through its
/// members in ascending order, then the covers between class minima.
inline std::vector<Pair> canonical_generators(const FinSpace& x) {
  Kolmogorov k = kq(x);
  std::vector<Pair> out;
  for (const auto& cls : k.relation.classes())
    if (cls.size() > 1) {
      for (std::size_t i = 0; i + 1 < cls.size(); ++i) out.emplace_back(cls[i], cls[i + 1]);
      out.emplace_back(cls.back(), cls.front());
    }
  for (const auto& [a, b] : k.poset.covers())
    out.emplace_back(k.relation.classes()[a].front(), k.relation.classes()[b].front());
  std::sort(out.begin(), out.end());
  return out;
}

inline json emit_space(const FinSpace& x) {
  json j{{"n", x.size()}, {"pre", pairs_json(canonical_generators(x))}};
  put_labels(j, x.labels());
  return j;
}

inline json emit_relation(const EquivRelation& r) { return {{"classes", r.classes()}}; }

/// Birkhoff form plus the element masks in index order, for reference.
inline json emit_lattice(const DistLattice& l) {
  json elems = json::array();
  for (Mask m : l.elements()) elems.push_back(stonekit::to_indices(m));
  return {{"birkhoff", emit_poset(l.join_irreducibles())}, {"elements", elems}};
}

inline json emit_verdict(const Verdict& v) {
  json j{{"holds", v.holds}};
  if (!v.holds) {
    j["which"] = v.which;
    j["witness"] = v.witness;
  }
  return j;
}

inline json emit_error(const Error& e) {
  json j{{"error", to_string(e.kind())}, {"message", e.message()}};
  if (!e.witness().empty()) j["witness"] = e.witness();
  if (!e.which().empty()) j["which"] = e.which();
  return j;
}

namespace render {

inline bool has_object(const json& j) {
  if (j.is_object()) return true;
  if (j.is_array())
    for (const auto& e : j)
      if (has_object(e)) return true;
  return false;
}

inline void pretty(const json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      out += (first ? "" : ",\n") + inner + json(it.key()).dump() + ": ";
      pretty(*it, out, depth + 1);
      first = false;
    }
    out += "\n" + pad + "}";
  } else if (j.is_array() && !j.empty() && has_object(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += (i ? ",\n" : "") + inner;
      pretty(j[i], out, depth + 1);
    }
    out += "\n" + pad + "]";
  } else {
    out += j.dump();  // scalars and arrays without objects stay on one line
  }
}

}  // namespace render

/// Deterministic rendering: sorted keys, arrays of plain values on one line.
inline std::string dump(const json& j) {
  std::string out;
  render::pretty(j, out, 0);
  return out + "\n";
}

// ---- DOT ------------------------------------------------------------------

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

/// Hasse diagram of a poset, drawn bottom to top.
inline std::string dot_poset(const FinPoset& p, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=BT;\n";
  for (std::size_t x = 0; x < p.size(); ++x) os << "  n" << x << " [label=\"" << dot_escape(p.label(x)) << "\"];\n";
  for (const auto& [a, b] : p.covers()) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

/// Hasse diagram of the Kolmogorov quotient; each node lists its class.
inline std::string dot_space(const FinSpace& x, const std::string& name) {
  Kolmogorov k = kq(x);
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=BT;\n";
  for (std::size_t c = 0; c < k.relation.class_count(); ++c) {
    std::string label;
    for (std::size_t p : k.relation.classes()[c]) label += (label.empty() ? "" : ",") + x.label(p);
    os << "  n" << c << " [label=\"" << dot_escape(label) << "\"];\n";
  }
  for (const auto& [a, b] : k.poset.covers()) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

/// Hasse diagram of a lattice; elements are labelled by their
/// join-irreducible down-sets.
inline std::string dot_lattice(const DistLattice& l, const std::string& name) {
  if (l.size() > kMaxPoints) throw Error(ErrorKind::Size, "lattice too large to draw");
  std::vector<Mask> rows(l.size(), 0);
  for (std::size_t a = 0; a < l.size(); ++a)
    for (std::size_t b = 0; b < l.size(); ++b)
      if (l.leq(a, b)) rows[a] |= bit(b);
  std::vector<std::string> labels;
  for (Mask m : l.elements()) {
    std::string s = "{";
    for_each_bit(m, [&](std::size_t p) { s += (s.size() > 1 ? "," : "") + l.join_irreducibles().label(p); });
    labels.push_back(s + "}");
  }
  return dot_poset(FinPoset::from_rows(std::move(rows), std::move(labels)), name);
}

}  // namespace stonekit::io
