#pragma once

// JSON input formats, report serialization and atomic file output.
//
// space:    {"points": ["a", "b"], "covers": [["a", "b"]]}   pairs are lower < upper
// map:      {"domain": space, "codomain": space, "assignment": {"a": "x", ...}}
//           where a space may also be given as a path relative to the map file
// square:   {"map": map, "x_sub": [...], "y_sub": [...], "r_x": {...}, "r_y": {...}}
// complex:  {"vertices": [...], "facets": [[...]], "vertex_order": [...]}
// matrix:   [[1, 0], [0, 1]]  or  {"rows": [[...]]}
// homsquare: {"a", "a_prime", "r_domain", "r_codomain", "i_domain", "i_codomain"}

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fintop/chains.hpp"
#include "fintop/covers.hpp"
#include "fintop/error.hpp"
#include "fintop/finspace.hpp"
#include "fintop/grouphom.hpp"
#include "fintop/retracts.hpp"
#include "fintop/snf.hpp"
#include "fintop/square.hpp"

namespace fintop::io {

using Json = nlohmann::json;

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

/// Parses JSON text; syntax errors carry the 1-based line and column.
inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ParseError(what, line, column);
  }
}

struct LoadedFile {
  std::string path;
  std::string text;
  Json json;
  std::uint64_t hash = 0;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline LoadedFile load_file(const std::string& path) {
  LoadedFile f;
  f.path = path;
  f.text = read_file(path);
  f.hash = fnv1a64(f.text);
  f.json = parse_text(f.text);
  return f;
}

/// Writes through a sibling temporary file and renames it into place.
inline void write_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, target);
}

// Structural errors in otherwise valid JSON have no position.
[[noreturn]] inline void schema_error(const std::string& what) { throw ParseError(what, 0, 0); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) schema_error(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) schema_error(std::string(what) + " must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

// Spaces

inline FiniteSpace space_from_json(const Json& j) {
  const auto labels = string_list(field(j, "points"), "points");
  std::vector<std::pair<std::string, std::string>> pairs;
  if (j.contains("covers")) {
    const Json& covers = j.at("covers");
    if (!covers.is_array()) schema_error("covers must be an array of pairs");
    for (const auto& p : covers) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
        schema_error("covers entries must be [lower, upper] label pairs");
      }
      pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
  }
  return FiniteSpace::from_covers(labels, pairs);
}

/// Points plus the covering pairs of the order, in index order.
inline Json space_to_json(const FiniteSpace& x) {
  Json covers = Json::array();
  for (Point p = 0; p < x.size(); ++p) {
    bits::for_each(x.minimal(x.strict_up(p)), [&](Point q) {
      covers.push_back({x.label(p), x.label(q)});
    });
  }
  return {{"points", x.labels()}, {"covers", covers}};
}

inline std::vector<Point> assignment_from_json(const Json& j, const FiniteSpace& domain,
                                               const FiniteSpace& codomain) {
  std::vector<Point> a(domain.size(), 0);
  std::vector<bool> set(domain.size(), false);
  if (!j.is_object()) schema_error("assignment must be an object from labels to labels");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_string()) schema_error("assignment values must be labels");
    const Point x = domain.require(it.key());
    a[x] = codomain.require(it.value().get<std::string>());
    set[x] = true;
  }
  for (Point x = 0; x < domain.size(); ++x) {
    if (!set[x]) throw ShapeError("assignment misses point '" + domain.label(x) + "'");
  }
  return a;
}

inline Json assignment_to_json(const FiniteSpace& domain, const FiniteSpace& codomain,
                               const std::vector<Point>& a) {
  Json out = Json::object();
  for (Point x = 0; x < a.size(); ++x) out[domain.label(x)] = codomain.label(a[x]);
  return out;
}

inline Json map_to_json(const SpaceMap& f) {
  return {{"domain", space_to_json(*f.domain())},
          {"codomain", space_to_json(*f.codomain())},
          {"assignment", assignment_to_json(*f.domain(), *f.codomain(), f.assignment())}};
}

inline bool is_map_json(const Json& j) { return j.is_object() && j.contains("domain"); }

/// Loads a file referenced from another input; receives the path as written.
using Resolver = std::function<Json(const std::string&)>;

inline Json resolve_space(const Json& j, const Resolver& resolve) {
  if (!j.is_string()) return j;
  if (!resolve) schema_error("space file references are not allowed here");
  return resolve(j.get<std::string>());
}

/// A map file, or a space file read as its identity map.
inline SpaceMap map_from_json(const Json& j, const Resolver& resolve = {}) {
  if (!is_map_json(j)) return SpaceMap::identity(make_space(space_from_json(j)));
  SpacePtr x = make_space(space_from_json(resolve_space(field(j, "domain"), resolve)));
  SpacePtr y = x;
  if (j.contains("codomain")) {
    const Json cj = resolve_space(j.at("codomain"), resolve);
    FiniteSpace ys = space_from_json(cj);
    if (!(ys == *x)) y = make_space(std::move(ys));
  }
  auto a = assignment_from_json(field(j, "assignment"), *x, *y);
  return SpaceMap(x, y, std::move(a));
}

inline PointSet label_mask(const FiniteSpace& x, const Json& j, const char* what) {
  PointSet m = 0;
  for (const auto& l : string_list(j, what)) m |= bits::bit(x.require(l));
  return m;
}

inline RetractionSquare square_from_json(const Json& j, const Resolver& resolve = {}) {
  const Json& mj = field(j, "map");
  const SpaceMap f = map_from_json(mj.is_string() && resolve ? resolve(mj.get<std::string>()) : mj,
                                   resolve);
  const Subspace xs = induced_subspace(f.domain(), label_mask(*f.domain(), field(j, "x_sub"), "x_sub"));
  const Subspace ys =
      induced_subspace(f.codomain(), label_mask(*f.codomain(), field(j, "y_sub"), "y_sub"));
  SpaceMap rx(f.domain(), xs.space, assignment_from_json(field(j, "r_x"), *f.domain(), *xs.space));
  SpaceMap ry(f.codomain(), ys.space,
              assignment_from_json(field(j, "r_y"), *f.codomain(), *ys.space));
  SpaceMap fp = restrict_map(f, xs, ys);
  return RetractionSquare{f, xs, ys, std::move(fp), std::move(rx), std::move(ry)};
}

inline Json points_json(const FiniteSpace& x, PointSet s) {
  Json out = Json::array();
  bits::for_each(s, [&](Point p) { out.push_back(x.label(p)); });
  return out;
}

// Complexes

/// A complex file, or a space file read as its order complex. The vertex
/// order is fixed on load: `vertex_order` when present, else the vertex list.
inline SimplicialComplex complex_from_json(const Json& j) {
  if (j.is_object() && j.contains("points")) return order_complex(space_from_json(j));
  const auto vertices = string_list(field(j, "vertices"), "vertices");
  std::vector<std::vector<std::string>> facets;
  const Json& fs = field(j, "facets");
  if (!fs.is_array()) schema_error("facets must be an array of vertex lists");
  for (const auto& f : fs) facets.push_back(string_list(f, "facet"));
  const auto k = SimplicialComplex::from_facets(vertices, facets);
  if (j.contains("vertex_order")) {
    return k.with_vertex_order(string_list(j.at("vertex_order"), "vertex_order"));
  }
  return k.with_vertex_order();
}

inline Json complex_to_json(const SimplicialComplex& k) {
  Json facets = Json::array();
  for (const auto& f : k.facets()) {
    Json names = Json::array();
    for (auto v : f) names.push_back(k.labels()[v]);
    facets.push_back(names);
  }
  return {{"vertices", k.labels()}, {"facets", facets}};
}

// Matrices

inline IntMatrix matrix_from_json(const Json& j) {
  const Json& rows = j.is_object() ? field(j, "rows") : j;
  if (!rows.is_array()) schema_error("matrix must be an array of rows");
  std::vector<std::vector<std::int64_t>> data;
  for (const auto& row : rows) {
    if (!row.is_array()) schema_error("matrix rows must be arrays of integers");
    std::vector<std::int64_t> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) schema_error("matrix entries must be integers");
      r.push_back(v.get<std::int64_t>());
    }
    data.push_back(std::move(r));
  }
  return IntMatrix::from_rows(data);
}

inline Json matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

inline std::string big_string(const BigInt& v) { return v.str(); }

inline HomSquare hom_square_from_json(const Json& j) {
  return {matrix_from_json(field(j, "a")),          matrix_from_json(field(j, "a_prime")),
          matrix_from_json(field(j, "r_domain")),   matrix_from_json(field(j, "r_codomain")),
          matrix_from_json(field(j, "i_domain")),   matrix_from_json(field(j, "i_codomain"))};
}

inline Json hom_square_to_json(const HomSquare& s) {
  return {{"a", matrix_to_json(s.a)},
          {"a_prime", matrix_to_json(s.a_prime)},
          {"r_domain", matrix_to_json(s.r_domain)},
          {"r_codomain", matrix_to_json(s.r_codomain)},
          {"i_domain", matrix_to_json(s.i_domain)},
          {"i_codomain", matrix_to_json(s.i_codomain)}};
}

inline SubhomInstance subhom_from_json(const Json& j, std::string name) {
  return {std::move(name), matrix_from_json(field(j, "a")), matrix_from_json(field(j, "i_domain")),
          matrix_from_json(field(j, "i_codomain"))};
}

// Results

inline Json fence_to_json(const FenceWitness& w) {
  Json steps = Json::array();
  for (const auto& s : w.steps) {
    steps.push_back(assignment_to_json(*s.domain(), *s.codomain(), s.assignment()));
  }
  return steps;
}

inline Json cover_to_json(const Cover& c) {
  const FiniteSpace& space = *c.space();
  Json parts = Json::array();
  for (std::size_t i = 0; i < c.parts.size(); ++i) {
    Json w = Json::array();
    for (const auto& f : c.witnesses[i]) w.push_back(fence_to_json(f));
    parts.push_back({{"points", points_json(space, c.parts[i])}, {"fences", w}});
  }
  return {{"kind", c.kind == CoverKind::Category ? "category" : "sequential-complexity"},
          {"r", c.r},
          {"parts", parts}};
}

inline Json planner_to_json(const PlannerTable& t) {
  const FiniteSpace& y = *t.map.codomain();
  const FiniteSpace& prod = *t.product->space();
  Json entries = Json::array();
  for (const auto& e : t.entries) {
    Json fence = Json::array();
    for (Point p : e.fence) fence.push_back(y.label(p));
    entries.push_back({{"tuple", prod.label(e.tuple)}, {"fence", fence}, {"waypoints", e.waypoints}});
  }
  return {{"subset", points_json(prod, t.subset)}, {"entries", entries}};
}

inline Json homology_to_json(const HomologySummary& h) {
  Json degrees = Json::array();
  for (std::size_t k = 0; k < h.rank.size(); ++k) {
    Json tors = Json::array();
    for (const auto& t : h.torsion[k]) tors.push_back(big_string(t));
    degrees.push_back({{"degree", k}, {"rank", h.rank[k]}, {"torsion", tors}});
  }
  return {{"ring", h.ring.to_string()},
          {"kind", h.cohomology ? "cohomology" : "homology"},
          {"degrees", degrees},
          {"simplex_counts", h.simplex_counts},
          {"euler_from_ranks", h.euler_from_ranks()}};
}

inline Json dimension_to_json(const DimensionEstimate& d) {
  Json probes = Json::array();
  for (const auto& p : d.probes) {
    probes.push_back({{"ring", p.ring.to_string()},
                      {"top_degree", p.top_degree},
                      {"added_for_torsion", p.added_for_torsion}});
  }
  Json primes = Json::array();
  for (const auto& p : d.torsion_primes) primes.push_back(big_string(p));
  return {{"lower_bound", d.lower_bound},
          {"upper_bound", d.upper_bound},
          {"value_kind", "lower bound over the probed coefficient rings"},
          {"probes", probes},
          {"torsion_primes", primes}};
}

inline Json audit_record_to_json(const AuditRecord& r, const std::vector<SpacePtr>& spaces) {
  const FiniteSpace& x = *spaces[r.x_index];
  const FiniteSpace& y = *spaces[r.y_index];
  Json out = {{"x", r.x_index},
              {"y", r.y_index},
              {"f", assignment_to_json(x, y, r.f)},
              {"x_sub", points_json(x, r.x_sub)},
              {"y_sub", points_json(y, r.y_sub)},
              {"r", r.r},
              {"squares", r.squares},
              {"value_f", r.value_f},
              {"value_f_prime", r.value_f_prime},
              {"transported", r.transported},
              {"transported_valid", r.transported_valid},
              {"status", to_string(r.status)}};
  if (!r.detail.empty()) out["detail"] = r.detail;
  return out;
}

inline Json audit_to_json(const AuditReport& rep, const PosetCorpus& corpus) {
  const AuditSummary& s = rep.summary;
  Json counts = Json::object();
  for (std::size_t n = 1; n < rep.corpus_counts.size(); ++n) {
    counts[std::to_string(n)] = rep.corpus_counts[n];
  }
  Json out = {{"corpus_counts", counts},
              {"summary",
               {{"spaces", s.spaces},
                {"maps", s.maps},
                {"instances", s.instances},
                {"squares", s.squares},
                {"violations", s.violations},
                {"budget_exceeded", s.budget_exceeded},
                {"transported", s.transported},
                {"transport_failures", s.transport_failures},
                {"strict", s.strict},
                {"equal", s.equal},
                {"pairs", s.pairs},
                {"pairs_skipped", s.pairs_skipped}}}};
  Json cx = Json::array();
  for (const auto& r : rep.counterexamples) cx.push_back(audit_record_to_json(r, corpus.spaces));
  out["counterexamples"] = cx;
  if (!rep.records.empty()) {
    Json recs = Json::array();
    for (const auto& r : rep.records) recs.push_back(audit_record_to_json(r, corpus.spaces));
    out["records"] = recs;
  }
  return out;
}

inline Json corpus_to_json(const PosetCorpus& c) {
  Json spaces = Json::array();
  for (const auto& s : c.spaces) spaces.push_back(space_to_json(*s));
  Json counts = Json::object();
  std::size_t total = 0;
  for (std::size_t n = 1; n < c.counts.size(); ++n) {
    counts[std::to_string(n)] = c.counts[n];
    total += c.counts[n];
  }
  return {{"max_points", c.max_points}, {"counts", counts}, {"total", total}, {"spaces", spaces}};
}

inline PosetCorpus corpus_from_json(const Json& j) {
  PosetCorpus c;
  c.max_points = field(j, "max_points").get<std::size_t>();
  c.counts.assign(c.max_points + 1, 0);
  for (const auto& s : field(j, "spaces")) {
    auto sp = make_space(space_from_json(s));
    if (sp->size() > c.max_points) schema_error("corpus space larger than max_points");
    ++c.counts[sp->size()];
    c.spaces.push_back(std::move(sp));
  }
  return c;
}

/// "key.path: value" lines in key order.
inline void flatten(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out += prefix + ": " + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
  }
}

inline std::string to_text(const Json& j) {
  std::string out;
  flatten(j, "", out);
  return out;
}

}  // namespace fintop::io
