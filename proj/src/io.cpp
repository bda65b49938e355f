#include "levelplan/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace levelplan::io {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

}  // namespace

SchemaError::SchemaError(std::vector<std::string> failures)
    : Error("schema violation: " + join(failures)), failures_(std::move(failures)) {}

std::string kind_of(const Instance& i) {
  switch (i.index()) {
    case 0: return "level";
    case 1: return "tlevel";
    case 2: return "cl";
    case 3: return "sefe";
    default: return "betweenness";
  }
}

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    auto close = msg.find("] ");
    if (msg.rfind("[json.exception", 0) == 0 && close != std::string::npos) msg = msg.substr(close + 2);
    throw ParseError(msg + " (byte " + std::to_string(e.byte) + ")");
  }
}

/// Collects every schema failure instead of stopping at the first.
class Reader {
 public:
  std::vector<std::string> failures;

  void fail(const std::string& path, const std::string& what) { failures.push_back((path.empty() ? "/" : path) + ": " + what); }

  bool object(const json& j, const std::string& path, const std::set<std::string>& allowed,
              const std::set<std::string>& required) {
    if (!j.is_object()) {
      fail(path, "expected object");
      return false;
    }
    for (const auto& [k, v] : j.items()) {
      if (!allowed.count(k)) fail(path + "/" + k, "unknown field");
    }
    for (const auto& k : required) {
      if (!j.contains(k)) fail(path + "/" + k, "missing field");
    }
    return true;
  }

  std::string str(const json& j, const std::string& path) {
    if (!j.is_string()) {
      fail(path, "expected string");
      return {};
    }
    return j.get<std::string>();
  }

  int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) {
      fail(path, "expected integer");
      return 0;
    }
    auto v = j.get<long long>();
    if (v < -1000000000LL || v > 1000000000LL) {
      fail(path, "integer out of range");
      return 0;
    }
    return static_cast<int>(v);
  }

  const json* array(const json& j, const std::string& path) {
    if (!j.is_array()) {
      fail(path, "expected array");
      return nullptr;
    }
    return &j;
  }

  std::vector<Edge> edges(const json& j, const std::string& path) {
    std::vector<Edge> out;
    if (!array(j, path)) return out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string p = path + "/" + std::to_string(i);
      if (!j[i].is_array() || j[i].size() != 2) {
        fail(p, "expected a pair of vertex ids");
        continue;
      }
      out.push_back(Edge{str(j[i][0], p + "/0"), str(j[i][1], p + "/1")});
    }
    return out;
  }

  std::vector<std::string> strings(const json& j, const std::string& path) {
    std::vector<std::string> out;
    if (!array(j, path)) return out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(str(j[i], path + "/" + std::to_string(i)));
    return out;
  }

  TreeNode tree(const json& j, const std::string& path) {
    if (!j.is_object()) {
      fail(path, "expected tree node object");
      return {};
    }
    if (j.contains("leaf")) {
      object(j, path, {"leaf"}, {"leaf"});
      return TreeNode::make_leaf(str(j["leaf"], path + "/leaf"));
    }
    object(j, path, {"node", "children"}, {"node", "children"});
    TreeNode n;
    if (j.contains("node")) n.id = str(j["node"], path + "/node");
    if (j.contains("children") && array(j["children"], path + "/children")) {
      for (std::size_t i = 0; i < j["children"].size(); ++i)
        n.children.push_back(tree(j["children"][i], path + "/children/" + std::to_string(i)));
    }
    return n;
  }

  LevelGraph graph(const json& j) {
    LevelGraph g;
    if (j.contains("levels")) g.levels = integer(j["levels"], "/levels");
    if (j.contains("vertices") && array(j["vertices"], "/vertices")) {
      for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
        const std::string p = "/vertices/" + std::to_string(i);
        const json& v = j["vertices"][i];
        if (!object(v, p, {"id", "level"}, {"id", "level"})) continue;
        Vertex x;
        if (v.contains("id")) x.id = str(v["id"], p + "/id");
        if (v.contains("level")) x.level = integer(v["level"], p + "/level");
        g.vertices.push_back(x);
      }
    }
    if (j.contains("edges")) g.edges = edges(j["edges"], "/edges");
    if (j.contains("metadata") && object(j["metadata"], "/metadata", {"original_levels"}, {})) {
      const json& m = j["metadata"];
      if (m.contains("original_levels") && array(m["original_levels"], "/metadata/original_levels")) {
        for (std::size_t i = 0; i < m["original_levels"].size(); ++i)
          g.original_levels.push_back(integer(m["original_levels"][i], "/metadata/original_levels/" + std::to_string(i)));
      }
    }
    return g;
  }

  ReductionProvenance provenance(const json& j) {
    ReductionProvenance p;
    if (!j.is_object()) {
      fail("/provenance", "expected object");
      return p;
    }
    for (const auto& [id, entry] : j.items()) {
      const std::string path = "/provenance/" + id;
      if (!object(entry, path, {"role", "source"}, {"role", "source"})) continue;
      ProvenanceEntry e;
      if (entry.contains("role")) e.role = str(entry["role"], path + "/role");
      if (entry.contains("source")) {
        if (!entry["source"].is_object()) {
          fail(path + "/source", "expected object");
        } else {
          for (const auto& [k, v] : entry["source"].items()) e.source[k] = str(v, path + "/source/" + k);
        }
      }
      p.entries[id] = e;
    }
    return p;
  }
};

const std::set<std::string> kGraphFields = {"kind", "levels", "vertices", "edges", "metadata", "provenance"};

json tree_json(const TreeNode& t) {
  if (t.leaf) return json{{"leaf", t.id}};
  json children = json::array();
  for (const auto& c : t.children) children.push_back(tree_json(c));
  return json{{"node", t.id}, {"children", children}};
}

TreeNode canonical_tree(TreeNode t) {
  for (auto& c : t.children) c = canonical_tree(std::move(c));
  std::vector<std::pair<std::string, TreeNode>> keyed;
  for (auto& c : t.children) keyed.push_back({tree_json(c).dump(), std::move(c)});
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  t.children.clear();
  for (auto& [k, c] : keyed) t.children.push_back(std::move(c));
  return t;
}

void canonical_graph(LevelGraph& g) {
  std::sort(g.vertices.begin(), g.vertices.end(), [](const Vertex& a, const Vertex& b) {
    return a.id < b.id || (a.id == b.id && a.level < b.level);
  });
  for (auto& e : g.edges) e = canonical(e);
  std::sort(g.edges.begin(), g.edges.end());
}

json edges_json(const std::vector<Edge>& edges) {
  json out = json::array();
  for (const auto& e : edges) out.push_back(json::array({e.u, e.v}));
  return out;
}

json graph_json(const LevelGraph& g, const std::string& kind) {
  json j;
  j["kind"] = kind;
  j["levels"] = g.levels;
  j["vertices"] = json::array();
  for (const auto& v : g.vertices) j["vertices"].push_back(json{{"id", v.id}, {"level", v.level}});
  j["edges"] = edges_json(g.edges);
  if (!g.original_levels.empty()) j["metadata"] = json{{"original_levels", g.original_levels}};
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

Document canonicalize(Document d) {
  std::visit(
      [](auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LevelGraph>) {
          canonical_graph(x);
        } else if constexpr (std::is_same_v<T, TLevelInstance>) {
          canonical_graph(x.graph);
          for (auto& t : x.trees) t.root = canonical_tree(std::move(t.root));
          std::stable_sort(x.trees.begin(), x.trees.end(),
                           [](const ConstraintTree& a, const ConstraintTree& b) { return a.level < b.level; });
        } else if constexpr (std::is_same_v<T, CLInstance>) {
          canonical_graph(x.graph);
          x.hierarchy.root = canonical_tree(std::move(x.hierarchy.root));
        } else if constexpr (std::is_same_v<T, SefeInstance>) {
          std::sort(x.vertices.begin(), x.vertices.end());
          for (auto* edges : {&x.e1, &x.e2}) {
            for (auto& e : *edges) e = canonical(e);
            std::sort(edges->begin(), edges->end());
          }
        } else {
          std::sort(x.elements.begin(), x.elements.end());
          std::sort(x.triples.begin(), x.triples.end());
        }
      },
      d.instance);
  return d;
}

Document parse_document(const std::string& text) {
  json j = parse_json(text);
  Reader r;
  if (!j.is_object()) throw SchemaError({"/: expected object"});
  if (!j.contains("kind") || !j["kind"].is_string()) throw SchemaError({"/kind: missing or not a string"});
  const std::string kind = j["kind"].get<std::string>();

  Document d;
  if (kind == "level" || kind == "tlevel" || kind == "cl") {
    std::set<std::string> allowed = kGraphFields;
    std::set<std::string> required = {"kind", "levels", "vertices", "edges"};
    if (kind == "tlevel") {
      allowed.insert("trees");
      required.insert("trees");
    }
    if (kind == "cl") {
      allowed.insert("clusters");
      required.insert("clusters");
    }
    r.object(j, "", allowed, required);
    LevelGraph g = r.graph(j);
    if (kind == "level") {
      d.instance = normalize_levels(std::move(g));
    } else if (kind == "tlevel") {
      TLevelInstance t;
      t.graph = std::move(g);
      if (j.contains("trees") && r.array(j["trees"], "/trees")) {
        for (std::size_t i = 0; i < j["trees"].size(); ++i) {
          const std::string p = "/trees/" + std::to_string(i);
          const json& e = j["trees"][i];
          if (!r.object(e, p, {"level", "tree"}, {"level", "tree"})) continue;
          ConstraintTree ct;
          if (e.contains("level")) ct.level = r.integer(e["level"], p + "/level");
          if (e.contains("tree")) ct.root = r.tree(e["tree"], p + "/tree");
          t.trees.push_back(std::move(ct));
        }
      }
      if (r.failures.empty()) t = normalize_trees(normalize_levels(std::move(t)));
      d.instance = std::move(t);
    } else {
      CLInstance c;
      c.graph = std::move(g);
      if (j.contains("clusters")) c.hierarchy.root = r.tree(j["clusters"], "/clusters");
      if (r.failures.empty()) {
        c = normalize_levels(std::move(c));
        c.hierarchy = normalize_trees(c.hierarchy);
      }
      d.instance = std::move(c);
    }
  } else if (kind == "sefe") {
    r.object(j, "", {"kind", "vertices", "e1", "e2", "provenance"}, {"kind", "vertices", "e1", "e2"});
    SefeInstance s;
    if (j.contains("vertices")) s.vertices = r.strings(j["vertices"], "/vertices");
    if (j.contains("e1")) s.e1 = r.edges(j["e1"], "/e1");
    if (j.contains("e2")) s.e2 = r.edges(j["e2"], "/e2");
    d.instance = std::move(s);
  } else if (kind == "betweenness") {
    r.object(j, "", {"kind", "elements", "triples"}, {"kind", "elements", "triples"});
    BetweennessInstance b;
    if (j.contains("elements")) b.elements = r.strings(j["elements"], "/elements");
    if (j.contains("triples") && r.array(j["triples"], "/triples")) {
      for (std::size_t i = 0; i < j["triples"].size(); ++i) {
        const std::string p = "/triples/" + std::to_string(i);
        auto parts = r.strings(j["triples"][i], p);
        if (parts.size() != 3) {
          if (j["triples"][i].is_array()) r.fail(p, "expected three elements");
          continue;
        }
        b.triples.push_back({parts[0], parts[1], parts[2]});
      }
    }
    d.instance = std::move(b);
  } else {
    throw SchemaError({"/kind: unknown kind \"" + kind + "\""});
  }
  if (j.contains("provenance")) d.provenance = r.provenance(j["provenance"]);
  if (!r.failures.empty()) throw SchemaError(r.failures);
  return canonicalize(std::move(d));
}

std::string serialize(const Document& doc) {
  Document d = canonicalize(doc);
  json j;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LevelGraph>) {
          j = graph_json(x, "level");
        } else if constexpr (std::is_same_v<T, TLevelInstance>) {
          j = graph_json(x.graph, "tlevel");
          j["trees"] = json::array();
          for (const auto& t : x.trees) j["trees"].push_back(json{{"level", t.level}, {"tree", tree_json(t.root)}});
        } else if constexpr (std::is_same_v<T, CLInstance>) {
          j = graph_json(x.graph, "cl");
          j["clusters"] = tree_json(x.hierarchy.root);
        } else if constexpr (std::is_same_v<T, SefeInstance>) {
          j["kind"] = "sefe";
          j["vertices"] = x.vertices;
          j["e1"] = edges_json(x.e1);
          j["e2"] = edges_json(x.e2);
        } else {
          j["kind"] = "betweenness";
          j["elements"] = x.elements;
          j["triples"] = json::array();
          for (const auto& t : x.triples) j["triples"].push_back(json::array({t[0], t[1], t[2]}));
        }
      },
      d.instance);
  if (d.provenance) {
    json p = json::object();
    for (const auto& [id, e] : d.provenance->entries) {
      json src = json::object();
      for (const auto& [k, v] : e.source) src[k] = v;
      p[id] = json{{"role", e.role}, {"source", src}};
    }
    j["provenance"] = p;
  }
  return dump(j);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

Document load(const std::string& path) { return parse_document(read_file(path)); }

std::string serialize_ordering(const LevelOrdering& o) { return dump(json{{"orderings", o.levels}}); }

LevelOrdering parse_ordering(const std::string& text) {
  json j = parse_json(text);
  Reader r;
  LevelOrdering o;
  if (r.object(j, "", {"orderings"}, {"orderings"}) && j.contains("orderings") && r.array(j["orderings"], "/orderings")) {
    for (std::size_t i = 0; i < j["orderings"].size(); ++i)
      o.levels.push_back(r.strings(j["orderings"][i], "/orderings/" + std::to_string(i)));
  }
  if (!r.failures.empty()) throw SchemaError(r.failures);
  return o;
}

std::string serialize_order(const std::vector<std::string>& order) { return dump(json{{"order", order}}); }

std::vector<std::string> parse_order(const std::string& text) {
  json j = parse_json(text);
  Reader r;
  std::vector<std::string> out;
  if (r.object(j, "", {"order"}, {"order"}) && j.contains("order")) out = r.strings(j["order"], "/order");
  if (!r.failures.empty()) throw SchemaError(r.failures);
  return out;
}

std::string serialize_rotations(const SefeWitness& w) {
  json systems = json::array();
  for (const auto* r : {&w.first, &w.second}) {
    json m = json::object();
    for (const auto& [v, ids] : r->order) m[v] = ids;
    systems.push_back(m);
  }
  return dump(json{{"rotations", systems}});
}

SefeWitness parse_rotations(const std::string& text) {
  json j = parse_json(text);
  Reader r;
  SefeWitness w;
  if (r.object(j, "", {"rotations"}, {"rotations"}) && j.contains("rotations") && r.array(j["rotations"], "/rotations")) {
    if (j["rotations"].size() != 2) r.fail("/rotations", "expected two rotation systems");
    for (std::size_t i = 0; i < j["rotations"].size() && i < 2; ++i) {
      const std::string p = "/rotations/" + std::to_string(i);
      if (!j["rotations"][i].is_object()) {
        r.fail(p, "expected object");
        continue;
      }
      auto& sys = i == 0 ? w.first : w.second;
      for (const auto& [v, ids] : j["rotations"][i].items()) sys.order[v] = r.strings(ids, p + "/" + v);
    }
  }
  if (!r.failures.empty()) throw SchemaError(r.failures);
  return w;
}

namespace {

json integer_json(const boost::multiprecision::cpp_int& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return json(static_cast<long long>(v));
  return json(v.str());
}

std::string fraction(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace

std::string serialize_drawing(const LevelDrawing& d) {
  json coords = json::object();
  for (const auto& [id, p] : d.coords) {
    coords[id] = json::array({integer_json(numerator(p.x)), integer_json(denominator(p.x)), integer_json(numerator(p.y)),
                              integer_json(denominator(p.y))});
  }
  json regions = json::object();
  for (const auto& [id, poly] : d.regions) {
    json pts = json::array();
    for (const auto& p : poly) pts.push_back(json::array({fraction(p.x), fraction(p.y)}));
    regions[id] = pts;
  }
  return dump(json{{"coords", coords}, {"regions", regions}});
}

std::string digest(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace levelplan::io
