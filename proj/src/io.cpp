#include "wquiv/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "wquiv/error.hpp"

namespace wquiv {

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& message) {
  throw Error("schema", path + ": " + message);
}

const Json& require(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) field_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) field_error(path, std::string("missing field '") + key + "'");
  return *it;
}

int require_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) field_error(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) field_error(path, "out of range");
  return static_cast<int>(v);
}

Count count_from_json(const Json& j, const std::string& path) {
  Count c;
  if (j.is_number_unsigned() || j.is_number_integer()) {
    c = Count(j.get<std::int64_t>());
  } else if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) field_error(path, "not a count: " + s);
    c = Count(s);
  } else {
    field_error(path, "expected a count");
  }
  if (c < 1) field_error(path, "count must be at least 1");
  return c;
}

Json element_json(const GroupElement& g) { return format_element(g); }

}  // namespace

Json group_to_json(const GroupKind& kind) {
  Json j;
  switch (kind.tag()) {
    case GroupTag::trivial:
      j["kind"] = "trivial";
      break;
    case GroupTag::cyclic:
      j["kind"] = "cyclic";
      j["modulus"] = kind.modulus();
      break;
    case GroupTag::free_abelian:
      j["kind"] = "free-abelian";
      j["rank"] = kind.rank();
      break;
    case GroupTag::free:
      j["kind"] = "free";
      j["rank"] = kind.rank();
      break;
  }
  return j;
}

GroupKind parse_group_spec(std::string_view text) {
  const auto colon = text.find(':');
  const std::string name(text.substr(0, colon));
  auto param = [&]() -> int {
    if (colon == std::string_view::npos) throw Error("parse", "group '" + name + "' needs a parameter, e.g. " + name + ":2");
    const std::string digits(text.substr(colon + 1));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw Error("parse", "bad group parameter in '" + std::string(text) + "'");
    }
    return std::stoi(digits);
  };
  if (name == "trivial" && colon == std::string_view::npos) return GroupKind::trivial();
  if (name == "cyclic") return GroupKind::cyclic(param());
  if (name == "free-abelian") return GroupKind::free_abelian(param());
  if (name == "free") return GroupKind::free(param());
  throw Error("parse", "unknown group '" + std::string(text) + "'");
}

GroupKind group_from_json(const Json& j) {
  const Json& kind = require(j, "kind", "group");
  if (!kind.is_string()) field_error("group.kind", "expected a string");
  const auto name = kind.get<std::string>();
  try {
    if (name == "trivial") return GroupKind::trivial();
    if (name == "cyclic") return GroupKind::cyclic(require_int(require(j, "modulus", "group"), "group.modulus"));
    if (name == "free-abelian") return GroupKind::free_abelian(require_int(require(j, "rank", "group"), "group.rank"));
    if (name == "free") return GroupKind::free(require_int(require(j, "rank", "group"), "group.rank"));
  } catch (const Error& e) {
    if (e.code() == "schema") throw;
    field_error("group", e.what());
  }
  field_error("group.kind", "unknown group kind '" + name + "'");
}

Json quiver_to_json(const WeightedQuiver& q, bool with_ids) {
  Json j;
  j["group"] = group_to_json(q.group());
  j["vertices"] = Json::array();
  for (const auto& v : q.vertices()) j["vertices"].push_back({{"id", v.id}, {"frozen", v.frozen}});
  j["arrows"] = Json::array();
  if (with_ids) {
    for (const auto& a : q.arrows()) {
      Json x{{"id", a.id}, {"src", a.src}, {"dst", a.dst}, {"weight", format_element(a.weight)}};
      if (a.multiplicity != 1) x["count"] = count_to_json(a.multiplicity);
      j["arrows"].push_back(std::move(x));
    }
  } else {
    for (const auto& c : arrow_classes(q)) {
      Json x{{"src", c.src}, {"dst", c.dst}, {"weight", c.weight}};
      if (c.count != 1) x["count"] = count_to_json(c.count);
      j["arrows"].push_back(std::move(x));
    }
  }
  return j;
}

WeightedQuiver quiver_from_json(const Json& j) {
  if (!j.is_object()) field_error("<root>", "expected an object");
  const GroupKind kind = group_from_json(require(j, "group", "<root>"));
  WeightedQuiver q(kind);
  const Json& vertices = require(j, "vertices", "<root>");
  if (!vertices.is_array()) field_error("vertices", "expected an array");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string path = "vertices[" + std::to_string(i) + "]";
    const int id = require_int(require(vertices[i], "id", path), path + ".id");
    bool frozen = false;
    if (auto it = vertices[i].find("frozen"); it != vertices[i].end()) {
      if (!it->is_boolean()) field_error(path + ".frozen", "expected a boolean");
      frozen = it->get<bool>();
    }
    if (q.has_vertex(id)) field_error(path + ".id", "duplicate vertex " + std::to_string(id));
    q.add_vertex(id, frozen);
  }
  const Json& arrows = require(j, "arrows", "<root>");
  if (!arrows.is_array()) field_error("arrows", "expected an array");
  int next_id = 1;
  for (const auto& a : arrows) {
    if (a.is_object() && a.contains("id") && a["id"].is_number_integer()) {
      next_id = std::max(next_id, static_cast<int>(a["id"].get<std::int64_t>()) + 1);
    }
  }
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const std::string path = "arrows[" + std::to_string(i) + "]";
    const Json& a = arrows[i];
    const int id = a.is_object() && a.contains("id") ? require_int(a["id"], path + ".id") : next_id++;
    const int src = require_int(require(a, "src", path), path + ".src");
    const int dst = require_int(require(a, "dst", path), path + ".dst");
    const Json& weight = require(a, "weight", path);
    if (!weight.is_string()) field_error(path + ".weight", "expected a string");
    GroupElement w;
    try {
      w = parse_element(kind, weight.get<std::string>());
    } catch (const Error& e) {
      throw Error("parse", "arrow " + std::to_string(id) + " (" + path + ".weight): " + e.what(),
                  std::to_string(id));
    }
    Count count = 1;
    if (auto it = a.find("count"); it != a.end()) count = count_from_json(*it, path + ".count");
    if (q.find_arrow(id) != nullptr) field_error(path + ".id", "duplicate arrow id " + std::to_string(id));
    q.add_arrow_with_id(id, src, dst, w, count);
  }
  require_valid(q);
  return q;
}

Json potential_to_json(const Series& s) {
  Json j = Json::array();
  for (const auto& [w, c] : s.terms) j.push_back({{"cycle", w}, {"coeff", format_rational(c)}});
  return j;
}

Series potential_from_json(const Json& j) {
  if (!j.is_array()) field_error("potential", "expected an array");
  Series s;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = "potential[" + std::to_string(i) + "]";
    const Json& cycle = require(j[i], "cycle", path);
    if (!cycle.is_array() || cycle.empty()) field_error(path + ".cycle", "expected a non-empty array of arrow ids");
    Word w;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      w.push_back(require_int(cycle[k], path + ".cycle[" + std::to_string(k) + "]"));
    }
    Rational c = 1;
    if (auto it = j[i].find("coeff"); it != j[i].end()) {
      if (it->is_number_integer()) {
        c = Rational(it->get<std::int64_t>());
      } else if (it->is_string()) {
        try {
          c = parse_rational(it->get<std::string>());
        } catch (const Error& e) {
          field_error(path + ".coeff", e.what());
        }
      } else {
        field_error(path + ".coeff", "expected a string \"p/q\" or an integer");
      }
    }
    s.add(w, c);
  }
  return s;
}

Json quiver_file_to_json(const QuiverFile& f) {
  Json j = quiver_to_json(f.quiver, f.potential.has_value());
  if (f.potential) j["potential"] = potential_to_json(*f.potential);
  return j;
}

QuiverFile quiver_file_from_json(const Json& j) {
  QuiverFile f{quiver_from_json(j), std::nullopt};
  if (auto it = j.find("potential"); it != j.end()) {
    f.potential = potential_from_json(*it);
    for (const auto& [w, c] : f.potential->terms) {
      for (int id : w) {
        if (f.quiver.find_arrow(id) == nullptr) {
          field_error("potential", "term refers to unknown arrow " + std::to_string(id));
        }
      }
    }
  }
  return f;
}

QuiverFile parse_quiver_file(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error("parse", "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + e.what());
  }
  return quiver_file_from_json(j);
}

QuiverFile load_quiver_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_quiver_file(buffer.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what(), e.witness());
  }
}

WeightedQuiver load_quiver(const std::filesystem::path& path) { return load_quiver_file(path).quiver; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string serialize_quiver(const WeightedQuiver& q) { return dump(quiver_to_json(q)); }

void save_quiver_file(const QuiverFile& f, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("io", "cannot write " + path.string());
  out << dump(quiver_file_to_json(f));
}

void save_quiver(const WeightedQuiver& q, const std::filesystem::path& path) {
  save_quiver_file({q, std::nullopt}, path);
}

Json count_to_json(const Count& c) {
  if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(c);
  }
  return count_to_string(c);
}

Json error_to_json(const std::string& code, const std::string& message, const std::string& witness) {
  Json j{{"code", code}, {"message", message}};
  if (!witness.empty()) j["witness"] = witness;
  return j;
}

Json gauge_to_json(const GaugeFunction& g) {
  Json j = Json::object();
  for (const auto& [v, x] : g) j[std::to_string(v)] = element_json(x);
  return j;
}

GaugeFunction gauge_from_json(const GroupKind& kind, const Json& j) {
  if (!j.is_object()) field_error("gauge", "expected an object");
  GaugeFunction g;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) field_error("gauge." + key, "expected an element string");
    int v = 0;
    try {
      v = std::stoi(key);
    } catch (const std::exception&) {
      field_error("gauge." + key, "vertex keys must be integers");
    }
    g.emplace(v, parse_element(kind, value.get<std::string>()));
  }
  return g;
}

Json walk_to_json(const WalkCycle& c) {
  Json steps = Json::array();
  for (const auto& s : c.steps) steps.push_back({{"arrow", s.arrow}, {"forward", s.forward}});
  return {{"start", c.start}, {"steps", steps}};
}

Json two_cycles_to_json(const WeightedQuiver& q) {
  Json j = Json::array();
  for (const auto& t : two_cycles(q)) {
    const Arrow& a = q.arrow(t.first);
    j.push_back({{"first", t.first},
                 {"second", t.second},
                 {"vertices", {a.src, a.dst}},
                 {"weight", format_element(a.weight * q.arrow(t.second).weight)},
                 {"trivial", t.trivial}});
  }
  return j;
}

Json cancelled_to_json(const std::vector<CancelledPair>& cancelled) {
  Json j = Json::array();
  for (const auto& c : cancelled) {
    j.push_back({{"first", c.first}, {"second", c.second}, {"count", count_to_json(c.count)}});
  }
  return j;
}

Json c_vectors_to_json(const CVectorMatrix& m) {
  const auto coherence = is_sign_coherent(m);
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    Json entries = Json::array();
    for (const auto& x : m.entries[r]) entries.push_back(count_to_json(x));
    rows.push_back({{"vertex", m.rows[r]}, {"entries", entries}, {"coherent", static_cast<bool>(coherence.rows[r])}});
  }
  Json j{{"columns", m.cols}, {"rows", rows}, {"sign_coherent", coherence.coherent}};
  if (coherence.offending_row) j["offending_row"] = *coherence.offending_row;
  return j;
}

Json nondegeneracy_to_json(const NondegeneracyVerdict& v) {
  Json j{{"depth", v.depth}, {"states", v.states}, {"clean", v.clean()}};
  if (v.counterexample) {
    const auto& c = *v.counterexample;
    j["counterexample"] = {{"sequence", c.sequence},
                           {"two_cycle", {{"first", c.offending.first}, {"second", c.offending.second}}},
                           {"quiver", quiver_to_json(c.quiver, true)}};
  }
  return j;
}

Json sign_coherence_to_json(const SignCoherenceCase& c) {
  Json j{{"name", c.name},
         {"max_length", c.max_length},
         {"states", c.states},
         {"frozen_arrow_states", c.frozen_arrow_states},
         {"incoherent_states", c.incoherent_states},
         {"passed", c.passed()}};
  if (c.first_failure) j["first_failure"] = *c.first_failure;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

Json equivalence_to_json(const EquivalenceResult& r) {
  static const char* names[] = {"equivalent", "not-equivalent", "undecided"};
  Json j{{"outcome", names[static_cast<int>(r.outcome)]}};
  if (r.witness) j["gauge"] = gauge_to_json(*r.witness);
  if (r.distinguishing_cycle) {
    j["cycle"] = walk_to_json(*r.distinguishing_cycle);
    j["weight_a"] = element_json(*r.weight_a);
    j["weight_b"] = element_json(*r.weight_b);
  }
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

Json membership_to_json(const CnMembership& m) {
  if (m.member) return {{"member", true}, {"t", element_json(*m.t)}, {"cycle", walk_to_json(*m.cycle)}};
  return {{"member", false}, {"violated", m.violated}, {"witness", m.witness}};
}

Json tame_verdict_to_json(const TameVerdict& v) {
  static const char* names[] = {"gauge-trivial", "cn-member", "unknown"};
  Json j{{"verdict", names[static_cast<int>(v.kind)]}};
  if (v.witness) j["gauge"] = gauge_to_json(*v.witness);
  if (v.t) j["t"] = element_json(*v.t);
  if (v.cycle) j["cycle"] = walk_to_json(*v.cycle);
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

Json canonicalization_to_json(const Canonicalization& c) {
  return {{"sequence", c.sequence}, {"t", element_json(c.t)}, {"quiver", quiver_to_json(c.quiver)}};
}

Json automorphism_to_json(const GradedAutomorphism& phi) {
  Json j = Json::object();
  for (const auto& [id, image] : phi) j[std::to_string(id)] = potential_to_json(image);
  return j;
}

Json split_to_json(const SplitResult& s) {
  Json pairs = Json::array();
  for (const auto& p : s.pairs) pairs.push_back({{"forward", p.forward}, {"backward", p.backward}});
  Json reduced = quiver_to_json(s.reduced_quiver, true);
  reduced["potential"] = potential_to_json(s.reduced_potential);
  return {{"truncation", s.truncation},
          {"iterations", s.iterations},
          {"trivial_pairs", pairs},
          {"trivial_potential", potential_to_json(s.trivial_potential)},
          {"reduced", reduced},
          {"automorphism", automorphism_to_json(s.automorphism)}};
}

}  // namespace wquiv
