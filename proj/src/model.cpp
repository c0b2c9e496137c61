#include "vcia/model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace vcia {

using nlohmann::json;
using nlohmann::ordered_json;

std::string to_string(GsnKind kind) {
  switch (kind) {
    case GsnKind::Goal:
      return "goal";
    case GsnKind::Strategy:
      return "strategy";
    case GsnKind::Solution:
      return "solution";
    case GsnKind::Context:
      return "context";
  }
  return "goal";
}

GsnKind gsn_kind_from_string(const std::string& text) {
  if (text == "goal") return GsnKind::Goal;
  if (text == "strategy") return GsnKind::Strategy;
  if (text == "solution") return GsnKind::Solution;
  if (text == "context") return GsnKind::Context;
  throw SyntaxError("unknown GSN element kind '" + text + "'", 0,
                    "goal, strategy, solution or context");
}

std::string to_string(Annotation annotation) {
  switch (annotation) {
    case Annotation::Reuse:
      return "reuse";
    case Annotation::Recheck:
      return "recheck";
    case Annotation::Revise:
      return "revise";
  }
  return "reuse";
}

std::string to_string(const Diagnostic& diagnostic) {
  std::string severity =
      diagnostic.severity == Severity::Error ? "error" : "warning";
  return severity + " " + diagnostic.code + " at " + diagnostic.location +
         ": " + diagnostic.message;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) {
                       return d.severity == Severity::Error;
                     });
}

// ---------------------------------------------------------------------------
// Loading

namespace {

const json& expect(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw SyntaxError("missing key \"" + std::string(key) + "\" in " + where,
                      0);
  }
  return *it;
}

std::string expect_string(const json& j, const char* key,
                          const std::string& where) {
  const json& v = expect(j, key, where);
  if (!v.is_string()) {
    throw SyntaxError("\"" + std::string(key) + "\" must be a string in " +
                          where,
                      0);
  }
  return v.get<std::string>();
}

Formula parse_pc_field(const json& j, const FeatureSpace& space,
                       const std::string& where) {
  std::string text = "true";
  if (j.contains("pc")) {
    if (!j["pc"].is_string()) {
      throw SyntaxError("\"pc\" must be a string in " + where, 0);
    }
    text = j["pc"].get<std::string>();
  }
  try {
    return parse_pc(text, space);
  } catch (const UnknownFeatureError& e) {
    throw UnknownFeatureError(e.feature(), e.position(), where);
  } catch (const SyntaxError& e) {
    throw SyntaxError("bad presence condition", e.position(), e.expected(),
                      where);
  }
}

struct ElementList {
  VSet<std::string> elements;
  std::set<std::string> declared;  // pre-pruning ids, for reference checks
};

ElementList load_elements(const json& j, const FeatureSpace& space,
                          const std::string& where) {
  if (!j.is_array()) {
    throw SyntaxError("\"elements\" must be an array in " + where, 0);
  }
  ElementList out;
  std::size_t i = 0;
  for (const json& entry : j) {
    std::string loc = where + "[" + std::to_string(i++) + "]";
    std::string id = expect_string(entry, "id", loc);
    if (!out.declared.insert(id).second) {
      throw SyntaxError("duplicate element id '" + id + "' in " + where, 0);
    }
    out.elements.add(id, parse_pc_field(entry, space, loc));
  }
  return out;
}

std::vector<Edge> load_edges(const json& j, const FeatureSpace& space,
                             const char* src_key, const char* dst_key,
                             const std::set<std::string>& declared,
                             const std::string& where) {
  if (!j.is_array()) {
    throw SyntaxError("edge list must be an array in " + where, 0);
  }
  std::vector<Edge> out;
  std::size_t i = 0;
  for (const json& entry : j) {
    std::string loc = where + "[" + std::to_string(i++) + "]";
    Edge edge;
    edge.src = expect_string(entry, src_key, loc);
    edge.dst = expect_string(entry, dst_key, loc);
    edge.pc = parse_pc_field(entry, space, loc);
    for (const std::string* endpoint : {&edge.src, &edge.dst}) {
      if (!declared.count(*endpoint)) {
        throw DanglingReferenceError("edge at " + loc +
                                     " references unknown element '" +
                                     *endpoint + "'");
      }
    }
    out.push_back(std::move(edge));
  }
  return out;
}

SplInputs inputs_from_json(const json& j) {
  if (!j.is_object()) throw SyntaxError("model file must be a JSON object", 0);

  const json& features_json = expect(j, "features", "model");
  if (!features_json.is_array()) {
    throw SyntaxError("\"features\" must be an array of strings", 0);
  }
  std::vector<std::string> features;
  for (const json& f : features_json) {
    if (!f.is_string()) {
      throw SyntaxError("\"features\" must be an array of strings", 0);
    }
    features.push_back(f.get<std::string>());
  }

  FeatureSpace name_space(features, Formula::constant(true));
  Formula feature_model = Formula::constant(true);
  if (j.contains("feature_model")) {
    if (!j["feature_model"].is_string()) {
      throw SyntaxError("\"feature_model\" must be a string", 0);
    }
    try {
      feature_model = parse_pc(j["feature_model"].get<std::string>(),
                               name_space);
    } catch (const UnknownFeatureError& e) {
      throw UnknownFeatureError(e.feature(), e.position(), "feature_model");
    } catch (const SyntaxError& e) {
      throw SyntaxError("bad presence condition", e.position(), e.expected(),
                        "feature_model");
    }
  }

  SplInputs inputs;
  inputs.space = FeatureSpace(features, feature_model);

  const json& system_json = expect(j, "system", "model");
  const json& system_prime_json = expect(j, "system_prime", "model");
  const json& gsn_json = expect(j, "gsn", "model");

  auto load_system = [&](const json& sj, const std::string& where) {
    ElementList list = load_elements(expect(sj, "elements", where),
                                     inputs.space, where + ".elements");
    SysModel model;
    model.elements = std::move(list.elements);
    if (sj.contains("impact_edges")) {
      model.impact_edges =
          load_edges(sj["impact_edges"], inputs.space, "src", "dst",
                     list.declared, where + ".impact_edges");
    }
    return std::pair(std::move(model), std::move(list.declared));
  };

  auto [system, system_ids] = load_system(system_json, "system");
  auto [system_prime, system_prime_ids] =
      load_system(system_prime_json, "system_prime");
  inputs.system = std::move(system);
  inputs.system_prime = std::move(system_prime);

  ElementList gsn_list = load_elements(expect(gsn_json, "elements", "gsn"),
                                       inputs.space, "gsn.elements");
  inputs.gsn.elements = std::move(gsn_list.elements);
  {
    std::size_t i = 0;
    for (const json& entry : gsn_json["elements"]) {
      std::string loc = "gsn.elements[" + std::to_string(i++) + "]";
      std::string id = expect_string(entry, "id", loc);
      GsnKind kind = GsnKind::Goal;
      if (entry.contains("kind")) {
        if (!entry["kind"].is_string()) {
          throw SyntaxError("\"kind\" must be a string in " + loc, 0);
        }
        kind = gsn_kind_from_string(entry["kind"].get<std::string>());
      }
      inputs.gsn.kinds[id] = kind;
    }
  }
  if (gsn_json.contains("support_edges")) {
    inputs.gsn.support_edges =
        load_edges(gsn_json["support_edges"], inputs.space, "parent", "child",
                   gsn_list.declared, "gsn.support_edges");
  }

  if (j.contains("trace")) {
    const json& trace_json = j["trace"];
    if (!trace_json.is_array()) {
      throw SyntaxError("\"trace\" must be an array", 0);
    }
    std::size_t i = 0;
    for (const json& entry : trace_json) {
      std::string loc = "trace[" + std::to_string(i++) + "]";
      std::string sys = expect_string(entry, "sys", loc);
      std::string gsn = expect_string(entry, "gsn", loc);
      if (!system_ids.count(sys)) {
        throw DanglingReferenceError(
            "trace link at " + loc + " references unknown system element '" +
            sys + "'");
      }
      if (!gsn_list.declared.count(gsn)) {
        throw DanglingReferenceError(
            "trace link at " + loc + " references unknown GSN element '" +
            gsn + "'");
      }
      inputs.trace.links.add({sys, gsn},
                             parse_pc_field(entry, inputs.space, loc));
    }
  }

  if (j.contains("delta")) {
    const json& delta_json = j["delta"];
    if (!delta_json.is_object()) {
      throw SyntaxError("\"delta\" must be an object", 0);
    }
    auto load_delta_set = [&](const char* key,
                              const std::set<std::string>& universe,
                              const char* universe_name) {
      VSet<std::string> out;
      if (!delta_json.contains(key)) return out;
      const json& list = delta_json[key];
      if (!list.is_array()) {
        throw SyntaxError("\"delta." + std::string(key) +
                              "\" must be an array",
                          0);
      }
      std::size_t i = 0;
      for (const json& entry : list) {
        std::string loc =
            "delta." + std::string(key) + "[" + std::to_string(i++) + "]";
        std::string id = expect_string(entry, "id", loc);
        if (!universe.count(id)) {
          throw DanglingReferenceError(
              "delta entry at " + loc + " references unknown element '" + id +
              "' of " + universe_name);
        }
        out.add(id, parse_pc_field(entry, inputs.space, loc));
      }
      return out;
    };
    inputs.delta.added = load_delta_set("added", system_prime_ids,
                                        "system_prime");
    inputs.delta.deleted = load_delta_set("deleted", system_ids, "system");
    inputs.delta.modified = load_delta_set("modified", system_ids, "system");
  }

  return inputs;
}

}  // namespace

SplInputs parse_inputs_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SyntaxError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  return inputs_from_json(j);
}

SplInputs load_inputs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open model file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("error while reading model file '" + path.string() + "'");
  }
  return parse_inputs_text(buffer.str());
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

ordered_json elements_to_json(const VSet<std::string>& elements,
                              const std::map<std::string, GsnKind>* kinds) {
  ordered_json out = ordered_json::array();
  for (const auto& [id, pc] : elements.entries()) {
    ordered_json entry;
    entry["id"] = id;
    if (kinds) {
      auto it = kinds->find(id);
      entry["kind"] = to_string(it == kinds->end() ? GsnKind::Goal
                                                   : it->second);
    }
    entry["pc"] = render(pc);
    out.push_back(std::move(entry));
  }
  return out;
}

ordered_json edges_to_json(const std::vector<Edge>& edges,
                           const char* src_key, const char* dst_key) {
  ordered_json out = ordered_json::array();
  for (const Edge& edge : edges) {
    ordered_json entry;
    entry[src_key] = edge.src;
    entry[dst_key] = edge.dst;
    entry["pc"] = render(edge.pc);
    out.push_back(std::move(entry));
  }
  return out;
}

ordered_json delta_set_to_json(const VSet<std::string>& set) {
  ordered_json out = ordered_json::array();
  for (const auto& [id, pc] : set.entries()) {
    out.push_back(ordered_json{{"id", id}, {"pc", render(pc)}});
  }
  return out;
}

}  // namespace

std::string serialize_inputs(const SplInputs& inputs) {
  ordered_json j;
  j["features"] = inputs.space.features();
  j["feature_model"] = render(inputs.space.feature_model());
  j["system"] = ordered_json{
      {"elements", elements_to_json(inputs.system.elements, nullptr)},
      {"impact_edges",
       edges_to_json(inputs.system.impact_edges, "src", "dst")}};
  j["system_prime"] = ordered_json{
      {"elements", elements_to_json(inputs.system_prime.elements, nullptr)},
      {"impact_edges",
       edges_to_json(inputs.system_prime.impact_edges, "src", "dst")}};
  j["gsn"] = ordered_json{
      {"elements", elements_to_json(inputs.gsn.elements, &inputs.gsn.kinds)},
      {"support_edges",
       edges_to_json(inputs.gsn.support_edges, "parent", "child")}};
  ordered_json trace = ordered_json::array();
  for (const auto& [link, pc] : inputs.trace.links.entries()) {
    trace.push_back(ordered_json{
        {"sys", link.first}, {"gsn", link.second}, {"pc", render(pc)}});
  }
  j["trace"] = std::move(trace);
  j["delta"] = ordered_json{{"added", delta_set_to_json(inputs.delta.added)},
                            {"deleted", delta_set_to_json(inputs.delta.deleted)},
                            {"modified",
                             delta_set_to_json(inputs.delta.modified)}};
  return j.dump(2) + "\n";
}

std::string serialize_product(const ProductInputs& product,
                              const std::map<std::string, GsnKind>& kinds) {
  auto id_list = [](const std::set<std::string>& ids) {
    ordered_json out = ordered_json::array();
    for (const auto& id : ids) out.push_back(ordered_json{{"id", id}});
    return out;
  };
  auto edge_list = [](const std::set<std::pair<std::string, std::string>>& es,
                      const char* src_key, const char* dst_key) {
    ordered_json out = ordered_json::array();
    for (const auto& [src, dst] : es) {
      out.push_back(ordered_json{{src_key, src}, {dst_key, dst}});
    }
    return out;
  };

  ordered_json j;
  j["features"] = ordered_json::array();
  j["feature_model"] = "true";
  j["system"] = ordered_json{{"elements", id_list(product.sys_elements)},
                             {"impact_edges",
                              edge_list(product.sys_edges, "src", "dst")}};
  j["system_prime"] =
      ordered_json{{"elements", id_list(product.sys_prime_elements)},
                   {"impact_edges",
                    edge_list(product.sys_prime_edges, "src", "dst")}};
  ordered_json gsn_elements = ordered_json::array();
  for (const auto& id : product.gsn_elements) {
    auto it = kinds.find(id);
    gsn_elements.push_back(ordered_json{
        {"id", id},
        {"kind", to_string(it == kinds.end() ? GsnKind::Goal : it->second)}});
  }
  j["gsn"] = ordered_json{
      {"elements", std::move(gsn_elements)},
      {"support_edges",
       edge_list(product.gsn_support_edges, "parent", "child")}};
  ordered_json trace = ordered_json::array();
  for (const auto& [sys, gsn] : product.trace_links) {
    trace.push_back(ordered_json{{"sys", sys}, {"gsn", gsn}});
  }
  j["trace"] = std::move(trace);
  j["delta"] = ordered_json{{"added", id_list(product.delta.added)},
                            {"deleted", id_list(product.delta.deleted)},
                            {"modified", id_list(product.delta.modified)}};
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void check_edge_subsumption(const std::vector<Edge>& edges,
                            const VSet<std::string>& elements,
                            const FeatureSpace& space,
                            const std::string& where,
                            std::vector<Diagnostic>& out) {
  std::size_t i = 0;
  for (const Edge& edge : edges) {
    std::string loc = where + "[" + std::to_string(i++) + "]";
    Formula endpoints =
        fold_and(elements.pc_of(edge.src), elements.pc_of(edge.dst));
    if (!entails_under(edge.pc, endpoints, space)) {
      out.push_back({Severity::Error, diag::kPcSubsumption,
                     "edge " + edge.src + "->" + edge.dst + " has pc \"" +
                         render(edge.pc) +
                         "\" not subsumed by its endpoints' pcs",
                     loc});
    }
  }
}

void check_dead_elements(const VSet<std::string>& elements,
                         const FeatureSpace& space, const std::string& where,
                         std::vector<Diagnostic>& out) {
  for (const auto& [id, pc] : elements.entries()) {
    if (!sat_under(pc, space)) {
      out.push_back({Severity::Warning, diag::kDeadElement,
                     "element '" + id +
                         "' has an unsatisfiable presence condition",
                     where + "[" + id + "]"});
    }
  }
}

bool find_cycle(const std::string& node,
                const std::map<std::string, std::vector<std::string>>& adj,
                std::map<std::string, int>& color,
                std::vector<std::string>& cycle) {
  color[node] = 1;
  auto it = adj.find(node);
  if (it != adj.end()) {
    for (const std::string& next : it->second) {
      int c = color.count(next) ? color[next] : 0;
      if (c == 1) {
        cycle.push_back(next);
        cycle.push_back(node);
        return true;
      }
      if (c == 0 && find_cycle(next, adj, color, cycle)) {
        if (cycle.front() != cycle.back()) cycle.push_back(node);
        return true;
      }
    }
  }
  color[node] = 2;
  return false;
}

}  // namespace

std::vector<Diagnostic> validate(const SplInputs& inputs) {
  std::vector<Diagnostic> out;
  const FeatureSpace& space = inputs.space;

  bool vacuous = !sat_under(Formula::constant(true), space);
  if (vacuous) {
    out.push_back({Severity::Error, diag::kVacuousFeatureModel,
                   "no configuration satisfies the feature model",
                   "feature_model"});
  }

  // GSN support graph must be acyclic regardless of presence conditions.
  {
    std::map<std::string, std::vector<std::string>> adj;
    for (const Edge& edge : inputs.gsn.support_edges) {
      adj[edge.src].push_back(edge.dst);
    }
    std::map<std::string, int> color;
    for (const auto& [node, _] : adj) {
      if (color.count(node)) continue;
      std::vector<std::string> cycle;
      if (find_cycle(node, adj, color, cycle)) {
        std::string path;
        for (auto it = cycle.rbegin(); it != cycle.rend(); ++it) {
          if (!path.empty()) path += " -> ";
          path += *it;
        }
        out.push_back({Severity::Error, diag::kGsnCycle,
                       "support graph contains a cycle: " + path,
                       "gsn.support_edges"});
        break;
      }
    }
  }

  // Deleted elements must be gone from S'; added ones absent from S.
  for (const auto& [id, pc] : inputs.delta.deleted.entries()) {
    if (inputs.system_prime.elements.contains(id)) {
      out.push_back({Severity::Error, diag::kDeltaMembership,
                     "deleted element '" + id +
                         "' is still mapped in system_prime",
                     "delta.deleted[" + id + "]"});
    }
  }
  for (const auto& [id, pc] : inputs.delta.added.entries()) {
    if (inputs.system.elements.contains(id)) {
      out.push_back({Severity::Error, diag::kDeltaMembership,
                     "added element '" + id + "' is already mapped in system",
                     "delta.added[" + id + "]"});
    }
  }

  if (vacuous) return out;  // the remaining checks are vacuous under an
                            // unsatisfiable feature model

  check_edge_subsumption(inputs.system.impact_edges, inputs.system.elements,
                         space, "system.impact_edges", out);
  check_edge_subsumption(inputs.system_prime.impact_edges,
                         inputs.system_prime.elements, space,
                         "system_prime.impact_edges", out);
  check_edge_subsumption(inputs.gsn.support_edges, inputs.gsn.elements, space,
                         "gsn.support_edges", out);

  for (const auto& [link, pc] : inputs.trace.links.entries()) {
    Formula endpoints = fold_and(inputs.system.elements.pc_of(link.first),
                                 inputs.gsn.elements.pc_of(link.second));
    if (!entails_under(pc, endpoints, space)) {
      out.push_back({Severity::Error, diag::kPcSubsumption,
                     "link " + link.first + "->" + link.second + " has pc \"" +
                         render(pc) + "\" not subsumed by its endpoints' pcs",
                     "trace[" + link.first + "->" + link.second + "]"});
    }
  }

  auto check_delta_subsumption = [&](const VSet<std::string>& set,
                                     const VSet<std::string>& universe,
                                     const std::string& where) {
    for (const auto& [id, pc] : set.entries()) {
      if (!entails_under(pc, universe.pc_of(id), space)) {
        out.push_back({Severity::Error, diag::kPcSubsumption,
                       "delta entry '" + id + "' has pc \"" + render(pc) +
                           "\" not subsumed by the element's pc",
                       where + "[" + id + "]"});
      }
    }
  };
  check_delta_subsumption(inputs.delta.added, inputs.system_prime.elements,
                          "delta.added");
  check_delta_subsumption(inputs.delta.deleted, inputs.system.elements,
                          "delta.deleted");
  check_delta_subsumption(inputs.delta.modified, inputs.system.elements,
                          "delta.modified");

  // The three delta sets must index to pairwise-disjoint plain sets.
  auto check_overlap = [&](const VSet<std::string>& a, const char* a_name,
                           const VSet<std::string>& b, const char* b_name) {
    for (const auto& [id, pc_a] : a.entries()) {
      if (!b.contains(id)) continue;
      if (sat_under(fold_and(pc_a, b.pc_of(id)), space)) {
        out.push_back({Severity::Error, diag::kDeltaOverlap,
                       "element '" + id + "' is both " + a_name + " and " +
                           b_name + " in some valid configuration",
                       "delta"});
      }
    }
  };
  check_overlap(inputs.delta.added, "added", inputs.delta.deleted, "deleted");
  check_overlap(inputs.delta.added, "added", inputs.delta.modified,
                "modified");
  check_overlap(inputs.delta.deleted, "deleted", inputs.delta.modified,
                "modified");

  check_dead_elements(inputs.system.elements, space, "system.elements", out);
  check_dead_elements(inputs.system_prime.elements, space,
                      "system_prime.elements", out);
  check_dead_elements(inputs.gsn.elements, space, "gsn.elements", out);

  return out;
}

// ---------------------------------------------------------------------------
// Indexing

ProductInputs index_inputs(const SplInputs& inputs, const Config& rho) {
  if (!eval_checked(inputs.space.feature_model(), rho, inputs.space)) {
    throw InvalidConfigError(
        "configuration does not satisfy the feature model");
  }

  auto project_edges = [&](const std::vector<Edge>& edges) {
    std::set<std::pair<std::string, std::string>> out;
    for (const Edge& edge : edges) {
      if (eval(edge.pc, rho)) out.insert({edge.src, edge.dst});
    }
    return out;
  };

  ProductInputs product;
  product.sys_elements = index_config(inputs.system.elements, rho,
                                      inputs.space);
  product.sys_edges = project_edges(inputs.system.impact_edges);
  product.sys_prime_elements =
      index_config(inputs.system_prime.elements, rho, inputs.space);
  product.sys_prime_edges = project_edges(inputs.system_prime.impact_edges);
  product.gsn_elements = index_config(inputs.gsn.elements, rho, inputs.space);
  product.gsn_support_edges = project_edges(inputs.gsn.support_edges);
  product.trace_links = index_config(inputs.trace.links, rho, inputs.space);
  product.delta.added = index_config(inputs.delta.added, rho, inputs.space);
  product.delta.deleted = index_config(inputs.delta.deleted, rho,
                                       inputs.space);
  product.delta.modified =
      index_config(inputs.delta.modified, rho, inputs.space);
  return product;
}

}  // namespace vcia
