#ifndef VCIA_MODEL_HPP
#define VCIA_MODEL_HPP

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vcia/pc.hpp"
#include "vcia/vset.hpp"

namespace vcia {

/// GSN element kinds.
enum class GsnKind { Goal, Strategy, Solution, Context };

std::string to_string(GsnKind kind);
GsnKind gsn_kind_from_string(const std::string& text);

/// Impact-assessment verdict for a GSN element.
enum class Annotation { Reuse, Recheck, Revise };

std::string to_string(Annotation annotation);

/// Directed edge with a presence condition. Used both for system impact
/// edges (src may impact dst when changed) and GSN support edges
/// (src = parent is supported by dst = child).
struct Edge {
  std::string src;
  std::string dst;
  Formula pc;
};

/// Annotated system model: elements with PCs plus the impact relation.
struct SysModel {
  VSet<std::string> elements;
  std::vector<Edge> impact_edges;
};

/// Annotated GSN safety case.
struct GsnModel {
  VSet<std::string> elements;
  std::map<std::string, GsnKind> kinds;
  std::vector<Edge> support_edges;
};

/// A traceability link from a system element to a GSN element.
using TraceLink = std::pair<std::string, std::string>;

/// Annotated traceability relation between system and GSN elements.
struct TraceRel {
  VSet<TraceLink> links;
};

/// The change delta: added, deleted, and modified system elements.
struct Delta {
  VSet<std::string> added;
  VSet<std::string> deleted;
  VSet<std::string> modified;
};

/// Complete analysis input: feature space, both system versions, the safety
/// case, the traceability relation, and the delta.
struct SplInputs {
  FeatureSpace space;
  SysModel system;
  SysModel system_prime;
  GsnModel gsn;
  TraceRel trace;
  Delta delta;
};

/// The lifted analysis result: (GSN element, annotation) pairs with PCs.
/// For every valid configuration and present element, exactly one
/// annotation's PC holds.
using AnnotatedResult = VSet<std::pair<std::string, Annotation>>;

enum class Severity { Error, Warning };

/// A validation finding.
struct Diagnostic {
  Severity severity;
  std::string code;
  std::string message;
  std::string location;
};

std::string to_string(const Diagnostic& diagnostic);

/// Diagnostic codes emitted by validate().
namespace diag {
inline constexpr const char* kVacuousFeatureModel = "VACUOUS_FEATURE_MODEL";
inline constexpr const char* kPcSubsumption = "PC_SUBSUMPTION";
inline constexpr const char* kGsnCycle = "GSN_CYCLE";
inline constexpr const char* kDeltaOverlap = "DELTA_OVERLAP";
inline constexpr const char* kDeltaMembership = "DELTA_MEMBERSHIP";
inline constexpr const char* kDeadElement = "DEAD_ELEMENT";
}  // namespace diag

/// Loads a model file (UTF-8 JSON, see README for the schema). Throws
/// IoError, SyntaxError, UnknownFeatureError, or DanglingReferenceError.
SplInputs load_inputs(const std::filesystem::path& path);

/// Same as load_inputs but from in-memory text.
SplInputs parse_inputs_text(const std::string& text);

/// Serializes inputs back to the model file format (deterministic key and
/// element order; PCs rendered as stored).
std::string serialize_inputs(const SplInputs& inputs);

/// Checks the semantic well-formedness of loaded inputs: satisfiable feature
/// model, edge/link/delta PCs subsumed by their endpoints' PCs, acyclic GSN
/// support graph, per-configuration-disjoint delta, delta membership in
/// S/S', and dead-element warnings. Deterministic order.
std::vector<Diagnostic> validate(const SplInputs& inputs);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// Plain (single-product) delta.
struct PlainDelta {
  std::set<std::string> added;
  std::set<std::string> deleted;
  std::set<std::string> modified;
};

/// Inputs projected to one product: plain sets and graphs.
struct ProductInputs {
  std::set<std::string> sys_elements;
  std::set<std::pair<std::string, std::string>> sys_edges;
  std::set<std::string> sys_prime_elements;
  std::set<std::pair<std::string, std::string>> sys_prime_edges;
  std::set<std::string> gsn_elements;
  std::set<std::pair<std::string, std::string>> gsn_support_edges;
  std::set<TraceLink> trace_links;
  PlainDelta delta;
};

/// Projects every component of inputs to configuration rho. Edges and links
/// are kept exactly when their own PC evaluates to true. Throws
/// InvalidConfigError when rho violates the feature model.
ProductInputs index_inputs(const SplInputs& inputs, const Config& rho);

/// Serializes a projected product back to the model file format (all PCs
/// "true", no features).
std::string serialize_product(const ProductInputs& product,
                              const std::map<std::string, GsnKind>& kinds);

}  // namespace vcia

#endif  // VCIA_MODEL_HPP
