#ifndef VCIA_PC_HPP
#define VCIA_PC_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vcia/errors.hpp"

namespace vcia {

/// Constructors of the presence-condition AST.
enum class PcKind { True, False, Var, Not, And, Or };

/// Immutable propositional formula over named features.
///
/// Values share subtrees freely; all operations are pure. The operator
/// overloads build plain AST nodes without simplification, so a formula
/// prints back exactly as it was built. Use fold_and/fold_or/fold_not
/// when TRUE/FALSE operands should collapse.
class Formula {
 public:
  /// The constant TRUE.
  Formula();

  static Formula constant(bool value);
  static Formula variable(std::string name);

  PcKind kind() const { return node_->kind; }
  bool is_true() const { return node_->kind == PcKind::True; }
  bool is_false() const { return node_->kind == PcKind::False; }

  /// Variable name; only meaningful for PcKind::Var.
  const std::string& var_name() const { return node_->name; }
  /// Operand of Not, or left operand of And/Or.
  Formula lhs() const { return Formula(node_->lhs); }
  /// Right operand of And/Or.
  Formula rhs() const { return Formula(node_->rhs); }

  /// Structural equality (same AST, not semantic equivalence).
  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) {
    return !(a == b);
  }

  friend Formula operator!(const Formula& f);
  friend Formula operator&&(const Formula& a, const Formula& b);
  friend Formula operator||(const Formula& a, const Formula& b);

 private:
  struct Node {
    PcKind kind;
    std::string name;                  // Var
    std::shared_ptr<const Node> lhs;   // Not/And/Or
    std::shared_ptr<const Node> rhs;   // And/Or
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Negation that folds constant operands: !TRUE -> FALSE, !FALSE -> TRUE.
Formula fold_not(const Formula& f);
/// Conjunction that folds constant operands.
Formula fold_and(const Formula& a, const Formula& b);
/// Disjunction that folds constant operands.
Formula fold_or(const Formula& a, const Formula& b);
/// Recursively propagates TRUE/FALSE through the whole tree. Linear time;
/// never expands the formula.
Formula fold_constants(const Formula& f);

/// Names of all variables occurring in f.
std::set<std::string> variables_of(const Formula& f);

/// A feature configuration: the set of selected feature names.
using Config = std::set<std::string>;

/// The declared features (ordered) together with the feature model.
class FeatureSpace {
 public:
  static constexpr int kDefaultFeatureCap = 20;

  /// Empty space: no features, feature model TRUE (exactly one product).
  FeatureSpace();

  /// Throws Error on duplicate or ill-formed feature names, and
  /// UnknownFeatureError if the feature model names an undeclared feature.
  FeatureSpace(std::vector<std::string> features, Formula feature_model,
               int feature_cap = kDefaultFeatureCap);

  const std::vector<std::string>& features() const { return features_; }
  const Formula& feature_model() const { return feature_model_; }
  int feature_cap() const { return feature_cap_; }

  bool declares(const std::string& name) const;
  /// Position in declared order, or -1.
  int index_of(const std::string& name) const;

 private:
  std::vector<std::string> features_;
  Formula feature_model_;
  int feature_cap_;
};

/// True iff name matches [A-Za-z_][A-Za-z0-9_]* and is not a reserved word.
bool is_valid_feature_name(std::string_view name);

/// Parses the PC grammar:
///
///   pc   := or ;
///   or   := and { "|" and } ;
///   and  := not { "&" not } ;
///   not  := "!" not | atom ;
///   atom := "true" | "false" | IDENT | "(" pc ")" ;
///
/// Whitespace is insignificant. Throws SyntaxError on malformed input and
/// UnknownFeatureError when an identifier is not declared in space.
Formula parse_pc(std::string_view text, const FeatureSpace& space);

/// Renders with minimal parentheses under precedence ! > & > |.
/// parse_pc(render(f)) is semantically equivalent to f.
std::string render(const Formula& f);

/// Propositional semantics: VAR(x) is true iff x is selected in rho.
bool eval(const Formula& f, const Config& rho);

/// eval with declaredness checks on both the formula and rho; throws
/// UnknownFeatureError.
bool eval_checked(const Formula& f, const Config& rho,
                  const FeatureSpace& space);

/// All configurations satisfying the feature model, in lexicographic order
/// over the declared feature order (absent before present). Throws
/// TooManyFeaturesError above the space's cap.
std::vector<Config> configs_of(const FeatureSpace& space);

/// True iff f holds in some configuration that satisfies the feature model.
/// Decided by enumeration over the configuration space.
bool sat_under(const Formula& f, const FeatureSpace& space);

/// True iff f -> g holds in every configuration satisfying the feature
/// model, i.e. !sat_under(f && !g).
bool entails_under(const Formula& f, const Formula& g,
                   const FeatureSpace& space);

/// Entailment in both directions.
bool equiv_under(const Formula& f, const Formula& g, const FeatureSpace& space);

/// Canonical sum of products: the disjunction of all prime implicants of f,
/// literals and terms ordered by declared feature order. Independent of the
/// feature model; formulas with equal truth tables normalize to identical
/// ASTs, and eval(normalize(f), rho) == eval(f, rho) for every rho.
Formula normalize(const Formula& f, const FeatureSpace& space);

/// render(normalize(f, space)).
std::string render_normalized(const Formula& f, const FeatureSpace& space);

}  // namespace vcia

#endif  // VCIA_PC_HPP
