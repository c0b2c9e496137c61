#include "vcia/pc.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <utility>

namespace vcia {

// ---------------------------------------------------------------------------
// Formula

Formula Formula::constant(bool value) {
  static const auto true_node = std::make_shared<const Node>(
      Node{PcKind::True, {}, nullptr, nullptr});
  static const auto false_node = std::make_shared<const Node>(
      Node{PcKind::False, {}, nullptr, nullptr});
  return Formula(value ? true_node : false_node);
}

Formula::Formula() : node_(constant(true).node_) {}

Formula Formula::variable(std::string name) {
  return Formula(std::make_shared<const Node>(
      Node{PcKind::Var, std::move(name), nullptr, nullptr}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->kind != b.node_->kind) return false;
  switch (a.node_->kind) {
    case PcKind::True:
    case PcKind::False:
      return true;
    case PcKind::Var:
      return a.node_->name == b.node_->name;
    case PcKind::Not:
      return a.lhs() == b.lhs();
    case PcKind::And:
    case PcKind::Or:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

Formula operator!(const Formula& f) {
  return Formula(std::make_shared<const Formula::Node>(
      Formula::Node{PcKind::Not, {}, f.node_, nullptr}));
}

Formula operator&&(const Formula& a, const Formula& b) {
  return Formula(std::make_shared<const Formula::Node>(
      Formula::Node{PcKind::And, {}, a.node_, b.node_}));
}

Formula operator||(const Formula& a, const Formula& b) {
  return Formula(std::make_shared<const Formula::Node>(
      Formula::Node{PcKind::Or, {}, a.node_, b.node_}));
}

Formula fold_not(const Formula& f) {
  if (f.is_true()) return Formula::constant(false);
  if (f.is_false()) return Formula::constant(true);
  return !f;
}

Formula fold_and(const Formula& a, const Formula& b) {
  if (a.is_false() || b.is_false()) return Formula::constant(false);
  if (a.is_true()) return b;
  if (b.is_true()) return a;
  return a && b;
}

Formula fold_or(const Formula& a, const Formula& b) {
  if (a.is_true() || b.is_true()) return Formula::constant(true);
  if (a.is_false()) return b;
  if (b.is_false()) return a;
  return a || b;
}

Formula fold_constants(const Formula& f) {
  switch (f.kind()) {
    case PcKind::True:
    case PcKind::False:
    case PcKind::Var:
      return f;
    case PcKind::Not:
      return fold_not(fold_constants(f.lhs()));
    case PcKind::And:
      return fold_and(fold_constants(f.lhs()), fold_constants(f.rhs()));
    case PcKind::Or:
      return fold_or(fold_constants(f.lhs()), fold_constants(f.rhs()));
  }
  return f;
}

namespace {

void collect_variables(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case PcKind::True:
    case PcKind::False:
      return;
    case PcKind::Var:
      out.insert(f.var_name());
      return;
    case PcKind::Not:
      collect_variables(f.lhs(), out);
      return;
    case PcKind::And:
    case PcKind::Or:
      collect_variables(f.lhs(), out);
      collect_variables(f.rhs(), out);
      return;
  }
}

}  // namespace

std::set<std::string> variables_of(const Formula& f) {
  std::set<std::string> out;
  collect_variables(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// FeatureSpace

bool is_valid_feature_name(std::string_view name) {
  if (name.empty()) return false;
  if (name == "true" || name == "false") return false;
  auto head = static_cast<unsigned char>(name.front());
  if (!std::isalpha(head) && name.front() != '_') return false;
  for (char c : name.substr(1)) {
    auto uc = static_cast<unsigned char>(c);
    if (!std::isalnum(uc) && c != '_') return false;
  }
  return true;
}

FeatureSpace::FeatureSpace()
    : feature_model_(Formula::constant(true)),
      feature_cap_(kDefaultFeatureCap) {}

FeatureSpace::FeatureSpace(std::vector<std::string> features,
                           Formula feature_model, int feature_cap)
    : features_(std::move(features)),
      feature_model_(std::move(feature_model)),
      feature_cap_(feature_cap) {
  std::set<std::string> seen;
  for (const auto& name : features_) {
    if (!is_valid_feature_name(name)) {
      throw Error("invalid feature name '" + name + "'");
    }
    if (!seen.insert(name).second) {
      throw Error("duplicate feature name '" + name + "'");
    }
  }
  for (const auto& var : variables_of(feature_model_)) {
    if (!seen.count(var)) throw UnknownFeatureError(var);
  }
  if (feature_cap_ < 0 || feature_cap_ > 62) {
    throw Error("feature cap must be between 0 and 62");
  }
}

bool FeatureSpace::declares(const std::string& name) const {
  return index_of(name) >= 0;
}

int FeatureSpace::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (features_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  // An identifier-shaped word ("true"/"false" included), or empty.
  std::string take_word() {
    std::size_t start = pos;
    if (pos < text.size()) {
      char c = text[pos];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        ++pos;
        while (pos < text.size()) {
          char d = text[pos];
          if (!std::isalnum(static_cast<unsigned char>(d)) && d != '_') break;
          ++pos;
        }
      }
    }
    return std::string(text.substr(start, pos - start));
  }
};

class Parser {
 public:
  Parser(std::string_view text, const FeatureSpace& space)
      : lex_{text}, space_(space) {}

  Formula parse() {
    Formula f = parse_or();
    if (!lex_.at_end()) {
      throw SyntaxError("unexpected input", lex_.pos,
                        "end of input, '&' or '|'");
    }
    return f;
  }

 private:
  Formula parse_or() {
    Formula acc = parse_and();
    while (lex_.consume('|')) acc = acc || parse_and();
    return acc;
  }

  Formula parse_and() {
    Formula acc = parse_not();
    while (lex_.consume('&')) acc = acc && parse_not();
    return acc;
  }

  Formula parse_not() {
    if (lex_.consume('!')) return !parse_not();
    return parse_atom();
  }

  Formula parse_atom() {
    if (lex_.consume('(')) {
      Formula f = parse_or();
      if (!lex_.consume(')')) {
        throw SyntaxError("unbalanced parenthesis", lex_.pos, "')'");
      }
      return f;
    }
    lex_.skip_ws();
    std::size_t start = lex_.pos;
    std::string word = lex_.take_word();
    if (word.empty()) {
      throw SyntaxError("expected an atom", start,
                        "'true', 'false', identifier, '!' or '('");
    }
    if (word == "true") return Formula::constant(true);
    if (word == "false") return Formula::constant(false);
    if (!space_.declares(word)) throw UnknownFeatureError(word, start);
    return Formula::variable(word);
  }

  Lexer lex_;
  const FeatureSpace& space_;
};

}  // namespace

Formula parse_pc(std::string_view text, const FeatureSpace& space) {
  return Parser(text, space).parse();
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

int precedence(PcKind kind) {
  switch (kind) {
    case PcKind::Or:
      return 1;
    case PcKind::And:
      return 2;
    case PcKind::Not:
      return 3;
    default:
      return 4;
  }
}

void render_into(const Formula& f, int parent_prec, std::string& out) {
  int prec = precedence(f.kind());
  bool parens = prec < parent_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case PcKind::True:
      out += "true";
      break;
    case PcKind::False:
      out += "false";
      break;
    case PcKind::Var:
      out += f.var_name();
      break;
    case PcKind::Not:
      out += '!';
      render_into(f.lhs(), precedence(PcKind::Not), out);
      break;
    case PcKind::And:
      render_into(f.lhs(), prec, out);
      out += " & ";
      render_into(f.rhs(), prec, out);
      break;
    case PcKind::Or:
      render_into(f.lhs(), prec, out);
      out += " | ";
      render_into(f.rhs(), prec, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation and enumeration

namespace {

template <class Pred>
bool eval_pred(const Formula& f, Pred&& selected) {
  switch (f.kind()) {
    case PcKind::True:
      return true;
    case PcKind::False:
      return false;
    case PcKind::Var:
      return selected(f.var_name());
    case PcKind::Not:
      return !eval_pred(f.lhs(), selected);
    case PcKind::And:
      return eval_pred(f.lhs(), selected) && eval_pred(f.rhs(), selected);
    case PcKind::Or:
      return eval_pred(f.lhs(), selected) || eval_pred(f.rhs(), selected);
  }
  return false;
}

// Bit (n-1-i) of a mask holds feature i, so counting masks upward yields
// lexicographic order over the declared feature order.
bool mask_selects(std::uint64_t mask, int index, std::size_t n_features) {
  return (mask >> (n_features - 1 - static_cast<std::size_t>(index))) & 1u;
}

bool eval_mask(const Formula& f, std::uint64_t mask,
               const FeatureSpace& space) {
  std::size_t n = space.features().size();
  return eval_pred(f, [&](const std::string& name) {
    int index = space.index_of(name);
    if (index < 0) throw UnknownFeatureError(name);
    return mask_selects(mask, index, n);
  });
}

void check_cap(const FeatureSpace& space) {
  std::size_t n = space.features().size();
  if (n > static_cast<std::size_t>(space.feature_cap())) {
    throw TooManyFeaturesError(n, space.feature_cap());
  }
}

std::uint64_t mask_count(const FeatureSpace& space) {
  return std::uint64_t{1} << space.features().size();
}

}  // namespace

bool eval(const Formula& f, const Config& rho) {
  return eval_pred(f,
                   [&](const std::string& name) { return rho.count(name); });
}

bool eval_checked(const Formula& f, const Config& rho,
                  const FeatureSpace& space) {
  for (const auto& name : rho) {
    if (!space.declares(name)) throw UnknownFeatureError(name);
  }
  return eval_pred(f, [&](const std::string& name) -> bool {
    if (!space.declares(name)) throw UnknownFeatureError(name);
    return rho.count(name);
  });
}

std::vector<Config> configs_of(const FeatureSpace& space) {
  check_cap(space);
  std::vector<Config> out;
  std::size_t n = space.features().size();
  for (std::uint64_t mask = 0; mask < mask_count(space); ++mask) {
    if (!eval_mask(space.feature_model(), mask, space)) continue;
    Config rho;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask_selects(mask, static_cast<int>(i), n)) {
        rho.insert(space.features()[i]);
      }
    }
    out.push_back(std::move(rho));
  }
  return out;
}

bool sat_under(const Formula& f, const FeatureSpace& space) {
  check_cap(space);
  for (std::uint64_t mask = 0; mask < mask_count(space); ++mask) {
    if (eval_mask(space.feature_model(), mask, space) &&
        eval_mask(f, mask, space)) {
      return true;
    }
  }
  return false;
}

bool entails_under(const Formula& f, const Formula& g,
                   const FeatureSpace& space) {
  return !sat_under(f && !g, space);
}

bool equiv_under(const Formula& f, const Formula& g,
                 const FeatureSpace& space) {
  return entails_under(f, g, space) && entails_under(g, f, space);
}

// ---------------------------------------------------------------------------
// Normalization: Blake canonical form (disjunction of all prime implicants)
// computed by Quine-McCluskey cube merging over the occurring features.

namespace {

// A cube over k variables: `care` marks fixed variables, `value` their
// polarity. value bits outside care are kept zero. Bit j holds variable j.
struct Cube {
  std::uint32_t care;
  std::uint32_t value;

  friend bool operator<(const Cube& a, const Cube& b) {
    return std::pair(a.care, a.value) < std::pair(b.care, b.value);
  }
  friend bool operator==(const Cube& a, const Cube& b) {
    return a.care == b.care && a.value == b.value;
  }
};

std::vector<Cube> prime_implicants(std::vector<Cube> level) {
  std::vector<Cube> primes;
  std::sort(level.begin(), level.end());
  level.erase(std::unique(level.begin(), level.end()), level.end());
  while (!level.empty()) {
    // Cubes merge only when they fix the same variables and their values
    // differ in exactly one bit, so bucket by (care, popcount) and compare
    // adjacent popcount buckets.
    std::map<std::pair<std::uint32_t, int>, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < level.size(); ++i) {
      buckets[{level[i].care, std::popcount(level[i].value)}].push_back(i);
    }
    std::vector<bool> merged(level.size(), false);
    std::vector<Cube> next;
    for (const auto& [key, lo] : buckets) {
      auto hi_it = buckets.find({key.first, key.second + 1});
      if (hi_it == buckets.end()) continue;
      for (std::size_t i : lo) {
        for (std::size_t j : hi_it->second) {
          std::uint32_t diff = level[i].value ^ level[j].value;
          if (std::popcount(diff) != 1) continue;
          merged[i] = merged[j] = true;
          std::uint32_t care = level[i].care & ~diff;
          next.push_back(Cube{care, level[i].value & care});
        }
      }
    }
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (!merged[i]) primes.push_back(level[i]);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

}  // namespace

Formula normalize(const Formula& f, const FeatureSpace& space) {
  // Occurring features, in declared order.
  std::vector<std::string> vars;
  for (const auto& name : variables_of(f)) {
    if (!space.declares(name)) throw UnknownFeatureError(name);
    vars.push_back(name);
  }
  std::sort(vars.begin(), vars.end(), [&](const auto& a, const auto& b) {
    return space.index_of(a) < space.index_of(b);
  });
  std::size_t k = vars.size();
  if (k > static_cast<std::size_t>(space.feature_cap())) {
    throw TooManyFeaturesError(k, space.feature_cap());
  }

  // Truth table over the occurring variables; bit j of a row holds vars[j].
  std::map<std::string, std::size_t> var_index;
  for (std::size_t j = 0; j < k; ++j) var_index[vars[j]] = j;
  std::vector<Cube> minterms;
  const std::uint64_t rows = std::uint64_t{1} << k;
  for (std::uint64_t row = 0; row < rows; ++row) {
    bool value = eval_pred(f, [&](const std::string& name) -> bool {
      return (row >> var_index.at(name)) & 1u;
    });
    if (value) {
      minterms.push_back(Cube{static_cast<std::uint32_t>(rows - 1),
                              static_cast<std::uint32_t>(row)});
    }
  }
  if (minterms.empty()) return Formula::constant(false);
  if (minterms.size() == rows) return Formula::constant(true);

  std::vector<Cube> primes = prime_implicants(std::move(minterms));

  // Deterministic term order: literal sequences compared in declared feature
  // order, positive literal before negative.
  auto literals = [&](const Cube& c) {
    std::vector<std::pair<std::size_t, bool>> lits;  // (var index, negated)
    for (std::size_t j = 0; j < k; ++j) {
      if (c.care & (std::uint32_t{1} << j)) {
        lits.emplace_back(j, ((c.value >> j) & 1u) == 0);
      }
    }
    return lits;
  };
  std::sort(primes.begin(), primes.end(), [&](const Cube& a, const Cube& b) {
    return literals(a) < literals(b);
  });

  Formula result = Formula::constant(false);
  bool first_term = true;
  for (const Cube& prime : primes) {
    Formula term = Formula::constant(true);
    bool first_lit = true;
    for (const auto& [j, negated] : literals(prime)) {
      Formula lit = Formula::variable(vars[j]);
      if (negated) lit = !lit;
      term = first_lit ? lit : (term && lit);
      first_lit = false;
    }
    result = first_term ? term : (result || term);
    first_term = false;
  }
  return result;
}

std::string render_normalized(const Formula& f, const FeatureSpace& space) {
  return render(normalize(f, space));
}

}  // namespace vcia
