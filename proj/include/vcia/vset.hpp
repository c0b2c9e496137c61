#ifndef VCIA_VSET_HPP
#define VCIA_VSET_HPP

#include <map>
#include <set>
#include <type_traits>
#include <utility>

#include "vcia/errors.hpp"
#include "vcia/pc.hpp"

namespace vcia {

/// A value paired with the presence condition under which it exists.
template <class T>
struct VarElem {
  T value;
  Formula pc;
};

/// Variational set: a total map from elements to presence conditions.
///
/// Unmapped elements have PC FALSE. Stored PCs are constant-folded on
/// insertion and entries whose PC folds to the FALSE constant are pruned;
/// no further normalization happens during analysis, so PCs may grow as
/// un-simplified conjunctions/disjunctions. Comparison is semantic
/// (vsubset/equivalence under a feature space), never syntactic.
template <class T>
class VSet {
 public:
  using Map = std::map<T, Formula>;

  VSet() = default;

  /// Disjoins pc onto the element's current presence condition.
  void add(const T& elem, const Formula& pc) {
    Formula folded = fold_constants(pc);
    if (folded.is_false()) return;
    auto it = entries_.find(elem);
    if (it == entries_.end()) {
      entries_.emplace(elem, folded);
    } else {
      it->second = fold_or(it->second, folded);
    }
  }

  /// Presence condition of elem; FALSE when unmapped.
  Formula pc_of(const T& elem) const {
    auto it = entries_.find(elem);
    return it == entries_.end() ? Formula::constant(false) : it->second;
  }

  bool contains(const T& elem) const { return entries_.count(elem) != 0; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  const Map& entries() const { return entries_; }

  /// The mapped elements (those with a non-FALSE-constant PC).
  std::set<T> support() const {
    std::set<T> out;
    for (const auto& [elem, pc] : entries_) out.insert(elem);
    return out;
  }

 private:
  Map entries_;
};

/// Projects s to the product of configuration rho: the plain set of elements
/// whose PC evaluates to true. Throws InvalidConfigError when rho violates
/// the feature model.
template <class T>
std::set<T> index_config(const VSet<T>& s, const Config& rho,
                         const FeatureSpace& space) {
  if (!eval_checked(space.feature_model(), rho, space)) {
    throw InvalidConfigError(
        "configuration does not satisfy the feature model");
  }
  std::set<T> out;
  for (const auto& [elem, pc] : s.entries()) {
    if (eval(pc, rho)) out.insert(elem);
  }
  return out;
}

/// Conjoins pc onto every element's presence condition.
template <class T>
VSet<T> restrict_by_pc(const VSet<T>& s, const Formula& pc) {
  VSet<T> out;
  for (const auto& [elem, elem_pc] : s.entries()) {
    out.add(elem, fold_and(elem_pc, pc));
  }
  return out;
}

/// Lifted membership: v exists in s in every configuration where v exists
/// at all, i.e. v.pc entails s(v.value) under the feature model.
template <class T>
bool vmem(const VarElem<T>& v, const VSet<T>& s, const FeatureSpace& space) {
  return entails_under(v.pc, s.pc_of(v.value), space);
}

/// Lifted subset: s(e) entails t(e) for every element.
template <class T>
bool vsubset(const VSet<T>& s, const VSet<T>& t, const FeatureSpace& space) {
  for (const auto& [elem, pc] : s.entries()) {
    if (!entails_under(pc, t.pc_of(elem), space)) return false;
  }
  return true;
}

/// Pointwise disjunction.
template <class T>
VSet<T> vunion(const VSet<T>& s, const VSet<T>& t) {
  VSet<T> out;
  for (const auto& [elem, pc] : s.entries()) out.add(elem, pc);
  for (const auto& [elem, pc] : t.entries()) out.add(elem, pc);
  return out;
}

/// Pointwise conjunction.
template <class T>
VSet<T> vinter(const VSet<T>& s, const VSet<T>& t) {
  VSet<T> out;
  for (const auto& [elem, pc] : s.entries()) {
    out.add(elem, fold_and(pc, t.pc_of(elem)));
  }
  return out;
}

/// Pointwise difference: result(e) = s(e) && !t(e).
template <class T>
VSet<T> vdiff(const VSet<T>& s, const VSet<T>& t) {
  VSet<T> out;
  for (const auto& [elem, pc] : s.entries()) {
    out.add(elem, fold_and(pc, fold_not(t.pc_of(elem))));
  }
  return out;
}

/// Lifted image: result(b) is the disjunction of s(a) over all a with
/// fn(a) == b.
template <class F, class T>
auto vimage(F&& fn, const VSet<T>& s)
    -> VSet<std::decay_t<decltype(fn(std::declval<const T&>()))>> {
  VSet<std::decay_t<decltype(fn(std::declval<const T&>()))>> out;
  for (const auto& [elem, pc] : s.entries()) out.add(fn(elem), pc);
  return out;
}

/// Semantic equality: mutual vsubset.
template <class T>
bool vset_equiv(const VSet<T>& s, const VSet<T>& t,
                const FeatureSpace& space) {
  return vsubset(s, t, space) && vsubset(t, s, space);
}

}  // namespace vcia

#endif  // VCIA_VSET_HPP
