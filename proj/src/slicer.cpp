#include "vcia/slicer.hpp"

#include <map>

namespace vcia {

std::set<std::string> slice_plain(
    const std::set<std::string>& nodes,
    const std::set<std::pair<std::string, std::string>>& edges,
    const std::set<std::string>& criterion, SliceDepth depth) {
  for (const std::string& elem : criterion) {
    if (!nodes.count(elem)) throw CriterionNotInModelError(elem);
  }

  std::set<std::string> result = criterion;
  std::set<std::string> frontier = criterion;
  int remaining = depth.is_unbounded() ? -1 : depth.steps();
  while (!frontier.empty() && remaining != 0) {
    std::set<std::string> next;
    for (const auto& [src, dst] : edges) {
      if (frontier.count(src) && nodes.count(dst) && !result.count(dst)) {
        next.insert(dst);
      }
    }
    result.insert(next.begin(), next.end());
    frontier = std::move(next);
    if (remaining > 0) --remaining;
  }
  return result;
}

VSet<std::string> slice_lifted(const VSet<std::string>& nodes,
                               const std::vector<Edge>& edges,
                               const VSet<std::string>& criterion,
                               SliceDepth depth, const FeatureSpace& space) {
  for (const auto& [elem, pc] : criterion.entries()) {
    if (!nodes.contains(elem)) throw CriterionNotInModelError(elem);
  }

  // result(v) starts as criterion(v) & nodes(v); each synchronous round adds
  // result(u) & pc(edge) & nodes(v) for every edge u->v, so after round k
  // result(v) is the disjunction over propagation paths of length <= k.
  std::map<std::string, Formula> result;
  for (const auto& [elem, pc] : criterion.entries()) {
    Formula seeded = fold_and(pc, nodes.pc_of(elem));
    if (!seeded.is_false()) result.emplace(elem, seeded);
  }

  int remaining = depth.is_unbounded() ? -1 : depth.steps();
  while (remaining != 0) {
    std::map<std::string, Formula> incoming;
    for (const Edge& edge : edges) {
      auto it = result.find(edge.src);
      if (it == result.end()) continue;
      Formula contribution =
          fold_and(fold_and(it->second, edge.pc), nodes.pc_of(edge.dst));
      if (contribution.is_false()) continue;
      auto [slot, inserted] = incoming.emplace(edge.dst, contribution);
      if (!inserted) slot->second = fold_or(slot->second, contribution);
    }

    bool changed = false;
    for (const auto& [elem, pc] : incoming) {
      auto it = result.find(elem);
      if (it == result.end()) {
        if (sat_under(pc, space)) {
          result.emplace(elem, pc);
          changed = true;
        }
      } else if (!entails_under(pc, it->second, space)) {
        it->second = fold_or(it->second, pc);
        changed = true;
      }
    }
    if (!changed) break;
    if (remaining > 0) --remaining;
  }

  VSet<std::string> out;
  for (const auto& [elem, pc] : result) out.add(elem, pc);
  return out;
}

}  // namespace vcia
