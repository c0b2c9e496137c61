#ifndef VCIA_SLICER_HPP
#define VCIA_SLICER_HPP

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vcia/model.hpp"
#include "vcia/pc.hpp"
#include "vcia/vset.hpp"

namespace vcia {

/// Propagation bound for a slicer: a fixed number of steps, or a fixpoint.
class SliceDepth {
 public:
  static SliceDepth unbounded() { return SliceDepth(-1); }
  static SliceDepth bounded(int steps) {
    if (steps < 1) throw Error("slice depth must be at least 1");
    return SliceDepth(steps);
  }

  bool is_unbounded() const { return steps_ < 0; }
  int steps() const { return steps_; }

  friend bool operator==(SliceDepth a, SliceDepth b) {
    return a.steps_ == b.steps_;
  }

 private:
  explicit SliceDepth(int steps) : steps_(steps) {}
  int steps_;
};

/// Slicer parameterization of the impact assessment. The GSN slicers are
/// fixed by the algorithm: direct dependencies for the revise slice,
/// transitive closure for the recheck slice. Only the system slicer depth
/// is configurable.
struct SlicerOptions {
  SliceDepth sys_depth = SliceDepth::bounded(1);
};

/// Forward reachability over a plain directed graph: criterion plus every
/// node reachable from it within `depth` steps (through nodes only).
/// Throws CriterionNotInModelError when the criterion leaves `nodes`.
std::set<std::string> slice_plain(
    const std::set<std::string>& nodes,
    const std::set<std::pair<std::string, std::string>>& edges,
    const std::set<std::string>& criterion, SliceDepth depth);

/// Lifted slicing with presence-condition propagation. PCs conjoin along a
/// propagation path (edge PC and target node PC) and disjoin across paths;
/// after round k, an element's PC covers exactly the paths of length <= k.
/// For unbounded depth the rounds run to a semantic fixpoint. Commutes with
/// index_config against slice_plain for every valid configuration.
VSet<std::string> slice_lifted(const VSet<std::string>& nodes,
                               const std::vector<Edge>& edges,
                               const VSet<std::string>& criterion,
                               SliceDepth depth, const FeatureSpace& space);

}  // namespace vcia

#endif  // VCIA_SLICER_HPP
