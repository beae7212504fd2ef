#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hclust/dissimilarity.hpp"
#include "hclust/estimators.hpp"
#include "hclust/hierarchy.hpp"

namespace hclust {

struct CutSolverPolicy {
    int exact_cap = 16; // exhaustive bipartition search up to this size
    int restarts = 8;
    std::uint64_t seed = 0;
};

/// One merge (agglomerative) or split (divisive): the child leaf label sets
/// and the criterion value, which is exactly that vertex's contribution to
/// the length objective of the returned tree.
struct MergeStep {
    std::vector<std::string> left;
    std::vector<std::string> right;
    double value = 0.0;
};

struct MergeTrace {
    std::vector<MergeStep> steps;
};

/// Generic agglomerative linkage: repeatedly merges the pair of current
/// trees whose prospective new root has the smallest estimated height.
/// mean = average linkage, min = single, max = complete, median = median
/// linkage, depth_weighted = WPGMA. Ties break on the lexicographically
/// smallest (left, right) leaf-set pair under label order.
std::pair<Hierarchy, MergeTrace> agglomerate(const DissimilarityMatrix& d,
                                             EstimatorKind e);

struct Cut {
    std::vector<std::size_t> side_a; // matrix indices, sorted; contains index 0
    std::vector<std::size_t> side_b;
    double mean = 0.0;
};

/// Exhaustive scan of all 2^(n-1) - 1 bipartitions, maximizing the mean
/// cross dissimilarity. Ties break on the lexicographically smallest side
/// containing the first label.
Cut sparsest_cut_exact(const DissimilarityMatrix& d, int cap = 16);

/// Hill-climbing from random balanced starts: best single-element move,
/// best swap on plateau. Deterministic for a fixed policy seed.
Cut sparsest_cut_local_search(const DissimilarityMatrix& d,
                              const CutSolverPolicy& policy);

/// Top-down: split by the exact solver when the block is small enough,
/// otherwise by local search, then recurse on each side.
std::pair<Hierarchy, MergeTrace> recursive_sparsest_cut(
    const DissimilarityMatrix& d, const CutSolverPolicy& policy);

/// Criterion value of merging two leaf groups, recomputed from scratch from
/// the raw cross-block. `depths_*` give each leaf's edge distance from its
/// group's root (used by depth_weighted only). Used to validate the
/// incremental update paths inside agglomerate.
double merge_criterion_recomputed(const DissimilarityMatrix& d, EstimatorKind e,
                                  const std::vector<std::size_t>& left,
                                  const std::vector<std::size_t>& right,
                                  const std::vector<int>& depths_left,
                                  const std::vector<int>& depths_right);

} // namespace hclust
