#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "hclust/hierarchy.hpp"

namespace hclust {

/// The pluggable height-estimator family. Every kind returns a value inside
/// [min, max] of the supplied cross-block, which is exactly what makes the
/// associated objective consistent on ultrametrics.
enum class EstimatorKind { mean, min, max, median, depth_weighted };

/// Accepts "mean", "min", "max", "median", "wpgma"; throws ParseError.
EstimatorKind estimator_from_string(const std::string& s);
std::string estimator_name(EstimatorKind e);
inline constexpr EstimatorKind kAllEstimators[] = {
    EstimatorKind::mean, EstimatorKind::min, EstimatorKind::max,
    EstimatorKind::median, EstimatorKind::depth_weighted};

/// One cross-block dissimilarity, keyed by leaf ids of the caller's choosing
/// (leaf indices of a hierarchy or matrix).
struct BlockEntry {
    int left;
    int right;
    double value;
};

/// Edge-count distances of each leaf from the child vertex on its side
/// (s- for the left block, s+ for the right). Only depth_weighted reads it.
struct SubtreeContext {
    std::unordered_map<int, int> left_depths;
    std::unordered_map<int, int> right_depths;
};

/// Context of internal vertex s in hierarchy t, with leaves keyed by leaf id.
SubtreeContext subtree_context(const Hierarchy& t, int s);

/// Cross-block of internal vertex s under matrix values keyed by t's leaf
/// ids; `matrix_index[leaf]` maps a leaf id to its row in the matrix.
class DissimilarityMatrix;
std::vector<BlockEntry> cross_block(const Hierarchy& t, int s,
                                    const DissimilarityMatrix& d,
                                    const std::vector<std::size_t>& matrix_index);

double estimate_height(EstimatorKind e, const SubtreeContext& ctx,
                       const std::vector<BlockEntry>& block);

struct BoundsWitness {
    double value;
    double lo;
    double hi;
    bool ok;
};

BoundsWitness check_estimator_bounds(EstimatorKind e, const SubtreeContext& ctx,
                                     const std::vector<BlockEntry>& block);

/// Sum of 2^(-left depth(x)) * 2^(-right depth(y)) over all cross pairs;
/// equals 1 for any binary subtree context.
double weight_sum(const SubtreeContext& ctx);

} // namespace hclust
