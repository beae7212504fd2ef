#include "hclust/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "hclust/dissimilarity.hpp"
#include "hclust/errors.hpp"

namespace hclust {

EstimatorKind estimator_from_string(const std::string& s) {
    if (s == "mean") return EstimatorKind::mean;
    if (s == "min") return EstimatorKind::min;
    if (s == "max") return EstimatorKind::max;
    if (s == "median") return EstimatorKind::median;
    if (s == "wpgma") return EstimatorKind::depth_weighted;
    throw ParseError("unknown estimator '" + s + "'");
}

std::string estimator_name(EstimatorKind e) {
    switch (e) {
    case EstimatorKind::mean: return "mean";
    case EstimatorKind::min: return "min";
    case EstimatorKind::max: return "max";
    case EstimatorKind::median: return "median";
    case EstimatorKind::depth_weighted: return "wpgma";
    }
    return "?";
}

SubtreeContext subtree_context(const Hierarchy& t, int s) {
    if (!t.is_internal(s))
        throw UnknownLeafError("subtree context requires an internal vertex");
    SubtreeContext ctx;
    const int l = t.left_child(s);
    const int r = t.right_child(s);
    for (int x : t.leaves_below(l))
        ctx.left_depths[x] = t.depth(x) - t.depth(l);
    for (int y : t.leaves_below(r))
        ctx.right_depths[y] = t.depth(y) - t.depth(r);
    return ctx;
}

std::vector<BlockEntry> cross_block(const Hierarchy& t, int s,
                                    const DissimilarityMatrix& d,
                                    const std::vector<std::size_t>& matrix_index) {
    std::vector<BlockEntry> block;
    const auto& left = t.leaves_below(t.left_child(s));
    const auto& right = t.leaves_below(t.right_child(s));
    block.reserve(left.size() * right.size());
    for (int x : left)
        for (int y : right)
            block.push_back({x, y, d.at(matrix_index[x], matrix_index[y])});
    return block;
}

double estimate_height(EstimatorKind e, const SubtreeContext& ctx,
                       const std::vector<BlockEntry>& block) {
    if (block.empty())
        throw EmptyBlockError("empty cross-block");
    switch (e) {
    case EstimatorKind::mean: {
        double sum = 0.0;
        for (const auto& b : block)
            sum += b.value;
        return sum / static_cast<double>(block.size());
    }
    case EstimatorKind::min: {
        double v = block.front().value;
        for (const auto& b : block)
            v = std::min(v, b.value);
        return v;
    }
    case EstimatorKind::max: {
        double v = block.front().value;
        for (const auto& b : block)
            v = std::max(v, b.value);
        return v;
    }
    case EstimatorKind::median: {
        std::vector<double> vals;
        vals.reserve(block.size());
        for (const auto& b : block)
            vals.push_back(b.value);
        std::sort(vals.begin(), vals.end());
        const std::size_t m = vals.size() / 2;
        if (vals.size() % 2 == 1)
            return vals[m];
        return 0.5 * (vals[m - 1] + vals[m]);
    }
    case EstimatorKind::depth_weighted: {
        double sum = 0.0;
        for (const auto& b : block) {
            auto lx = ctx.left_depths.find(b.left);
            auto ry = ctx.right_depths.find(b.right);
            if (lx == ctx.left_depths.end() || ry == ctx.right_depths.end())
                throw MissingDepthError("no depth for pair (" + std::to_string(b.left) +
                                        "," + std::to_string(b.right) + ")");
            sum += std::ldexp(b.value, -(lx->second + ry->second));
        }
        return sum;
    }
    }
    throw ParseError("bad estimator kind");
}

BoundsWitness check_estimator_bounds(EstimatorKind e, const SubtreeContext& ctx,
                                     const std::vector<BlockEntry>& block) {
    const double v = estimate_height(e, ctx, block);
    double lo = block.front().value, hi = block.front().value;
    for (const auto& b : block) {
        lo = std::min(lo, b.value);
        hi = std::max(hi, b.value);
    }
    return {v, lo, hi, lo <= v && v <= hi};
}

double weight_sum(const SubtreeContext& ctx) {
    double left = 0.0, right = 0.0;
    for (const auto& [leaf, d] : ctx.left_depths)
        left += std::ldexp(1.0, -d);
    for (const auto& [leaf, d] : ctx.right_depths)
        right += std::ldexp(1.0, -d);
    return left * right;
}

} // namespace hclust
