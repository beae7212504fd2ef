#include "hclust/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "hclust/errors.hpp"

namespace hclust {

GammaKind gamma_from_string(const std::string& s) {
    if (s == "dasgupta") return GammaKind::dasgupta;
    if (s == "inverse_product") return GammaKind::inverse_product;
    throw ParseError("unknown gamma weight '" + s + "'");
}

std::string gamma_name(GammaKind g) {
    return g == GammaKind::dasgupta ? "dasgupta" : "inverse_product";
}

double gamma_weight(GammaKind g, std::size_t a, std::size_t b) {
    switch (g) {
    case GammaKind::dasgupta:
        return -static_cast<double>(a + b);
    case GammaKind::inverse_product:
        return 1.0 / (static_cast<double>(a) * static_cast<double>(b));
    }
    throw ParseError("bad gamma kind");
}

namespace {

// leaf id of t -> row of d; requires identical label sets
std::vector<std::size_t> matrix_index_for(const Hierarchy& t,
                                          const DissimilarityMatrix& d) {
    if (static_cast<std::size_t>(t.n_leaves()) != d.size())
        throw LeafMismatchError("tree has " + std::to_string(t.n_leaves()) +
                                " leaves, matrix has " + std::to_string(d.size()));
    std::vector<std::size_t> idx(t.n_leaves());
    for (int i = 0; i < t.n_leaves(); ++i) {
        if (!d.has_label(t.label(i)))
            throw LeafMismatchError("leaf '" + t.label(i) + "' missing from matrix");
        idx[i] = d.index_of(t.label(i));
    }
    return idx;
}

std::vector<std::string> leaf_labels(const Hierarchy& t, const std::vector<int>& leaves) {
    std::vector<std::string> out;
    out.reserve(leaves.size());
    for (int l : leaves)
        out.push_back(t.label(l));
    return out;
}

} // namespace

CostReport length_cost(const Hierarchy& t, const DissimilarityMatrix& d,
                       EstimatorKind e) {
    const auto idx = matrix_index_for(t, d);
    CostReport report;
    for (int s : t.internal_vertices()) {
        SubtreeContext ctx;
        if (e == EstimatorKind::depth_weighted)
            ctx = subtree_context(t, s);
        const auto block = cross_block(t, s, d, idx);
        VertexCost vc;
        vc.vertex = s;
        vc.leaves_left = leaf_labels(t, t.leaves_below(t.left_child(s)));
        vc.leaves_right = leaf_labels(t, t.leaves_below(t.right_child(s)));
        vc.value = estimate_height(e, ctx, block);
        report.total += vc.value;
        report.per_vertex.push_back(std::move(vc));
    }
    return report;
}

CostReport gamma_cost(const Hierarchy& t, const DissimilarityMatrix& d,
                      GammaKind g) {
    const auto idx = matrix_index_for(t, d);
    CostReport report;
    for (int s : t.internal_vertices()) {
        const auto& left = t.leaves_below(t.left_child(s));
        const auto& right = t.leaves_below(t.right_child(s));
        double sum = 0.0;
        for (int x : left)
            for (int y : right)
                sum += d.at(idx[x], idx[y]);
        VertexCost vc;
        vc.vertex = s;
        vc.leaves_left = leaf_labels(t, left);
        vc.leaves_right = leaf_labels(t, right);
        vc.value = gamma_weight(g, left.size(), right.size()) * sum;
        report.total += vc.value;
        report.per_vertex.push_back(std::move(vc));
    }
    return report;
}

CostReport extended_length_cost(const ExtendedHierarchy& t,
                                const DissimilarityMatrix& d, EstimatorKind e) {
    for (const auto& l : t.leaf_labels())
        if (!d.has_label(l))
            throw LeafMismatchError("leaf '" + l + "' missing from matrix");

    CostReport report;
    for (int v = 0; v < t.n_nodes(); ++v) {
        if (t.is_leaf(v) || t.is_muted(v))
            continue;
        const auto& left = t.leaf_labels_below(t.node(v).children[0]);
        const auto& right = t.leaf_labels_below(t.node(v).children[1]);

        std::vector<BlockEntry> block;
        block.reserve(left.size() * right.size());
        SubtreeContext ctx;
        // key block entries by matrix row; depths (used by depth_weighted
        // only) skip muted vertices, i.e. they are distances in the
        // muted-suppressed hierarchy
        if (e == EstimatorKind::depth_weighted) {
            for (int side = 0; side < 2; ++side) {
                auto& depths = side == 0 ? ctx.left_depths : ctx.right_depths;
                std::function<void(int, int)> walk = [&](int u, int depth) {
                    if (t.is_leaf(u)) {
                        depths[static_cast<int>(d.index_of(t.node(u).leaf_label))] = depth;
                        return;
                    }
                    const int step = t.is_muted(u) ? 0 : 1;
                    for (int c : t.node(u).children)
                        walk(c, depth + step);
                };
                walk(t.node(v).children[side], 0);
            }
        }
        for (const auto& x : left)
            for (const auto& y : right) {
                const auto ix = d.index_of(x);
                const auto iy = d.index_of(y);
                block.push_back({static_cast<int>(ix), static_cast<int>(iy), d.at(ix, iy)});
            }

        VertexCost vc;
        vc.vertex = t.node(v).orig;
        vc.leaves_left = left;
        vc.leaves_right = right;
        vc.value = estimate_height(e, ctx, block);
        report.total += vc.value;
        report.per_vertex.push_back(std::move(vc));
    }
    return report;
}

double total_length(const Hierarchy& t, const HeightFunction& h, double m) {
    auto height = [&](int v) { return t.is_leaf(v) ? 0.0 : h.by_node[v]; };
    for (int s : t.internal_vertices()) {
        for (int c : {t.left_child(s), t.right_child(s)})
            if (height(c) > height(s))
                throw HeightOrderError("child height " + std::to_string(height(c)) +
                                       " exceeds parent height " +
                                       std::to_string(height(s)));
    }
    if (m <= height(t.root()))
        throw MTooSmallError("M = " + std::to_string(m) + " must exceed root height " +
                             std::to_string(height(t.root())));
    double total = m - height(t.root());
    for (int s : t.internal_vertices())
        total += (height(s) - height(t.left_child(s))) +
                 (height(s) - height(t.right_child(s)));
    return total;
}

CostReport evaluate_objective(const Hierarchy& t, const DissimilarityMatrix& d,
                              const Objective& objective) {
    return std::visit(
        [&](auto kind) {
            if constexpr (std::is_same_v<decltype(kind), EstimatorKind>)
                return length_cost(t, d, kind);
            else
                return gamma_cost(t, d, kind);
        },
        objective);
}

BruteForceResult optimal_hierarchy_bruteforce(const DissimilarityMatrix& d,
                                              const Objective& objective,
                                              int cap, double tie_tol) {
    const auto& labels = d.labels();
    std::optional<Hierarchy> best;
    CostReport best_report;
    double best_total = 0.0;
    std::uint64_t scanned = 0;

    for_each_hierarchy(
        labels,
        [&](const Hierarchy& t) {
            ++scanned;
            CostReport r = evaluate_objective(t, d, objective);
            if (!best || r.total < best_total) {
                best = t;
                best_total = r.total;
                best_report = std::move(r);
            }
        },
        cap);

    // second pass for the tie count against the final minimum
    std::uint64_t ties = 0;
    for_each_hierarchy(
        labels,
        [&](const Hierarchy& t) {
            if (evaluate_objective(t, d, objective).total <= best_total + tie_tol)
                ++ties;
        },
        cap);

    return {std::move(*best), std::move(best_report), ties, scanned};
}

} // namespace hclust
