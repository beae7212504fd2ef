#include "hclust/algorithms.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "hclust/errors.hpp"

namespace hclust {

namespace {

struct Cluster {
    int node;                        // node id in the tree under construction
    std::vector<std::size_t> leaves; // matrix indices, sorted
    std::vector<int> depths;         // aligned with leaves; distance from node
};

std::vector<std::string> labels_of(const DissimilarityMatrix& d,
                                   const std::vector<std::size_t>& idx) {
    std::vector<std::string> out;
    out.reserve(idx.size());
    for (auto i : idx)
        out.push_back(d.label(i));
    return out;
}

} // namespace

double merge_criterion_recomputed(const DissimilarityMatrix& d, EstimatorKind e,
                                  const std::vector<std::size_t>& left,
                                  const std::vector<std::size_t>& right,
                                  const std::vector<int>& depths_left,
                                  const std::vector<int>& depths_right) {
    SubtreeContext ctx;
    for (std::size_t i = 0; i < left.size(); ++i)
        ctx.left_depths[static_cast<int>(left[i])] = depths_left[i];
    for (std::size_t i = 0; i < right.size(); ++i)
        ctx.right_depths[static_cast<int>(right[i])] = depths_right[i];
    std::vector<BlockEntry> block;
    block.reserve(left.size() * right.size());
    for (auto x : left)
        for (auto y : right)
            block.push_back({static_cast<int>(x), static_cast<int>(y), d.at(x, y)});
    return estimate_height(e, ctx, block);
}

std::pair<Hierarchy, MergeTrace> agglomerate(const DissimilarityMatrix& d,
                                             EstimatorKind e) {
    const int n = static_cast<int>(d.size());
    if (n == 1)
        return {Hierarchy(d.labels(), {}), MergeTrace{}};

    std::vector<Cluster> clusters(n);
    for (int i = 0; i < n; ++i)
        clusters[i] = {i, {static_cast<std::size_t>(i)}, {0}};

    // criterion between active clusters; mean additionally tracks raw sums
    const std::size_t cap = clusters.size();
    std::vector<double> crit(cap * cap, 0.0), sums(cap * cap, 0.0);
    auto at = [cap](std::size_t a, std::size_t b) { return a * cap + b; };
    for (std::size_t i = 0; i < cap; ++i)
        for (std::size_t j = 0; j < cap; ++j) {
            crit[at(i, j)] = d.at(i, j);
            sums[at(i, j)] = d.at(i, j);
        }

    std::vector<std::array<int, 2>> children;
    children.reserve(n - 1);
    MergeTrace trace;
    std::vector<std::size_t> active(cap);
    std::iota(active.begin(), active.end(), 0);

    while (active.size() > 1) {
        // smallest criterion; ties on the lexicographically smallest
        // (left, right) leaf-set pair
        std::size_t best_a = 0, best_b = 0;
        double best_v = std::numeric_limits<double>::infinity();
        const std::vector<std::size_t>* best_left = nullptr;
        const std::vector<std::size_t>* best_right = nullptr;
        for (std::size_t p = 0; p < active.size(); ++p)
            for (std::size_t q = p + 1; q < active.size(); ++q) {
                const std::size_t a = active[p], b = active[q];
                const double v = crit[at(a, b)];
                if (v > best_v)
                    continue;
                const auto *l = &clusters[a].leaves, *r = &clusters[b].leaves;
                std::size_t la = a, rb = b;
                if (*r < *l) {
                    std::swap(l, r);
                    std::swap(la, rb);
                }
                if (v < best_v || std::make_pair(*l, *r) <
                                      std::make_pair(*best_left, *best_right)) {
                    best_v = v;
                    best_a = la;
                    best_b = rb;
                    best_left = l;
                    best_right = r;
                }
            }

        Cluster& lc = clusters[best_a];
        Cluster& rc = clusters[best_b];
        trace.steps.push_back({labels_of(d, lc.leaves), labels_of(d, rc.leaves), best_v});

        const int node = n + static_cast<int>(children.size());
        children.push_back({lc.node, rc.node});

        Cluster merged;
        merged.node = node;
        merged.leaves.resize(lc.leaves.size() + rc.leaves.size());
        std::merge(lc.leaves.begin(), lc.leaves.end(), rc.leaves.begin(),
                   rc.leaves.end(), merged.leaves.begin());
        merged.depths.resize(merged.leaves.size());
        for (std::size_t i = 0; i < merged.leaves.size(); ++i) {
            const auto leaf = merged.leaves[i];
            const Cluster& src =
                std::binary_search(lc.leaves.begin(), lc.leaves.end(), leaf) ? lc : rc;
            const auto pos = std::lower_bound(src.leaves.begin(), src.leaves.end(), leaf) -
                             src.leaves.begin();
            merged.depths[i] = src.depths[pos] + 1;
        }

        // update criteria of the merged cluster against every other one
        for (std::size_t c : active) {
            if (c == best_a || c == best_b)
                continue;
            double v = 0.0;
            switch (e) {
            case EstimatorKind::mean: {
                const double s = sums[at(best_a, c)] + sums[at(best_b, c)];
                sums[at(best_a, c)] = sums[at(c, best_a)] = s;
                v = s / (static_cast<double>(merged.leaves.size()) *
                         static_cast<double>(clusters[c].leaves.size()));
                break;
            }
            case EstimatorKind::min:
                v = std::min(crit[at(best_a, c)], crit[at(best_b, c)]);
                break;
            case EstimatorKind::max:
                v = std::max(crit[at(best_a, c)], crit[at(best_b, c)]);
                break;
            case EstimatorKind::depth_weighted:
                v = 0.5 * (crit[at(best_a, c)] + crit[at(best_b, c)]);
                break;
            case EstimatorKind::median:
                v = merge_criterion_recomputed(d, e, merged.leaves,
                                               clusters[c].leaves, merged.depths,
                                               clusters[c].depths);
                break;
            }
            crit[at(best_a, c)] = crit[at(c, best_a)] = v;
        }

        clusters[best_a] = std::move(merged);
        active.erase(std::find(active.begin(), active.end(), best_b));
    }

    return {Hierarchy(d.labels(), std::move(children)), std::move(trace)};
}

namespace {

double cross_sum(const DissimilarityMatrix& d, const std::vector<char>& in_b) {
    const std::size_t n = d.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (in_b[i] != in_b[j])
                s += d.at(i, j);
    return s;
}

Cut make_cut(const DissimilarityMatrix& d, const std::vector<char>& in_b,
             double mean) {
    Cut cut;
    cut.mean = mean;
    for (std::size_t i = 0; i < d.size(); ++i)
        (in_b[i] ? cut.side_b : cut.side_a).push_back(i);
    if (!cut.side_a.empty() && !cut.side_b.empty() && cut.side_b.front() == 0)
        std::swap(cut.side_a, cut.side_b);
    return cut;
}

} // namespace

Cut sparsest_cut_exact(const DissimilarityMatrix& d, int cap) {
    const int n = static_cast<int>(d.size());
    if (n < 2)
        throw EmptySubsetError("cut needs at least 2 objects");
    if (n > cap)
        throw TooManyLeavesError("exact cut over " + std::to_string(n) +
                                 " objects exceeds cap " + std::to_string(cap));

    std::vector<char> in_b(n, 0), best_b;
    double best_mean = -1.0;
    std::vector<std::size_t> best_a;
    const std::uint64_t masks = (1ull << (n - 1)) - 1;
    for (std::uint64_t mask = 1; mask <= masks; ++mask) {
        for (int i = 1; i < n; ++i)
            in_b[i] = (mask >> (i - 1)) & 1u;
        const double s = cross_sum(d, in_b);
        std::size_t a_size = 0;
        for (char c : in_b)
            a_size += !c;
        const double mean =
            s / (static_cast<double>(a_size) * static_cast<double>(n - a_size));
        if (mean < best_mean)
            continue;
        std::vector<std::size_t> a;
        for (int i = 0; i < n; ++i)
            if (!in_b[i])
                a.push_back(i);
        if (mean > best_mean || a < best_a) {
            best_mean = mean;
            best_a = std::move(a);
            best_b = in_b;
        }
    }
    return make_cut(d, best_b, best_mean);
}

Cut sparsest_cut_local_search(const DissimilarityMatrix& d,
                              const CutSolverPolicy& policy) {
    const std::size_t n = d.size();
    if (n < 2)
        throw EmptySubsetError("cut needs at least 2 objects");
    if (n == 2)
        return make_cut(d, {0, 1}, d.at(0, 1));

    Cut best;
    best.mean = -1.0;

    for (int r = 0; r < std::max(1, policy.restarts); ++r) {
        std::seed_seq seq{policy.seed, static_cast<std::uint64_t>(r)};
        std::mt19937_64 rng(seq);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);

        std::vector<char> in_b(n, 0);
        for (std::size_t i = n / 2; i < n; ++i)
            in_b[perm[i]] = 1;

        // row[x][side]: sum of d(x, y) over y currently on that side
        std::vector<double> row_a(n, 0.0), row_b(n, 0.0);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                (in_b[y] ? row_b[x] : row_a[x]) += d.at(x, y);
        std::size_t size_a = n - n / 2, size_b = n / 2;
        double s = cross_sum(d, in_b);
        double mean = s / (static_cast<double>(size_a) * static_cast<double>(size_b));

        auto apply_move = [&](std::size_t x) {
            const bool to_b = !in_b[x];
            s += to_b ? row_a[x] - row_b[x] : row_b[x] - row_a[x];
            in_b[x] = to_b;
            size_a += to_b ? -1 : 1;
            size_b += to_b ? 1 : -1;
            for (std::size_t y = 0; y < n; ++y) {
                if (y == x)
                    continue;
                if (to_b) {
                    row_a[y] -= d.at(x, y);
                    row_b[y] += d.at(x, y);
                } else {
                    row_a[y] += d.at(x, y);
                    row_b[y] -= d.at(x, y);
                }
            }
            mean = s / (static_cast<double>(size_a) * static_cast<double>(size_b));
        };

        for (;;) {
            // best single-element relocation
            double move_mean = mean;
            std::size_t move_x = n;
            for (std::size_t x = 0; x < n; ++x) {
                const bool from_b = in_b[x];
                if ((from_b ? size_b : size_a) <= 1)
                    continue;
                const double s2 = s + (from_b ? row_b[x] - row_a[x]
                                              : row_a[x] - row_b[x]);
                const double na = size_a + (from_b ? 1.0 : -1.0);
                const double nb = size_b + (from_b ? -1.0 : 1.0);
                const double m2 = s2 / (na * nb);
                if (m2 > move_mean) {
                    move_mean = m2;
                    move_x = x;
                }
            }
            if (move_x < n) {
                apply_move(move_x);
                continue;
            }

            // plateau: best improving swap
            double swap_mean = mean;
            std::size_t swap_x = n, swap_y = n;
            for (std::size_t x = 0; x < n; ++x) {
                if (in_b[x])
                    continue;
                for (std::size_t y = 0; y < n; ++y) {
                    if (!in_b[y])
                        continue;
                    const double s2 = s + row_a[x] - row_b[x] + row_b[y] - row_a[y] +
                                      2.0 * d.at(x, y);
                    const double m2 =
                        s2 / (static_cast<double>(size_a) * static_cast<double>(size_b));
                    if (m2 > swap_mean) {
                        swap_mean = m2;
                        swap_x = x;
                        swap_y = y;
                    }
                }
            }
            if (swap_x < n) {
                apply_move(swap_x);
                apply_move(swap_y);
                continue;
            }
            break;
        }

        if (mean > best.mean)
            best = make_cut(d, in_b, mean);
    }
    return best;
}

namespace {

struct DivisiveBuilder {
    const DissimilarityMatrix& d;
    const CutSolverPolicy& policy;
    std::vector<std::array<int, 2>> children;
    MergeTrace trace;
    int next_internal;

    int build(const std::vector<std::size_t>& subset) {
        if (subset.size() == 1)
            return static_cast<int>(subset.front());

        const DissimilarityMatrix sub = d.restrict_to_indices(subset);
        const Cut cut = static_cast<int>(subset.size()) <= policy.exact_cap
                            ? sparsest_cut_exact(sub, policy.exact_cap)
                            : sparsest_cut_local_search(sub, policy);

        // restriction preserves order, so sub index k is subset_sorted[k]
        std::vector<std::size_t> sorted(subset);
        std::sort(sorted.begin(), sorted.end());
        std::vector<std::size_t> left, right;
        for (auto k : cut.side_a)
            left.push_back(sorted[k]);
        for (auto k : cut.side_b)
            right.push_back(sorted[k]);

        const int node = next_internal++;
        const std::size_t slot = children.size();
        children.push_back({-1, -1});
        trace.steps.push_back({labels_of(d, left), labels_of(d, right), cut.mean});
        children[slot][0] = build(left);
        children[slot][1] = build(right);
        return node;
    }
};

} // namespace

std::pair<Hierarchy, MergeTrace> recursive_sparsest_cut(
    const DissimilarityMatrix& d, const CutSolverPolicy& policy) {
    const int n = static_cast<int>(d.size());
    if (n == 1)
        return {Hierarchy(d.labels(), {}), MergeTrace{}};

    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    DivisiveBuilder builder{d, policy, {}, {}, n};
    builder.build(all);
    return {Hierarchy(d.labels(), std::move(builder.children)),
            std::move(builder.trace)};
}

} // namespace hclust
