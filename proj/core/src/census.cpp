#include "hclust/census.hpp"

#include <algorithm>

#include "hclust/errors.hpp"

namespace hclust {

std::string vertex_class_name(VertexClass c) {
    switch (c) {
    case VertexClass::one_side: return "r1";
    case VertexClass::both_twice_muted: return "r2_tm";
    case VertexClass::both_once_muted: return "r2_om";
    case VertexClass::both_neither_muted: return "r2_nm";
    }
    return "?";
}

namespace {

// side[leaf] is +1 for L+, -1 for L-; validates the partition
std::vector<int> side_of_leaves(const Hierarchy& t,
                                const std::vector<std::string>& l_minus,
                                const std::vector<std::string>& l_plus) {
    std::vector<int> side(t.n_leaves(), 0);
    for (const auto& l : l_minus) {
        const int i = t.leaf_index(l);
        if (side[i] != 0)
            throw NotAPartitionError("leaf '" + l + "' listed twice");
        side[i] = -1;
    }
    for (const auto& l : l_plus) {
        const int i = t.leaf_index(l);
        if (side[i] != 0)
            throw NotAPartitionError("leaf '" + l + "' on both sides");
        side[i] = +1;
    }
    for (int i = 0; i < t.n_leaves(); ++i)
        if (side[i] == 0)
            throw NotAPartitionError("leaf '" + t.label(i) + "' on neither side");
    if (l_minus.empty() || l_plus.empty())
        throw NotAPartitionError("both sides must be nonempty");
    return side;
}

struct SideTouch {
    bool minus = false;
    bool plus = false;
};

SideTouch touch(const Hierarchy& t, int v, const std::vector<int>& side) {
    SideTouch s;
    for (int leaf : t.leaves_below(v)) {
        if (side[leaf] < 0)
            s.minus = true;
        else
            s.plus = true;
    }
    return s;
}

} // namespace

bool check_split_condition(const Hierarchy& t,
                           const std::vector<std::string>& l_minus,
                           const std::vector<std::string>& l_plus) {
    const auto side = side_of_leaves(t, l_minus, l_plus);
    for (int s : t.internal_vertices()) {
        const auto st = touch(t, s, side);
        // leaf set equals one side iff it touches exactly that side and
        // has that side's full cardinality
        if (st.minus && !st.plus &&
            t.leaves_below(s).size() == l_minus.size())
            return false;
        if (st.plus && !st.minus &&
            t.leaves_below(s).size() == l_plus.size())
            return false;
    }
    return true;
}

VertexCensus classify_vertices(const Hierarchy& t,
                               const std::vector<std::string>& l_minus,
                               const std::vector<std::string>& l_plus) {
    const auto side = side_of_leaves(t, l_minus, l_plus);
    VertexCensus census;
    for (int s : t.internal_vertices()) {
        const auto a = touch(t, t.left_child(s), side);
        const auto b = touch(t, t.right_child(s), side);
        const bool a_both = a.minus && a.plus;
        const bool b_both = b.minus && b.plus;

        VertexClass cls;
        if (a_both && b_both) {
            cls = VertexClass::both_neither_muted;
        } else if (a_both || b_both) {
            cls = VertexClass::both_once_muted;
        } else if (a.minus != b.minus) {
            // children entirely on different sides
            cls = VertexClass::both_twice_muted;
        } else {
            cls = VertexClass::one_side;
        }
        census.membership[s] = cls;
        switch (cls) {
        case VertexClass::one_side: ++census.r1; break;
        case VertexClass::both_twice_muted: ++census.r2_tm; break;
        case VertexClass::both_once_muted: ++census.r2_om; break;
        case VertexClass::both_neither_muted: ++census.r2_nm; break;
        }
    }
    return census;
}

std::map<int, bool> tag_neither_muted_minimum_side(
    const Hierarchy& t, const DissimilarityMatrix& d,
    const std::vector<std::string>& l_minus,
    const std::vector<std::string>& l_plus) {
    const auto side = side_of_leaves(t, l_minus, l_plus);
    const auto census = classify_vertices(t, l_minus, l_plus);

    std::map<int, bool> tags;
    for (const auto& [s, cls] : census.membership) {
        if (cls != VertexClass::both_neither_muted)
            continue;
        double best = -1.0;
        bool best_minus = true;
        for (int x : t.leaves_below(t.left_child(s)))
            for (int y : t.leaves_below(t.right_child(s))) {
                const double v = d.at(d.index_of(t.label(x)), d.index_of(t.label(y)));
                if (best < 0.0 || v < best) {
                    best = v;
                    best_minus = side[x] < 0 && side[y] < 0;
                }
            }
        tags[s] = best_minus;
    }
    return tags;
}

} // namespace hclust
