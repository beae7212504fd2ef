#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace hclust {

/// Rooted binary leaf-labeled tree. Node ids: leaves are 0..n-1 (in label
/// order), internal vertices are n..2n-2. Immutable after construction.
/// For n = 1 the single leaf doubles as the root.
class Hierarchy {
public:
    /// `children[k]` are the two child node ids of internal vertex n+k.
    Hierarchy(std::vector<std::string> labels,
              std::vector<std::array<int, 2>> children);

    int n_leaves() const noexcept { return static_cast<int>(labels_.size()); }
    int n_nodes() const noexcept { return 2 * n_leaves() - 1; }
    int n_internal() const noexcept { return n_leaves() - 1; }
    int root() const noexcept { return root_; }

    bool is_leaf(int v) const noexcept { return v < n_leaves(); }
    bool is_internal(int v) const noexcept { return v >= n_leaves(); }
    int left_child(int v) const { return children_[v - n_leaves()][0]; }
    int right_child(int v) const { return children_[v - n_leaves()][1]; }
    int parent(int v) const { return parent_[v]; }
    int depth(int v) const { return depth_[v]; }

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(int leaf) const { return labels_[leaf]; }
    /// Throws UnknownLeafError.
    int leaf_index(const std::string& label) const;

    /// Sorted leaf indices of the subtree rooted at v.
    const std::vector<int>& leaves_below(int v) const { return leaves_below_[v]; }

    /// Internal vertex ids, n..2n-2 (empty when n = 1).
    std::vector<int> internal_vertices() const;

    /// Most recent common ancestor of two distinct leaves.
    int mrca(int x, int y) const;
    int mrca(const std::string& x, const std::string& y) const;

    /// True iff same labels, same parent/child structure node-for-node.
    bool operator==(const Hierarchy& other) const;

private:
    std::vector<std::string> labels_;
    std::vector<std::array<int, 2>> children_; // indexed by v - n
    std::vector<int> parent_;                  // -1 at root
    std::vector<int> depth_;
    std::vector<std::vector<int>> leaves_below_;
    int root_ = 0;
};

/// Positive heights on internal vertices; leaves sit at height 0.
/// Indexed by node id of the hierarchy the function was built for.
struct HeightFunction {
    std::vector<double> by_node;

    double at(int v) const { return by_node[v]; }
};

/// (2n-3)!! — the number of rooted binary leaf-labeled trees on n >= 2 leaves.
std::uint64_t count_hierarchies(int n);

/// Streams every hierarchy on the given labels exactly once, in the canonical
/// insertion order (leaf k+1 attached to each edge of each tree on k leaves,
/// root edge last). Throws TooManyLeavesError when n exceeds `cap`.
void for_each_hierarchy(const std::vector<std::string>& labels,
                        const std::function<void(const Hierarchy&)>& fn,
                        int cap = 10);

/// Uniform random tree shape via random sequential leaf attachment.
Hierarchy random_hierarchy(const std::vector<std::string>& labels,
                           std::mt19937_64& rng);

/// Rooted tree whose internal vertices may have one or two children; a
/// one-child internal vertex is "muted". Produced by restriction. Vertices
/// remember the node id they came from in the original hierarchy.
class ExtendedHierarchy {
public:
    struct Node {
        int parent = -1;
        std::vector<int> children;   // empty for leaves, size 1 or 2 otherwise
        int orig = -1;               // node id in the source hierarchy
        std::string leaf_label;      // nonempty iff leaf
    };

    ExtendedHierarchy(std::vector<Node> nodes, int root);

    /// View a hierarchy as an extended hierarchy with no muted vertices.
    static ExtendedHierarchy from_hierarchy(const Hierarchy& t);

    int n_nodes() const noexcept { return static_cast<int>(nodes_.size()); }
    int root() const noexcept { return root_; }
    const Node& node(int v) const { return nodes_[v]; }
    bool is_leaf(int v) const { return nodes_[v].children.empty(); }
    bool is_muted(int v) const { return nodes_[v].children.size() == 1; }

    int n_leaves() const noexcept { return n_leaves_; }
    /// Leaf labels of the subtree at v, sorted.
    const std::vector<std::string>& leaf_labels_below(int v) const {
        return leaf_labels_below_[v];
    }
    /// All leaf labels, sorted.
    const std::vector<std::string>& leaf_labels() const {
        return leaf_labels_below_[root_];
    }

    /// True iff the original vertex `orig_id` survives in this restriction.
    bool contains_orig(int orig_id) const;
    /// Muted flag of the surviving copy of `orig_id`; false when absent.
    bool orig_is_muted(int orig_id) const;

    /// Suppress muted vertices, yielding a plain binary hierarchy.
    Hierarchy suppress_muted() const;

private:
    std::vector<Node> nodes_;
    std::vector<std::vector<std::string>> leaf_labels_below_;
    std::vector<int> orig_to_node_; // -1 where absent
    int root_ = 0;
    int n_leaves_ = 0;
};

/// Restriction of a hierarchy to a leaf subset: keeps exactly the vertices
/// and edges on paths between two kept leaves. |subset| = 1 yields the single
/// leaf.
ExtendedHierarchy restrict_hierarchy(const Hierarchy& t,
                                     const std::vector<std::string>& subset);

} // namespace hclust
