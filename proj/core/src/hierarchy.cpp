#include "hclust/hierarchy.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "hclust/errors.hpp"

namespace hclust {

Hierarchy::Hierarchy(std::vector<std::string> labels,
                     std::vector<std::array<int, 2>> children)
    : labels_(std::move(labels)), children_(std::move(children)) {
    const int n = n_leaves();
    if (n == 0)
        throw EmptySubsetError("hierarchy needs at least one leaf");
    {
        std::unordered_set<std::string> seen;
        for (const auto& l : labels_)
            if (!seen.insert(l).second)
                throw DuplicateLabelError("duplicate leaf label '" + l + "'");
    }
    if (static_cast<int>(children_.size()) != n - 1)
        throw ParseError("expected " + std::to_string(n - 1) + " internal vertices, got " +
                         std::to_string(children_.size()));

    const int total = n_nodes();
    parent_.assign(total, -1);
    for (int k = 0; k < n - 1; ++k) {
        const int v = n + k;
        for (int c : children_[k]) {
            if (c < 0 || c >= total || c == v)
                throw ParseError("bad child id " + std::to_string(c));
            if (parent_[c] != -1)
                throw ParseError("node " + std::to_string(c) + " has two parents");
            parent_[c] = v;
        }
    }

    root_ = -1;
    for (int v = 0; v < total; ++v) {
        if (parent_[v] == -1) {
            if (root_ != -1)
                throw ParseError("disconnected hierarchy: multiple roots");
            root_ = v;
        }
    }
    if (n > 1 && is_leaf(root_))
        throw ParseError("root must be internal when n > 1");

    // depths and leaf sets by one post-order pass
    depth_.assign(total, 0);
    leaves_below_.assign(total, {});
    std::vector<int> order;
    order.reserve(total);
    std::vector<int> stack{root_};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        if (is_internal(v)) {
            for (int c : children_[v - n]) {
                depth_[c] = depth_[v] + 1;
                stack.push_back(c);
            }
        }
    }
    if (static_cast<int>(order.size()) != total)
        throw ParseError("hierarchy is not connected");
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        if (is_leaf(v)) {
            leaves_below_[v] = {v};
        } else {
            const auto& a = leaves_below_[left_child(v)];
            const auto& b = leaves_below_[right_child(v)];
            auto& out = leaves_below_[v];
            out.resize(a.size() + b.size());
            std::merge(a.begin(), a.end(), b.begin(), b.end(), out.begin());
        }
    }
}

int Hierarchy::leaf_index(const std::string& label) const {
    for (int i = 0; i < n_leaves(); ++i)
        if (labels_[i] == label)
            return i;
    throw UnknownLeafError("unknown leaf '" + label + "'");
}

std::vector<int> Hierarchy::internal_vertices() const {
    std::vector<int> v;
    v.reserve(n_internal());
    for (int i = n_leaves(); i < n_nodes(); ++i)
        v.push_back(i);
    return v;
}

int Hierarchy::mrca(int x, int y) const {
    if (x == y)
        throw SameLeafError("mrca of a leaf with itself");
    if (x < 0 || x >= n_leaves() || y < 0 || y >= n_leaves())
        throw UnknownLeafError("leaf index out of range");
    int a = x, b = y;
    while (a != b) {
        if (depth_[a] >= depth_[b])
            a = parent_[a];
        else
            b = parent_[b];
    }
    return a;
}

int Hierarchy::mrca(const std::string& x, const std::string& y) const {
    return mrca(leaf_index(x), leaf_index(y));
}

bool Hierarchy::operator==(const Hierarchy& other) const {
    return labels_ == other.labels_ && children_ == other.children_;
}

std::uint64_t count_hierarchies(int n) {
    std::uint64_t c = 1;
    for (int k = 3; k <= 2 * n - 3; k += 2)
        c *= static_cast<std::uint64_t>(k);
    return c;
}

namespace {

// Mutable scratch tree used by enumeration and random generation.
// Leaves 0..n-1, internal vertex created with leaf k has id n+k-1.
struct ScratchTree {
    int n;
    std::vector<int> parent;
    std::vector<std::array<int, 2>> children; // by internal id - n
    int root;

    explicit ScratchTree(int n_leaves) : n(n_leaves) {
        parent.assign(2 * n - 1, -1);
        children.assign(n - 1, {-1, -1});
        // start with the unique tree on leaves {0,1}
        children[0] = {0, 1};
        parent[0] = n;
        parent[1] = n;
        root = n;
    }

    // Attach leaf k on the edge above node c (or above the root when c == -1).
    void attach(int k, int c) {
        const int m = n + k - 1;
        if (c == -1) {
            children[m - n] = {root, k};
            parent[root] = m;
            parent[k] = m;
            root = m;
        } else {
            const int p = parent[c];
            auto& pc = children[p - n];
            (pc[0] == c ? pc[0] : pc[1]) = m;
            children[m - n] = {c, k};
            parent[c] = m;
            parent[m] = p;
            parent[k] = m;
        }
    }

    void detach(int k, int c) {
        const int m = n + k - 1;
        if (c == -1) {
            root = children[m - n][0];
            parent[root] = -1;
        } else {
            const int p = parent[m];
            auto& pc = children[p - n];
            (pc[0] == m ? pc[0] : pc[1]) = c;
            parent[c] = p;
        }
        parent[k] = -1;
        parent[m] = -1;
        children[m - n] = {-1, -1};
    }

    // Non-root nodes of the tree on leaves {0..k-1}, in increasing id order,
    // followed by -1 for the root-edge attachment. 2k-1 positions.
    std::vector<int> positions(int k) const {
        std::vector<int> pos;
        pos.reserve(2 * k - 1);
        for (int v = 0; v < k; ++v)
            if (v != root)
                pos.push_back(v);
        for (int v = n; v < n + k - 1; ++v)
            if (v != root)
                pos.push_back(v);
        pos.push_back(-1);
        return pos;
    }

    Hierarchy to_hierarchy(const std::vector<std::string>& labels) const {
        return Hierarchy(labels, children);
    }
};

void enumerate_rec(ScratchTree& t, int k,
                   const std::vector<std::string>& labels,
                   const std::function<void(const Hierarchy&)>& fn) {
    if (k == t.n) {
        fn(t.to_hierarchy(labels));
        return;
    }
    for (int c : t.positions(k)) {
        t.attach(k, c);
        enumerate_rec(t, k + 1, labels, fn);
        t.detach(k, c);
    }
}

} // namespace

void for_each_hierarchy(const std::vector<std::string>& labels,
                        const std::function<void(const Hierarchy&)>& fn,
                        int cap) {
    const int n = static_cast<int>(labels.size());
    if (n < 2)
        throw EmptySubsetError("enumeration needs at least 2 leaves");
    if (n > cap)
        throw TooManyLeavesError("enumeration over " + std::to_string(n) +
                                 " leaves exceeds cap " + std::to_string(cap));
    ScratchTree t(n);
    enumerate_rec(t, 2, labels, fn);
}

Hierarchy random_hierarchy(const std::vector<std::string>& labels,
                           std::mt19937_64& rng) {
    const int n = static_cast<int>(labels.size());
    if (n == 1)
        return Hierarchy(labels, {});
    ScratchTree t(n);
    for (int k = 2; k < n; ++k) {
        auto pos = t.positions(k);
        std::uniform_int_distribution<std::size_t> pick(0, pos.size() - 1);
        t.attach(k, pos[pick(rng)]);
    }
    return t.to_hierarchy(labels);
}

ExtendedHierarchy::ExtendedHierarchy(std::vector<Node> nodes, int root)
    : nodes_(std::move(nodes)), root_(root) {
    const int total = n_nodes();
    if (root_ < 0 || root_ >= total)
        throw ParseError("bad extended hierarchy root");

    int max_orig = -1;
    for (const auto& nd : nodes_) {
        if (nd.children.size() > 2)
            throw ParseError("extended hierarchy vertex with more than two children");
        max_orig = std::max(max_orig, nd.orig);
    }
    orig_to_node_.assign(max_orig + 1, -1);
    for (int v = 0; v < total; ++v)
        if (nodes_[v].orig >= 0)
            orig_to_node_[nodes_[v].orig] = v;

    leaf_labels_below_.assign(total, {});
    n_leaves_ = 0;
    // post-order over the tree below root_
    std::vector<int> order, stack{root_};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int c : nodes_[v].children)
            stack.push_back(c);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        if (is_leaf(v)) {
            if (nodes_[v].leaf_label.empty())
                throw ParseError("unlabeled leaf in extended hierarchy");
            leaf_labels_below_[v] = {nodes_[v].leaf_label};
            ++n_leaves_;
        } else {
            std::vector<std::string> acc;
            for (int c : nodes_[v].children) {
                const auto& sub = leaf_labels_below_[c];
                acc.insert(acc.end(), sub.begin(), sub.end());
            }
            std::sort(acc.begin(), acc.end());
            leaf_labels_below_[v] = std::move(acc);
        }
    }
}

ExtendedHierarchy ExtendedHierarchy::from_hierarchy(const Hierarchy& t) {
    std::vector<Node> nodes(t.n_nodes());
    for (int v = 0; v < t.n_nodes(); ++v) {
        nodes[v].orig = v;
        nodes[v].parent = t.n_leaves() == 1 ? -1 : (v == t.root() ? -1 : t.parent(v));
        if (t.is_leaf(v)) {
            nodes[v].leaf_label = t.label(v);
        } else {
            nodes[v].children = {t.left_child(v), t.right_child(v)};
        }
    }
    return ExtendedHierarchy(std::move(nodes), t.root());
}

bool ExtendedHierarchy::contains_orig(int orig_id) const {
    return orig_id >= 0 && orig_id < static_cast<int>(orig_to_node_.size()) &&
           orig_to_node_[orig_id] != -1;
}

bool ExtendedHierarchy::orig_is_muted(int orig_id) const {
    return contains_orig(orig_id) && is_muted(orig_to_node_[orig_id]);
}

Hierarchy ExtendedHierarchy::suppress_muted() const {
    std::vector<std::string> labels = leaf_labels();
    const int n = static_cast<int>(labels.size());
    std::unordered_map<std::string, int> leaf_id;
    for (int i = 0; i < n; ++i)
        leaf_id[labels[i]] = i;

    if (n == 1)
        return Hierarchy(labels, {});

    std::vector<std::array<int, 2>> children;
    children.reserve(n - 1);
    int next_internal = n;

    // resolve(v): new node id of the first non-muted descendant-or-self of v
    std::function<int(int)> resolve = [&](int v) -> int {
        while (is_muted(v))
            v = nodes_[v].children[0];
        if (is_leaf(v))
            return leaf_id.at(nodes_[v].leaf_label);
        const int id = next_internal++;
        children.push_back({-1, -1});
        const int slot = id - n;
        children[slot][0] = resolve(nodes_[v].children[0]);
        children[slot][1] = resolve(nodes_[v].children[1]);
        return id;
    };
    resolve(root_);
    return Hierarchy(std::move(labels), std::move(children));
}

ExtendedHierarchy restrict_hierarchy(const Hierarchy& t,
                                     const std::vector<std::string>& subset) {
    if (subset.empty())
        throw EmptySubsetError("restriction to empty leaf set");
    std::vector<char> kept(t.n_leaves(), 0);
    for (const auto& l : subset) {
        const int i = t.leaf_index(l);
        if (kept[i])
            throw DuplicateLabelError("leaf '" + l + "' repeated in subset");
        kept[i] = 1;
    }
    const int target = static_cast<int>(subset.size());

    if (target == 1) {
        const int leaf = t.leaf_index(subset.front());
        ExtendedHierarchy::Node nd;
        nd.orig = leaf;
        nd.leaf_label = t.label(leaf);
        return ExtendedHierarchy({nd}, 0);
    }

    // count kept leaves below every node
    std::vector<int> cnt(t.n_nodes(), 0);
    for (int v = 0; v < t.n_leaves(); ++v)
        cnt[v] = kept[v];
    for (int v = t.n_leaves(); v < t.n_nodes(); ++v)
        cnt[v] = 0;
    // nodes sorted by decreasing depth give children before parents
    std::vector<int> by_depth(t.n_nodes());
    for (int v = 0; v < t.n_nodes(); ++v)
        by_depth[v] = v;
    std::sort(by_depth.begin(), by_depth.end(),
              [&](int a, int b) { return t.depth(a) > t.depth(b); });
    for (int v : by_depth)
        if (t.is_internal(v))
            cnt[v] = cnt[t.left_child(v)] + cnt[t.right_child(v)];

    // MRCA of the subset: walk up from any kept leaf
    int r = 0;
    while (!kept[r])
        ++r;
    while (cnt[r] < target)
        r = t.parent(r);

    std::vector<ExtendedHierarchy::Node> nodes;
    std::function<int(int, int)> build = [&](int v, int parent_new) -> int {
        const int id = static_cast<int>(nodes.size());
        nodes.push_back({});
        nodes[id].orig = v;
        nodes[id].parent = parent_new;
        if (t.is_leaf(v)) {
            nodes[id].leaf_label = t.label(v);
            return id;
        }
        for (int c : {t.left_child(v), t.right_child(v)})
            if (cnt[c] > 0) {
                // recursion may reallocate `nodes`; resolve the child first
                const int child = build(c, id);
                nodes[id].children.push_back(child);
            }
        return id;
    };
    build(r, -1);
    return ExtendedHierarchy(std::move(nodes), 0);
}

} // namespace hclust
