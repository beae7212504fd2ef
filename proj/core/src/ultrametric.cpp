#include "hclust/ultrametric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <tuple>

#include "hclust/errors.hpp"

namespace hclust {

UltrametricWitness is_ultrametric(const DissimilarityMatrix& d, double tol) {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j)
                    continue;
                if (d.at(i, j) > std::max(d.at(i, k), d.at(j, k)) + tol) {
                    UltrametricWitness w;
                    w.ok = false;
                    w.triple = {i, j, k};
                    w.values = {d.at(i, j), d.at(i, k), d.at(j, k)};
                    return w;
                }
            }
    return {};
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

std::pair<Hierarchy, HeightFunction> hierarchy_from_ultrametric(
    const DissimilarityMatrix& d, double tol) {
    const auto w = is_ultrametric(d, tol);
    if (!w.ok)
        throw NotUltrametricError(
            "three-point condition fails at (" + d.label(w.triple[0]) + "," +
            d.label(w.triple[1]) + "," + d.label(w.triple[2]) + "): " +
            std::to_string(w.values[0]) + " > max(" + std::to_string(w.values[1]) +
            "," + std::to_string(w.values[2]) + ")");

    const int n = static_cast<int>(d.size());
    if (n == 1) {
        Hierarchy t(d.labels(), {});
        return {t, HeightFunction{{0.0}}};
    }

    std::vector<std::tuple<double, int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            pairs.emplace_back(d.at(i, j), i, j);
    std::sort(pairs.begin(), pairs.end());

    UnionFind uf(n);
    std::vector<int> cluster_node(n);   // representative leaf -> current tree node
    std::vector<int> cluster_min(n);    // representative leaf -> smallest leaf index
    std::iota(cluster_node.begin(), cluster_node.end(), 0);
    std::iota(cluster_min.begin(), cluster_min.end(), 0);

    std::vector<std::array<int, 2>> children;
    HeightFunction h;
    h.by_node.assign(2 * n - 1, 0.0);

    for (const auto& [v, i, j] : pairs) {
        int ri = uf.find(i), rj = uf.find(j);
        if (ri == rj)
            continue;
        // left child is the cluster holding the smaller leaf index
        if (cluster_min[rj] < cluster_min[ri])
            std::swap(ri, rj);
        const int node = n + static_cast<int>(children.size());
        children.push_back({cluster_node[ri], cluster_node[rj]});
        h.by_node[node] = v;
        uf.unite(ri, rj);
        const int r = uf.find(ri);
        cluster_node[r] = node;
        cluster_min[r] = std::min(cluster_min[ri], cluster_min[rj]);
    }

    return {Hierarchy(d.labels(), std::move(children)), std::move(h)};
}

DissimilarityMatrix realize_dissimilarity(const Hierarchy& t,
                                          const HeightFunction& h) {
    for (int s : t.internal_vertices()) {
        if (!(h.by_node[s] > 0.0))
            throw HeightOrderError("height at vertex " + std::to_string(s) +
                                   " must be positive");
        const int p = t.parent(s);
        if (p != -1 && h.by_node[s] > h.by_node[p])
            throw HeightOrderError("height increases from vertex " + std::to_string(p) +
                                   " to child " + std::to_string(s));
    }
    const int n = t.n_leaves();
    std::vector<std::vector<double>> values(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            values[i][j] = values[j][i] = h.by_node[t.mrca(i, j)];
    return DissimilarityMatrix::build(t.labels(), values);
}

PlantedUltrametric random_planted_ultrametric(int n, std::uint64_t seed,
                                              double lo, double hi) {
    if (n < 2)
        throw BadRangeError("need at least 2 objects");
    if (!(0.0 < lo && lo < hi))
        throw BadRangeError("height range requires 0 < lo < hi");

    std::mt19937_64 rng(seed);
    Hierarchy t = random_hierarchy(numbered_labels(static_cast<std::size_t>(n)), rng);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    HeightFunction h;
    h.by_node.assign(t.n_nodes(), 0.0);
    // strictly decreasing along every root-to-leaf path, all in (lo, hi)
    std::vector<int> stack{t.root()};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        if (t.is_leaf(v))
            continue;
        const int p = t.parent(v);
        const double ceiling = p == -1 ? hi : h.by_node[p];
        double x;
        do {
            x = lo + unit(rng) * (ceiling - lo);
        } while (!(lo < x && x < ceiling));
        h.by_node[v] = x;
        stack.push_back(t.left_child(v));
        stack.push_back(t.right_child(v));
    }

    DissimilarityMatrix m = realize_dissimilarity(t, h);
    return {std::move(m), std::move(t), std::move(h)};
}

DissimilarityMatrix random_ultrametric(int n, std::uint64_t seed,
                                       double lo, double hi) {
    return random_planted_ultrametric(n, seed, lo, hi).matrix;
}

NoiseModel NoiseModel::parse(const std::string& s, std::uint64_t seed) {
    const auto colon = s.find(':');
    if (colon == std::string::npos)
        throw ParseError("noise model must look like kind:param, got '" + s + "'");
    const std::string kind = s.substr(0, colon);
    NoiseModel m;
    m.seed = seed;
    if (kind == "gaussian")
        m.kind = Kind::gaussian;
    else if (kind == "laplace")
        m.kind = Kind::laplace;
    else if (kind == "onesided")
        m.kind = Kind::one_sided;
    else
        throw ParseError("unknown noise kind '" + kind + "'");
    try {
        m.param = std::stod(s.substr(colon + 1));
    } catch (const std::exception&) {
        throw ParseError("bad noise parameter in '" + s + "'");
    }
    if (!(m.param > 0.0))
        throw BadRangeError("noise parameter must be positive");
    return m;
}

std::string NoiseModel::to_string() const {
    const char* k = kind == Kind::gaussian ? "gaussian"
                    : kind == Kind::laplace ? "laplace"
                                            : "onesided";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", param);
    return std::string(k) + ":" + buf;
}

DissimilarityMatrix perturb(const DissimilarityMatrix& d, const NoiseModel& m) {
    std::mt19937_64 rng(m.seed);
    std::normal_distribution<double> gauss(0.0, m.param);
    std::exponential_distribution<double> expo_scale(1.0 / m.param); // laplace halves
    std::exponential_distribution<double> expo_rate(m.param);        // one-sided

    auto draw = [&]() {
        switch (m.kind) {
        case NoiseModel::Kind::gaussian:
            return gauss(rng);
        case NoiseModel::Kind::laplace:
            return expo_scale(rng) - expo_scale(rng);
        case NoiseModel::Kind::one_sided:
            return expo_rate(rng);
        }
        return 0.0;
    };

    const std::size_t n = d.size();
    std::vector<std::vector<double>> values(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = 0.0;
            int attempts = 0;
            do {
                v = d.at(i, j) + draw();
                if (++attempts > 1000)
                    throw ClampError("could not keep entry (" + std::to_string(i) + "," +
                                     std::to_string(j) + ") positive after 1000 draws");
            } while (v <= 0.0);
            values[i][j] = values[j][i] = v;
        }
    return DissimilarityMatrix::build(d.labels(), values, d.strict());
}

} // namespace hclust
