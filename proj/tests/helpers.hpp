#pragma once

#include <random>
#include <vector>

#include "hclust/dissimilarity.hpp"
#include "hclust/newick.hpp"

namespace hclust::testing {

// d(1,2)=1, d(3,4)=2, all cross pairs 4 — an ultrametric on 4 objects
inline DissimilarityMatrix make_u4() {
    return DissimilarityMatrix::build(
        {"1", "2", "3", "4"},
        {{0, 1, 4, 4}, {1, 0, 4, 4}, {4, 4, 0, 2}, {4, 4, 2, 0}});
}

inline Hierarchy tree(const std::string& newick) { return parse_newick(newick); }

// symmetric positive matrix with entries in (0.5, 10.5)
inline DissimilarityMatrix random_matrix(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> value(0.5, 10.5);
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            v[i][j] = v[j][i] = value(rng);
    return DissimilarityMatrix::build(numbered_labels(n), v);
}

} // namespace hclust::testing
