#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "hclust/dissimilarity.hpp"
#include "hclust/estimators.hpp"
#include "hclust/hierarchy.hpp"

namespace hclust {

/// Weight on child leaf-counts for the gamma-form objective.
enum class GammaKind {
    dasgupta,        // gamma(a,b) = -(a+b)
    inverse_product, // gamma(a,b) = 1/(ab); equals the mean length objective
};

GammaKind gamma_from_string(const std::string& s);
std::string gamma_name(GammaKind g);
double gamma_weight(GammaKind g, std::size_t a, std::size_t b);

/// One internal vertex's contribution, identified by its child leaf labels.
struct VertexCost {
    int vertex = -1; // node id in the scored hierarchy, -1 for extended costs
    std::vector<std::string> leaves_left;
    std::vector<std::string> leaves_right;
    double value = 0.0;
};

struct CostReport {
    double total = 0.0;
    std::vector<VertexCost> per_vertex;
};

/// Gamma(T;d) = sum over internal vertices of the estimator's height on the
/// vertex's cross-block.
CostReport length_cost(const Hierarchy& t, const DissimilarityMatrix& d,
                       EstimatorKind e);

/// Gamma(T;d) = sum of gamma(|A|,|B|) * d(A,B) over internal vertices.
CostReport gamma_cost(const Hierarchy& t, const DissimilarityMatrix& d,
                      GammaKind g);

/// Same as length_cost but over an extended hierarchy: muted vertices are
/// skipped. The tree's leaves must be a subset of d's labels.
CostReport extended_length_cost(const ExtendedHierarchy& t,
                                const DissimilarityMatrix& d, EstimatorKind e);

/// Edge-length sum of the height-augmented tree: every edge contributes
/// parent height minus child height (leaves at 0), plus a root edge of
/// length M - h(root). Equals M + length_cost under the realized matrix
/// with the mean estimator.
double total_length(const Hierarchy& t, const HeightFunction& h, double m);

using Objective = std::variant<EstimatorKind, GammaKind>;

CostReport evaluate_objective(const Hierarchy& t, const DissimilarityMatrix& d,
                              const Objective& objective);

struct BruteForceResult {
    Hierarchy best;
    CostReport cost;
    std::uint64_t tie_count = 0;
    std::uint64_t trees_scanned = 0;
};

/// Sweeps all (2n-3)!! hierarchies; ties within `tie_tol` are counted and
/// broken by enumeration order.
BruteForceResult optimal_hierarchy_bruteforce(const DissimilarityMatrix& d,
                                              const Objective& objective,
                                              int cap = 10,
                                              double tie_tol = 1e-9);

} // namespace hclust
