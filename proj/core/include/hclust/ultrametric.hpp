#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "hclust/dissimilarity.hpp"
#include "hclust/hierarchy.hpp"

namespace hclust {

struct UltrametricWitness {
    bool ok = true;
    // violating triple (x, y, z) with d(x,y) > max(d(x,z), d(y,z)) + tol
    std::array<std::size_t, 3> triple{};
    std::array<double, 3> values{}; // d(x,y), d(x,z), d(y,z)
};

/// Three-point condition over all triples, within an absolute tolerance.
UltrametricWitness is_ultrametric(const DissimilarityMatrix& d, double tol = 0.0);

/// Associated hierarchy of an ultrametric: d(x,y) = h(mrca(x,y)).
/// Distinct values are processed ascending with union-find; equal-height
/// multiway merges become left-combs over label order at the same height.
/// Throws NotUltrametricError with a witness in the message.
std::pair<Hierarchy, HeightFunction> hierarchy_from_ultrametric(
    const DissimilarityMatrix& d, double tol = 0.0);

/// d(x,y) = h(mrca(x,y)). Heights must be positive and non-increasing
/// root-to-leaf; the output passes is_ultrametric.
DissimilarityMatrix realize_dissimilarity(const Hierarchy& t,
                                          const HeightFunction& h);

/// Random hierarchy shape plus strictly decreasing heights in (lo, hi).
DissimilarityMatrix random_ultrametric(int n, std::uint64_t seed,
                                       double lo, double hi);
/// Same, returning the planted tree and heights as well.
struct PlantedUltrametric {
    DissimilarityMatrix matrix;
    Hierarchy tree;
    HeightFunction heights;
};
PlantedUltrametric random_planted_ultrametric(int n, std::uint64_t seed,
                                              double lo, double hi);

struct NoiseModel {
    enum class Kind { gaussian, laplace, one_sided };
    Kind kind = Kind::gaussian;
    double param = 1.0; // sigma, scale b, or rate
    std::uint64_t seed = 0;

    /// "gaussian:0.1", "laplace:0.1", "onesided:0.1"
    static NoiseModel parse(const std::string& s, std::uint64_t seed);
    std::string to_string() const;
};

/// Adds one i.i.d. draw per unordered pair (symmetrically). Entries that
/// would become <= 0 are resampled, up to 1000 attempts (then ClampError).
DissimilarityMatrix perturb(const DissimilarityMatrix& d, const NoiseModel& m);

} // namespace hclust
