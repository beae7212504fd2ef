#pragma once

#include <map>
#include <string>
#include <vector>

#include "hclust/dissimilarity.hpp"
#include "hclust/hierarchy.hpp"

namespace hclust {

/// Class of an internal vertex of T' relative to the two restrictions
/// induced by a leaf bipartition (L-, L+).
enum class VertexClass {
    one_side,           // appears in exactly one restriction (R1)
    both_twice_muted,   // appears in both, muted in both
    both_once_muted,    // appears in both, muted in exactly one
    both_neither_muted, // appears in both, muted in neither
};

std::string vertex_class_name(VertexClass c);

struct VertexCensus {
    int r1 = 0;
    int r2_tm = 0;
    int r2_om = 0;
    int r2_nm = 0;
    std::map<int, VertexClass> membership; // internal vertex id -> class

    int total() const { return r1 + r2_tm + r2_om + r2_nm; }
    /// Non-muted appearances counted with multiplicity across restrictions.
    int multiplicity() const { return r1 + r2_om + 2 * r2_nm; }
};

/// True iff no internal vertex of t has leaf set exactly L- or exactly L+.
/// The two sides must partition t's leaves.
bool check_split_condition(const Hierarchy& t,
                           const std::vector<std::string>& l_minus,
                           const std::vector<std::string>& l_plus);

/// Classifies every internal vertex by the sides its children's leaf sets
/// touch. Total regardless of the split condition; the count identities
/// r1 + r2_tm + r2_om + r2_nm = n-1 and, under the split condition,
/// r1 + r2_om + 2 r2_nm = n-2 and r2_tm = 1 + r2_nm, hold.
VertexCensus classify_vertices(const Hierarchy& t,
                               const std::vector<std::string>& l_minus,
                               const std::vector<std::string>& l_plus);

/// Diagnostic for neither-muted vertices under a known dissimilarity:
/// which side of the split the vertex's cross-block minimum falls on.
/// Returns vertex id -> true when the minimum is achieved by a pair inside
/// L- x L- (false: L+ x L+).
std::map<int, bool> tag_neither_muted_minimum_side(
    const Hierarchy& t, const DissimilarityMatrix& d,
    const std::vector<std::string>& l_minus,
    const std::vector<std::string>& l_plus);

} // namespace hclust
