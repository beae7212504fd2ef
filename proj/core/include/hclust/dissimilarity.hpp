#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hclust {

/// Cross-block totals between two disjoint label subsets:
/// sum = d(A,B), mean = d(A,B) / (|A||B|).
struct Aggregate {
    double sum = 0.0;
    double mean = 0.0;
};

/// Validated symmetric nonnegative matrix over labeled objects.
/// Immutable after construction; safe to share across threads.
class DissimilarityMatrix {
public:
    /// Validates and builds. In strict mode (the default) off-diagonal
    /// entries must be positive; the permissive mode accepts zeros.
    static DissimilarityMatrix build(std::vector<std::string> labels,
                                     const std::vector<std::vector<double>>& values,
                                     bool strict = true);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }

    double at(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }
    double operator()(std::size_t i, std::size_t j) const { return at(i, j); }

    bool has_label(const std::string& label) const;
    /// Throws UnknownLabelError.
    std::size_t index_of(const std::string& label) const;

    /// Largest entry (0 when n = 1).
    double max_value() const;

    /// Principal submatrix on the given labels, preserving this matrix's
    /// label order regardless of the order of `subset`.
    DissimilarityMatrix restrict_to(const std::vector<std::string>& subset) const;
    /// Index-based variant; indices need not be sorted.
    DissimilarityMatrix restrict_to_indices(std::span<const std::size_t> subset) const;

    Aggregate aggregate(const std::vector<std::string>& a,
                        const std::vector<std::string>& b) const;
    Aggregate aggregate_indices(std::span<const std::size_t> a,
                                std::span<const std::size_t> b) const;

    bool strict() const noexcept { return strict_; }

private:
    DissimilarityMatrix() = default;

    std::vector<std::string> labels_;
    std::vector<double> values_; // row-major n*n
    std::unordered_map<std::string, std::size_t> index_;
    bool strict_ = true;
};

/// All-ones off the diagonal.
DissimilarityMatrix unit_dissimilarity(const std::vector<std::string>& labels);

/// Labels "1".."n".
std::vector<std::string> numbered_labels(std::size_t n);

} // namespace hclust
