#include "hclust/dissimilarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hclust/errors.hpp"

namespace hclust {

DissimilarityMatrix DissimilarityMatrix::build(std::vector<std::string> labels,
                                               const std::vector<std::vector<double>>& values,
                                               bool strict) {
    const std::size_t n = labels.size();
    if (n == 0)
        throw EmptySubsetError("at least one label required");
    if (values.size() != n)
        throw ParseError("value grid has " + std::to_string(values.size()) +
                         " rows, expected " + std::to_string(n));

    DissimilarityMatrix m;
    m.strict_ = strict;
    m.labels_ = std::move(labels);
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, inserted] = m.index_.emplace(m.labels_[i], i);
        if (!inserted)
            throw DuplicateLabelError("duplicate label '" + m.labels_[i] + "'");
    }

    m.values_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (values[i].size() != n)
            throw ParseError("row " + std::to_string(i) + " has " +
                             std::to_string(values[i].size()) + " entries, expected " +
                             std::to_string(n));
        for (std::size_t j = 0; j < n; ++j)
            m.values_[i * n + j] = values[i][j];
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = m.values_[i * n + j];
            if (!std::isfinite(v))
                throw NonFiniteEntryError("non-finite entry at (" + std::to_string(i) +
                                          "," + std::to_string(j) + ")");
            if (v < 0.0)
                throw NegativeEntryError("negative entry at (" + std::to_string(i) + "," +
                                         std::to_string(j) + "): " + std::to_string(v));
            if (i == j && v != 0.0)
                throw NonzeroDiagonalError("nonzero diagonal at " + std::to_string(i));
            if (i != j && m.values_[i * n + j] != m.values_[j * n + i])
                throw AsymmetryError("asymmetric at (" + std::to_string(i) + "," +
                                     std::to_string(j) + "): " +
                                     std::to_string(m.values_[i * n + j]) + " vs " +
                                     std::to_string(m.values_[j * n + i]));
            if (strict && i != j && v == 0.0)
                throw ZeroOffDiagonalError("zero off-diagonal entry at (" +
                                           std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    return m;
}

bool DissimilarityMatrix::has_label(const std::string& label) const {
    return index_.find(label) != index_.end();
}

std::size_t DissimilarityMatrix::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end())
        throw UnknownLabelError("unknown label '" + label + "'");
    return it->second;
}

double DissimilarityMatrix::max_value() const {
    double best = 0.0;
    for (double v : values_)
        best = std::max(best, v);
    return best;
}

DissimilarityMatrix DissimilarityMatrix::restrict_to(const std::vector<std::string>& subset) const {
    std::vector<std::size_t> idx;
    idx.reserve(subset.size());
    for (const auto& l : subset)
        idx.push_back(index_of(l));
    return restrict_to_indices(idx);
}

DissimilarityMatrix DissimilarityMatrix::restrict_to_indices(
    std::span<const std::size_t> subset) const {
    if (subset.empty())
        throw EmptySubsetError("restriction subset is empty");
    std::vector<std::size_t> idx(subset.begin(), subset.end());
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw DuplicateLabelError("restriction subset repeats a label");
    if (idx.back() >= size())
        throw UnknownLabelError("index out of range");

    const std::size_t k = idx.size();
    DissimilarityMatrix m;
    m.strict_ = strict_;
    m.labels_.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        m.labels_.push_back(labels_[idx[i]]);
        m.index_.emplace(m.labels_.back(), i);
    }
    m.values_.resize(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            m.values_[i * k + j] = at(idx[i], idx[j]);
    return m;
}

Aggregate DissimilarityMatrix::aggregate(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) const {
    std::vector<std::size_t> ia, ib;
    ia.reserve(a.size());
    ib.reserve(b.size());
    for (const auto& l : a)
        ia.push_back(index_of(l));
    for (const auto& l : b)
        ib.push_back(index_of(l));
    return aggregate_indices(ia, ib);
}

Aggregate DissimilarityMatrix::aggregate_indices(std::span<const std::size_t> a,
                                                 std::span<const std::size_t> b) const {
    if (a.empty() || b.empty())
        throw EmptySubsetError("aggregate over empty block");
    for (std::size_t x : a)
        for (std::size_t y : b)
            if (x == y)
                throw OverlapError("blocks share label '" + labels_[x] + "'");

    Aggregate agg;
    for (std::size_t x : a)
        for (std::size_t y : b)
            agg.sum += at(x, y);
    agg.mean = agg.sum / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
    return agg;
}

DissimilarityMatrix unit_dissimilarity(const std::vector<std::string>& labels) {
    const std::size_t n = labels.size();
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i)
        v[i][i] = 0.0;
    return DissimilarityMatrix::build(labels, v);
}

std::vector<std::string> numbered_labels(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 1; i <= n; ++i)
        labels.push_back(std::to_string(i));
    return labels;
}

} // namespace hclust
