#pragma once

#include <stdexcept>
#include <string>

namespace hclust {

// Base for every domain error. `code()` is the stable machine-readable
// identifier surfaced by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define HCLUST_ERROR_TYPE(Name, Code)                        \
    class Name : public Error {                              \
    public:                                                  \
        explicit Name(const std::string& msg)                \
            : Error(Code, msg) {}                            \
    }

// Matrix construction
HCLUST_ERROR_TYPE(AsymmetryError, "asymmetry");
HCLUST_ERROR_TYPE(NegativeEntryError, "negative_entry");
HCLUST_ERROR_TYPE(NonzeroDiagonalError, "nonzero_diagonal");
HCLUST_ERROR_TYPE(ZeroOffDiagonalError, "zero_off_diagonal");
HCLUST_ERROR_TYPE(NonFiniteEntryError, "non_finite_entry");
HCLUST_ERROR_TYPE(DuplicateLabelError, "duplicate_label");

// Subset / label handling
HCLUST_ERROR_TYPE(UnknownLabelError, "unknown_label");
HCLUST_ERROR_TYPE(EmptySubsetError, "empty_subset");
HCLUST_ERROR_TYPE(OverlapError, "overlap");
HCLUST_ERROR_TYPE(NotAPartitionError, "not_a_partition");

// Trees
HCLUST_ERROR_TYPE(UnknownLeafError, "unknown_leaf");
HCLUST_ERROR_TYPE(SameLeafError, "same_leaf");
HCLUST_ERROR_TYPE(TooManyLeavesError, "too_many_leaves");
HCLUST_ERROR_TYPE(LeafMismatchError, "leaf_mismatch");
HCLUST_ERROR_TYPE(HeightOrderError, "height_order");
HCLUST_ERROR_TYPE(MTooSmallError, "m_too_small");

// Estimators
HCLUST_ERROR_TYPE(EmptyBlockError, "empty_block");
HCLUST_ERROR_TYPE(MissingDepthError, "missing_depth");

// Ultrametrics and generators
HCLUST_ERROR_TYPE(NotUltrametricError, "not_ultrametric");
HCLUST_ERROR_TYPE(BadRangeError, "bad_range");
HCLUST_ERROR_TYPE(ClampError, "clamp_failed");

// I/O
HCLUST_ERROR_TYPE(ParseError, "parse_error");
HCLUST_ERROR_TYPE(IoError, "io_error");

#undef HCLUST_ERROR_TYPE

} // namespace hclust
