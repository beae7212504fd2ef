#pragma once

#include <filesystem>
#include <string>

#include "hclust/dissimilarity.hpp"

namespace hclust {

enum class MatrixFormat { csv, phylip };

MatrixFormat matrix_format_from_string(const std::string& s);

/// CSV: first row and first column carry the labels (the corner cell is
/// ignored). PHYLIP square: first line is n, then one label and n values
/// per row. Both are validated by DissimilarityMatrix::build.
DissimilarityMatrix parse_matrix(const std::filesystem::path& path,
                                 MatrixFormat format, bool strict = true);

DissimilarityMatrix parse_matrix_csv(const std::string& text, bool strict = true);
DissimilarityMatrix parse_matrix_phylip(const std::string& text, bool strict = true);

std::string to_csv(const DissimilarityMatrix& d);
std::string to_phylip(const DissimilarityMatrix& d);
void write_matrix(const DissimilarityMatrix& d, MatrixFormat format,
                  const std::filesystem::path& path);

} // namespace hclust
