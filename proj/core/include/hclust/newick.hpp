#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "hclust/hierarchy.hpp"

namespace hclust {

/// Topology-only Newick, e.g. "((1,2),(3,4));".
std::string to_newick(const Hierarchy& t);

/// Newick with branch lengths parent height - child height (leaves at 0),
/// printed with 12 significant digits. When M is given the root carries the
/// extra edge of length M - h(root); the emitted lengths then sum to
/// total_length(t, h, M).
std::string to_newick(const Hierarchy& t, const HeightFunction& h,
                      std::optional<double> m = std::nullopt);

void write_newick(const Hierarchy& t, const std::filesystem::path& path);
void write_newick(const Hierarchy& t, const HeightFunction& h,
                  std::optional<double> m, const std::filesystem::path& path);

/// Parses a rooted binary Newick tree; branch lengths are accepted and
/// ignored. Leaf names become the hierarchy's labels in left-to-right order.
Hierarchy parse_newick(const std::string& text);
Hierarchy read_newick(const std::filesystem::path& path);

} // namespace hclust
