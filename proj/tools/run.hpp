#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hclust::cli {

struct RunConfig {
    std::string subcommand; // cluster | score | check | enumerate | census | simulate

    std::filesystem::path input;
    std::string format = "csv"; // csv | phylip
    bool permissive = false;

    std::string algorithm = "agglomerative:mean";
    std::string estimator;            // mean|min|max|median|wpgma
    std::optional<std::string> gamma; // dasgupta|inverse_product

    std::uint64_t seed = 0;
    std::string noise = "gaussian:0.1";
    int replicates = 10;
    int n_objects = 6;
    int enum_cap = 10;
    int exact_cap = 16;
    int restarts = 8;
    double tol = 1e-9;

    std::filesystem::path tree;       // score / census input tree
    std::string split_left;           // census: comma-separated L- labels

    std::filesystem::path out_tree;
    std::filesystem::path out_json;
    std::filesystem::path out_csv;
};

/// Executes one subcommand. Returns 0 on success, 1 for a negative `check`
/// result, 2 for domain errors (error JSON on stderr), 3 for internal ones.
int run(const RunConfig& config);

} // namespace hclust::cli
