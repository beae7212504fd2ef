#include <CLI11.hpp>

#include "run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Length-based hierarchical clustering"};
    app.require_subcommand(1);

    hclust::cli::RunConfig config;

    auto add_matrix_flags = [&](CLI::App* cmd) {
        cmd->add_option("--input", config.input, "Dissimilarity matrix file");
        cmd->add_option("--format", config.format, "Input format: csv or phylip")
            ->check(CLI::IsMember({"csv", "phylip"}));
        cmd->add_flag("--permissive", config.permissive,
                      "Accept zero off-diagonal entries");
    };

    auto* cluster = app.add_subcommand("cluster", "Run a clustering algorithm");
    add_matrix_flags(cluster);
    cluster->add_option("--alg", config.algorithm,
                        "agglomerative:<estimator>, divisive:exact or divisive:local");
    cluster->add_option("--seed", config.seed, "Seed for the local-search cut solver");
    cluster->add_option("--restarts", config.restarts, "Local-search restarts");
    cluster->add_option("--out-tree", config.out_tree, "Newick output path");
    cluster->add_option("--out-json", config.out_json, "JSON report path");

    auto* score = app.add_subcommand("score", "Evaluate a tree under an objective");
    add_matrix_flags(score);
    score->add_option("--tree", config.tree, "Newick tree to score")->required();
    score->add_option("--estimator", config.estimator,
                      "mean, min, max, median or wpgma");
    score->add_option("--gamma", config.gamma, "dasgupta or inverse_product");
    score->add_option("--out-json", config.out_json, "JSON report path");

    auto* check = app.add_subcommand("check", "Test the three-point condition");
    add_matrix_flags(check);
    check->add_option("--tol", config.tol, "Absolute tolerance");
    check->add_option("--out-json", config.out_json, "JSON report path");

    auto* enumerate = app.add_subcommand("enumerate", "Brute-force optimum");
    add_matrix_flags(enumerate);
    enumerate->add_option("--estimator", config.estimator,
                          "mean, min, max, median or wpgma");
    enumerate->add_option("--gamma", config.gamma, "dasgupta or inverse_product");
    enumerate->add_option("--enum-cap", config.enum_cap, "Max leaves to enumerate");
    enumerate->add_option("--tol", config.tol, "Tie tolerance");
    enumerate->add_option("--out-json", config.out_json, "JSON report path");

    auto* census = app.add_subcommand("census", "Restriction census for a split");
    census->add_option("--tree", config.tree, "Newick tree")->required();
    census->add_option("--left", config.split_left,
                       "Comma-separated labels of the left side")
        ->required();
    census->add_option("--out-json", config.out_json, "JSON report path");

    auto* simulate = app.add_subcommand("simulate", "Noisy-ultrametric benchmark table");
    simulate->add_option("--n", config.n_objects, "Objects per replicate");
    simulate->add_option("--replicates", config.replicates, "Replicate count");
    simulate->add_option("--seed", config.seed, "Base seed");
    simulate->add_option("--noise", config.noise, "gaussian:s, laplace:b or onesided:r");
    simulate->add_option("--enum-cap", config.enum_cap,
                         "Brute-force gap only when n is at most this");
    simulate->add_option("--restarts", config.restarts, "Local-search restarts");
    simulate->add_option("--out-csv", config.out_csv, "CSV table path");
    simulate->add_option("--out-json", config.out_json, "JSON table path");

    CLI11_PARSE(app, argc, argv);

    config.subcommand = app.get_subcommands().front()->get_name();
    return hclust::cli::run(config);
}
