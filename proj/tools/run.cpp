#include "run.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "hclust/algorithms.hpp"
#include "hclust/census.hpp"
#include "hclust/errors.hpp"
#include "hclust/matrix_io.hpp"
#include "hclust/newick.hpp"
#include "hclust/objectives.hpp"
#include "hclust/report_json.hpp"
#include "hclust/ultrametric.hpp"

namespace hclust::cli {

namespace {

using nlohmann::json;

void emit(const json& j, const std::filesystem::path& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open '" + path.string() + "' for writing");
    os << j.dump(2) << '\n';
}

void emit_text(const std::string& text, const std::filesystem::path& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open '" + path.string() + "' for writing");
    os << text;
}

DissimilarityMatrix load_matrix(const RunConfig& c) {
    if (c.input.empty())
        throw ParseError("--input is required");
    return parse_matrix(c.input, matrix_format_from_string(c.format), !c.permissive);
}

struct AlgorithmChoice {
    bool divisive = false;
    bool exact = false;           // divisive only
    EstimatorKind estimator = EstimatorKind::mean;
};

AlgorithmChoice parse_algorithm(const std::string& s) {
    AlgorithmChoice a;
    if (s.rfind("agglomerative:", 0) == 0) {
        a.estimator = estimator_from_string(s.substr(14));
        return a;
    }
    if (s == "divisive:exact") {
        a.divisive = true;
        a.exact = true;
        return a;
    }
    if (s == "divisive:local") {
        a.divisive = true;
        return a;
    }
    throw ParseError("unknown algorithm '" + s + "'");
}

std::pair<Hierarchy, MergeTrace> run_algorithm(const DissimilarityMatrix& d,
                                               const AlgorithmChoice& a,
                                               const RunConfig& c) {
    if (!a.divisive)
        return agglomerate(d, a.estimator);
    CutSolverPolicy policy;
    policy.restarts = c.restarts;
    policy.seed = c.seed;
    // exact mode scans every block exhaustively; 25 leaves is the hard limit
    policy.exact_cap = a.exact ? 25 : 2;
    return recursive_sparsest_cut(d, policy);
}

// heights from the trace: internal vertex n+k was created by step k
std::optional<HeightFunction> trace_heights(const Hierarchy& t, const MergeTrace& m) {
    HeightFunction h;
    h.by_node.assign(t.n_nodes(), 0.0);
    for (std::size_t k = 0; k < m.steps.size(); ++k)
        h.by_node[t.n_leaves() + static_cast<int>(k)] = m.steps[k].value;
    for (int s : t.internal_vertices()) {
        if (!(h.by_node[s] > 0.0))
            return std::nullopt;
        for (int ch : {t.left_child(s), t.right_child(s)})
            if (t.is_internal(ch) && h.by_node[ch] > h.by_node[s])
                return std::nullopt;
    }
    return h;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Objective objective_from(const RunConfig& c) {
    if (c.gamma)
        return gamma_from_string(*c.gamma);
    return estimator_from_string(c.estimator.empty() ? "mean" : c.estimator);
}

int cmd_cluster(const RunConfig& c) {
    const auto d = load_matrix(c);
    const auto choice = parse_algorithm(c.algorithm);
    auto [tree, trace] = run_algorithm(d, choice, c);
    const CostReport report = length_cost(tree, d, choice.estimator);

    const auto heights = trace_heights(tree, trace);
    const std::string newick =
        heights ? to_newick(tree, *heights) : to_newick(tree);
    if (!c.out_tree.empty())
        emit_text(newick + "\n", c.out_tree);

    json out = {{"algorithm", c.algorithm},
                {"estimator", estimator_name(choice.estimator)},
                {"total", report.total},
                {"cost", to_json(report)},
                {"merge_trace", to_json(trace)},
                {"newick", newick}};
    emit(out, c.out_json);
    return 0;
}

int cmd_score(const RunConfig& c) {
    const auto d = load_matrix(c);
    if (c.tree.empty())
        throw ParseError("--tree is required for score");
    const Hierarchy t = read_newick(c.tree);
    const CostReport report = evaluate_objective(t, d, objective_from(c));
    json out = {{"total", report.total}, {"cost", to_json(report)}};
    emit(out, c.out_json);
    return 0;
}

int cmd_check(const RunConfig& c) {
    const auto d = load_matrix(c);
    const auto w = is_ultrametric(d, c.tol);
    if (w.ok && !c.out_tree.empty()) {
        const auto [tree, heights] = hierarchy_from_ultrametric(d, c.tol);
        emit_text(to_newick(tree, heights) + "\n", c.out_tree);
    }
    emit(to_json(w, d), c.out_json);
    return w.ok ? 0 : 1;
}

int cmd_enumerate(const RunConfig& c) {
    const auto d = load_matrix(c);
    const auto result =
        optimal_hierarchy_bruteforce(d, objective_from(c), c.enum_cap, c.tol);
    if (!c.out_tree.empty())
        emit_text(to_newick(result.best) + "\n", c.out_tree);
    json out = {{"total", result.cost.total},
                {"tie_count", result.tie_count},
                {"trees_scanned", result.trees_scanned},
                {"newick", to_newick(result.best)},
                {"cost", to_json(result.cost)}};
    emit(out, c.out_json);
    return 0;
}

std::vector<std::string> split_labels(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

int cmd_census(const RunConfig& c) {
    if (c.tree.empty())
        throw ParseError("--tree is required for census");
    if (c.split_left.empty())
        throw ParseError("--left is required for census");
    const Hierarchy t = read_newick(c.tree);
    const auto left = split_labels(c.split_left);
    std::vector<std::string> right;
    for (const auto& l : t.labels())
        if (std::find(left.begin(), left.end(), l) == left.end())
            right.push_back(l);

    const auto census = classify_vertices(t, left, right);
    json out = to_json(census);
    out["split_condition"] = check_split_condition(t, left, right);
    emit(out, c.out_json);
    return 0;
}

int cmd_simulate(const RunConfig& c) {
    struct Row {
        std::uint64_t seed;
        std::string algorithm;
        std::string estimator;
        int n;
        double cost;
        double planted_cost;
        std::optional<double> opt_cost;
    };
    std::vector<Row> rows;

    const int n = c.n_objects;
    for (int rep = 0; rep < c.replicates; ++rep) {
        const std::uint64_t rep_seed = c.seed + static_cast<std::uint64_t>(rep);
        const auto planted = random_planted_ultrametric(n, rep_seed, 1.0, 10.0);
        NoiseModel noise = NoiseModel::parse(c.noise, rep_seed * 7919 + 1);
        const auto d = perturb(planted.matrix, noise);

        std::vector<std::pair<std::string, EstimatorKind>> algs;
        for (EstimatorKind e : kAllEstimators)
            algs.emplace_back("agglomerative", e);
        algs.emplace_back("divisive:exact", EstimatorKind::mean);
        algs.emplace_back("divisive:local", EstimatorKind::mean);

        std::map<EstimatorKind, double> opt_cache;
        for (const auto& [alg, est] : algs) {
            RunConfig sub = c;
            sub.algorithm = alg == "agglomerative"
                                ? "agglomerative:" + estimator_name(est)
                                : alg;
            auto [tree, trace] = run_algorithm(d, parse_algorithm(sub.algorithm), sub);
            Row row;
            row.seed = rep_seed;
            row.algorithm = alg;
            row.estimator = estimator_name(est);
            row.n = n;
            row.cost = length_cost(tree, d, est).total;
            row.planted_cost = length_cost(planted.tree, d, est).total;
            if (n <= c.enum_cap) {
                auto it = opt_cache.find(est);
                if (it == opt_cache.end())
                    it = opt_cache
                             .emplace(est, optimal_hierarchy_bruteforce(
                                               d, est, c.enum_cap, c.tol)
                                               .cost.total)
                             .first;
                row.opt_cost = it->second;
            }
            rows.push_back(std::move(row));
        }
    }

    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.seed, a.algorithm, a.estimator) <
               std::tie(b.seed, b.algorithm, b.estimator);
    });

    std::string csv =
        "seed,algorithm,estimator,n,cost,planted_cost,gap_planted,opt_cost,gap_opt\n";
    json table = json::array();
    for (const auto& r : rows) {
        csv += std::to_string(r.seed) + "," + r.algorithm + "," + r.estimator + "," +
               std::to_string(r.n) + "," + fmt(r.cost) + "," + fmt(r.planted_cost) +
               "," + fmt(r.cost - r.planted_cost) + ",";
        csv += r.opt_cost ? fmt(*r.opt_cost) : "";
        csv += ",";
        csv += r.opt_cost ? fmt(r.cost - *r.opt_cost) : "";
        csv += "\n";

        json j = {{"seed", r.seed},          {"algorithm", r.algorithm},
                  {"estimator", r.estimator}, {"n", r.n},
                  {"cost", r.cost},           {"planted_cost", r.planted_cost},
                  {"gap_planted", r.cost - r.planted_cost}};
        if (r.opt_cost) {
            j["opt_cost"] = *r.opt_cost;
            j["gap_opt"] = r.cost - *r.opt_cost;
        }
        table.push_back(std::move(j));
    }

    emit_text(csv, c.out_csv);
    if (!c.out_json.empty())
        emit(table, c.out_json);
    return 0;
}

} // namespace

int run(const RunConfig& config) {
    try {
        if (config.subcommand == "cluster")
            return cmd_cluster(config);
        if (config.subcommand == "score")
            return cmd_score(config);
        if (config.subcommand == "check")
            return cmd_check(config);
        if (config.subcommand == "enumerate")
            return cmd_enumerate(config);
        if (config.subcommand == "census")
            return cmd_census(config);
        if (config.subcommand == "simulate")
            return cmd_simulate(config);
        throw ParseError("unknown subcommand '" + config.subcommand + "'");
    } catch (const Error& e) {
        std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
        return 3;
    }
}

} // namespace hclust::cli
