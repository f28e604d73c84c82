#include "hyperdisk/cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyperdisk/barycenter.hpp"
#include "hyperdisk/embedding.hpp"
#include "hyperdisk/geometry.hpp"
#include "hyperdisk/graph.hpp"
#include "hyperdisk/io.hpp"
#include "hyperdisk/optimizers.hpp"
#include "hyperdisk/selftest.hpp"

namespace hyperdisk {

namespace {

// Short label for filenames and JSON keys ("%g": 0.0001, 0.2, ...).
std::string short_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

std::vector<std::vector<std::string>> histogram_rows(const std::vector<double>& values, int bins) {
    std::vector<std::vector<std::string>> rows;
    if (values.empty()) return rows;
    const auto [loIt, hiIt] = std::minmax_element(values.begin(), values.end());
    const double lo = *loIt;
    const double hi = *hiIt;
    if (!(hi > lo)) {
        rows.push_back({format_double(lo), std::to_string(values.size())});
        return rows;
    }
    const double width = (hi - lo) / bins;
    std::vector<long long> counts(bins, 0);
    for (double v : values) {
        int b = static_cast<int>((v - lo) / width);
        b = std::clamp(b, 0, bins - 1);
        ++counts[b];
    }
    for (int b = 0; b < bins; ++b)
        rows.push_back({format_double(lo + (b + 0.5) * width), std::to_string(counts[b])});
    return rows;
}

int cmd_gen_graph(int depth, const std::string& mode, const std::string& outPath) {
    const TreeMode m = mode == "closure" ? TreeMode::DirectedClosure : TreeMode::Undirected;
    write_edge_list(complete_binary_tree(depth, m), outPath);
    std::cout << "wrote " << outPath << "\n";
    return 0;
}

int cmd_barycenter(const std::vector<double>& rates, int iters, std::uint64_t seed,
                   const std::string& outdir) {
    std::filesystem::create_directories(outdir);
    const OffsetExperiment exp = offset_experiment(rates, iters, seed);

    nlohmann::json summary;
    summary["epsilon"] = exp.eps;
    summary["opt_coord"] = exp.optCoord;
    summary["iters"] = iters;
    summary["seed"] = seed;

    int failedCells = 0;
    for (const OffsetCell& cell : exp.cells) {
        const std::string tag = std::string(update_rule_name(cell.rule)) + "_" + short_double(cell.rate);

        std::vector<std::vector<std::string>> lossRows;
        lossRows.reserve(cell.trace.lossValues.size());
        for (size_t i = 0; i < cell.trace.lossValues.size(); ++i) {
            const double loss = cell.trace.lossValues[i];
            lossRows.push_back({std::to_string(i), format_double(loss), format_double(std::log10(loss))});
        }
        write_csv(outdir + "/loss_" + tag + ".csv", {"iteration", "loss", "log10loss"}, lossRows);
        write_csv(outdir + "/offsets_" + tag + ".csv", {"bin", "count"}, histogram_rows(cell.coordOffsets, 40));

        summary["cell_" + tag + "_failed"] = cell.trace.failed;
        if (cell.trace.failed) {
            ++failedCells;
            summary["cell_" + tag + "_failure_reason"] = cell.trace.failureReason;
        }
        summary["cell_" + tag + "_mean_offset"] = cell.meanCoordOffset;
        summary["cell_" + tag + "_mean_abs_offset"] = cell.meanAbsCoordOffset;
        summary["cell_" + tag + "_mean_hyp_offset"] = cell.meanHypOffset;
        summary["cell_" + tag + "_mean_abs_hyp_offset"] = cell.meanAbsHypOffset;
        summary["cell_" + tag + "_min_dist_to_opt"] = cell.minDistToOpt;
        summary["cell_" + tag + "_clip_events"] = cell.trace.clipEvents;
    }

    for (double rate : rates) {
        const BiasProbe probe = bias_probe(exp.eps, rate);
        const std::string tag = short_double(rate);
        summary["bias_" + tag + "_geo_gap"] = std::abs(probe.geoLeft - probe.geoRight);
        summary["bias_" + tag + "_geo_balanced"] = std::abs(probe.geoLeft - probe.geoRight) <= 1e-12;
        summary["bias_" + tag + "_nat_left"] = probe.natLeft;
        summary["bias_" + tag + "_nat_right"] = probe.natRight;
        summary["bias_" + tag + "_nat_outward"] = probe.natLeft < probe.natRight;
        summary["bias_" + tag + "_nat_closed_form_gap"] =
            std::max(std::abs(probe.natLeftCoord - probe.refLeftCoord),
                     std::abs(probe.natRightCoord - probe.refRightCoord));
    }

    write_json_file(outdir + "/summary.json", summary);
    std::cout << "wrote " << exp.cells.size() * 2 + 1 << " files to " << outdir << "\n";
    if (failedCells == static_cast<int>(exp.cells.size())) {
        std::cerr << "error: every experiment cell failed\n";
        return 2;
    }
    return 0;
}

int cmd_embed(const std::string& graphPath, const TrainConfig& cfg, const std::string& outPrefix) {
    const Graph g = read_graph_file(graphPath);
    const TrainResult result = train(g, cfg);
    const EmbedTrace& trace = result.trace;

    std::vector<Vec> coords;
    coords.reserve(result.state.positions.size());
    for (const Point& p : result.state.positions) coords.push_back(p.coords());
    write_embedding_tsv(outPrefix + ".tsv", g.nodes, coords);

    std::vector<std::vector<std::string>> traceRows;
    traceRows.reserve(trace.surrogateLoss.size());
    size_t nextCheckpoint = 0;
    for (size_t i = 0; i < trace.surrogateLoss.size(); ++i) {
        std::string full;
        if (nextCheckpoint < trace.fullLoss.size() &&
            trace.fullLoss[nextCheckpoint].first == static_cast<int>(i)) {
            full = format_double(trace.fullLoss[nextCheckpoint].second);
            ++nextCheckpoint;
        }
        traceRows.push_back({std::to_string(i), format_double(trace.surrogateLoss[i]), full});
    }
    write_csv(outPrefix + ".trace.csv", {"step", "surrogateLoss", "fullLoss"}, traceRows);

    nlohmann::json eval;
    eval["failed"] = trace.failed;
    if (trace.failed) eval["failure_reason"] = trace.failureReason;
    eval["steps_completed"] = trace.surrogateLoss.size();
    eval["mean_last_100_loss"] = trace.meanLast100;
    eval["clip_events"] = trace.clipEvents;
    try {
        const EvalResult r = evaluate(result.state, g);
        eval["tau"] = r.tau;
        eval["full_loss"] = r.fullLoss;
    } catch (const std::exception& e) {
        eval["eval_error"] = e.what();
    }
    write_json_file(outPrefix + ".eval.json", eval);
    std::cout << "wrote " << outPrefix << ".tsv, .trace.csv, .eval.json\n";
    return 0;
}

int cmd_eval(const std::string& embeddingPath, const std::string& graphPath, const std::string& outPath) {
    const Graph g = read_graph_file(graphPath);
    const auto rows = read_embedding_tsv(embeddingPath);

    std::map<std::string, const Vec*> byLabel;
    for (const auto& [label, vec] : rows)
        if (!byLabel.emplace(label, &vec).second)
            throw std::runtime_error("duplicate label '" + label + "' in " + embeddingPath);

    const int dim = static_cast<int>(rows.front().second.size());
    EmbeddingState s{DiskModel(1.0, dim), {}, 0};
    s.positions.reserve(g.nodes.size());
    for (const std::string& label : g.nodes) {
        const auto it = byLabel.find(label);
        if (it == byLabel.end())
            throw std::runtime_error("node '" + label + "' of " + graphPath + " missing from embedding");
        s.positions.emplace_back(s.model, *it->second);
    }

    const EvalResult r = evaluate(s, g);
    nlohmann::json out;
    out["tau"] = r.tau;
    out["full_loss"] = r.fullLoss;
    out["nodes"] = g.nodes.size();
    out["dim"] = dim;
    write_json_file(outPath, out);
    std::cout << "wrote " << outPath << "\n";
    return 0;
}

int cmd_selftest(long long samples, std::uint64_t seed) {
    struct Row {
        const char* name;
        SelftestReport report;
        bool hasResidual;
    };
    const long long crossCheckSamples = std::min<long long>(samples, 10000);
    const Row rows[] = {
        {"distance-identity", distance_identity_suite(samples, seed), false},
        {"oracle-equivalence", oracle_equivalence_suite(crossCheckSamples, seed), true},
        {"near-colinear", near_colinear_suite(crossCheckSamples, seed), false},
    };

    long long totalFailures = 0;
    for (const Row& row : rows) {
        totalFailures += row.report.failures;
        std::cout << row.name << ": " << row.report.samples << " samples, " << row.report.failures
                  << " failures, max error " << format_double(row.report.maxError);
        if (row.hasResidual)
            std::cout << ", max circle residual " << format_double(row.report.maxCircleResidual);
        if (row.report.nonFinite) std::cout << ", NON-FINITE OUTPUT";
        std::cout << "\n";
    }
    if (totalFailures > 0) {
        std::cout << "SELFTEST FAILED (" << totalFailures << " failing samples)\n";
        return 3;
    }
    std::cout << "all suites passed\n";
    return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"Hyperbolic-disk optimization toolkit"};
    app.require_subcommand(1);

    // gen-graph
    int depth = 5;
    std::string mode = "undirected";
    std::string genOut;
    CLI::App* gen = app.add_subcommand("gen-graph", "Write a complete binary tree as a TSV edge list");
    gen->add_option("--depth", depth, "Tree depth")->check(CLI::Range(1, 20))->capture_default_str();
    gen->add_option("--mode", mode, "undirected edges or the directed ancestor closure")
        ->check(CLI::IsMember({"undirected", "closure"}))
        ->capture_default_str();
    gen->add_option("--out", genOut, "Output path")->required();

    // barycenter
    std::vector<double> rates{0.0001, 0.01, 0.02, 0.05, 0.1, 0.2};
    int iters = 10000;
    std::uint64_t barySeed = 0;
    std::string outdir;
    CLI::App* bary = app.add_subcommand(
        "barycenter", "Two-anchor stochastic barycenter runs for each update rule and learning rate");
    bary->add_option("--rates", rates, "Learning rates")->expected(-1)->check(CLI::PositiveNumber);
    bary->add_option("--iters", iters, "Steps per run")->check(CLI::PositiveNumber)->capture_default_str();
    bary->add_option("--seed", barySeed, "Base seed")->capture_default_str();
    bary->add_option("--outdir", outdir, "Output directory")->required();

    // embed
    std::string graphPath;
    std::string embedOut;
    std::string rule = "geodesic";
    TrainConfig cfg;
    CLI::App* embed = app.add_subcommand("embed", "Train a graph embedding in the disk");
    embed->add_option("--graph", graphPath, "Edge-list file")->required()->check(CLI::ExistingFile);
    embed->add_option("--dim", cfg.dim, "Embedding dimension")->check(CLI::PositiveNumber)->capture_default_str();
    embed->add_option("--lr", cfg.lr, "Learning rate")->check(CLI::PositiveNumber)->capture_default_str();
    embed->add_option("--rule", rule, "Update rule")
        ->check(CLI::IsMember({"euclidean", "natural", "geodesic"}))
        ->capture_default_str();
    embed->add_option("--negatives", cfg.negatives, "Sampled denominator size; 0 = full")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    embed->add_option("--steps", cfg.steps, "Training steps")->check(CLI::PositiveNumber)->capture_default_str();
    embed->add_option("--batch", cfg.batch, "Edges per step")->check(CLI::PositiveNumber)->capture_default_str();
    embed->add_option("--seed", cfg.seed, "Seed")->capture_default_str();
    embed->add_option("--full-loss-every", cfg.fullLossEvery, "Exact-loss checkpoint cadence; 0 = never")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    embed->add_option("--out", embedOut, "Output prefix (.tsv, .trace.csv, .eval.json)")->required();

    // eval
    std::string evalEmbedding;
    std::string evalGraph;
    std::string evalOut;
    CLI::App* eval = app.add_subcommand("eval", "Score an embedding file against a graph");
    eval->add_option("--embedding", evalEmbedding, "Embedding TSV")->required()->check(CLI::ExistingFile);
    eval->add_option("--graph", evalGraph, "Edge-list file")->required()->check(CLI::ExistingFile);
    eval->add_option("--out", evalOut, "Output JSON path")->required();

    // expmap-selftest
    long long samples = 100000;
    std::uint64_t selftestSeed = 0;
    CLI::App* selftest = app.add_subcommand("expmap-selftest", "Randomized stress suites for the geodesic step");
    selftest->add_option("--samples", samples, "Sample count")->check(CLI::PositiveNumber)->capture_default_str();
    selftest->add_option("--seed", selftestSeed, "Seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) return cmd_gen_graph(depth, mode, genOut);
        if (bary->parsed()) return cmd_barycenter(rates, iters, barySeed, outdir);
        if (embed->parsed()) {
            cfg.rule = parse_update_rule(rule);
            return cmd_embed(graphPath, cfg, embedOut);
        }
        if (eval->parsed()) return cmd_eval(evalEmbedding, evalGraph, evalOut);
        if (selftest->parsed()) return cmd_selftest(samples, selftestSeed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace hyperdisk
