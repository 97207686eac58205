#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "laymat/calibration.hpp"
#include "laymat/circuit.hpp"
#include "laymat/coupling_map.hpp"
#include "laymat/interaction_graph.hpp"
#include "laymat/noise_oracle.hpp"
#include "laymat/scoring.hpp"
#include "laymat/selector.hpp"
#include "laymat/subiso.hpp"

namespace {

using namespace laymat;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SchemaError("cannot write file: " + path);
    out << content;
}

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

QuantumCircuit load_circuit(const std::string& path) {
    const std::string text = read_file(path);
    return has_suffix(path, ".json") ? circuit_from_json(text) : parse_circuit(text);
}

struct CommonOpts {
    std::string circuit_path;
    std::vector<std::string> device_paths;
    std::string mode = "loose";
    std::string cost = "default";
    long long max_visits = 0;
    long long max_layouts = 0;
    double tol = 1e-10;
    std::uint64_t seed = 0;
    std::string format = "json";

    MatchMode match_mode() const {
        if (mode == "loose") return MatchMode::Loose;
        if (mode == "strict") return MatchMode::Strict;
        throw SchemaError("unknown mode '" + mode + "' (expected loose|strict)");
    }

    SearchBudget budget() const {
        SearchBudget b;
        if (max_visits > 0) b.max_state_visits = max_visits;
        if (max_layouts > 0) b.max_layouts = max_layouts;
        return b;
    }
};

void add_common_flags(CLI::App* cmd, CommonOpts& o, bool multi_device) {
    cmd->add_option("-c,--circuit", o.circuit_path, "input circuit (.qasm or .json)")->required();
    auto* dev = cmd->add_option("-d,--device", o.device_paths,
                                "device file with coupling_map and calibration");
    dev->required();
    if (!multi_device) dev->expected(1);
    cmd->add_option("--mode", o.mode, "matching mode: loose|strict")->capture_default_str();
    cmd->add_option("--cost", o.cost, "cost function: default|idle")->capture_default_str();
    cmd->add_option("--max-visits", o.max_visits, "bound on search state visits");
    cmd->add_option("--max-layouts", o.max_layouts, "bound on returned layouts");
    cmd->add_option("--tol", o.tol, "score tie tolerance")->capture_default_str();
    cmd->add_option("--seed", o.seed, "rng seed")->capture_default_str();
    cmd->add_option("--format", o.format, "output format: json|table")->capture_default_str();
}

nlohmann::json scored_to_json(const ScoredLayout& s) {
    return {{"mapping", s.layout.phys_of_virtual},
            {"score", s.score},
            {"fidelity_estimate", s.fidelity_estimate},
            {"tied_with", s.tied_with}};
}

void print_layout_table(const std::vector<ScoredLayout>& rows) {
    std::printf("%-6s %-14s %-10s %s\n", "rank", "score", "tied_with", "mapping");
    for (size_t i = 0; i < rows.size(); ++i) {
        std::string mapping;
        for (int p : rows[i].layout.phys_of_virtual)
            mapping += (mapping.empty() ? "" : ",") + std::to_string(p);
        std::printf("%-6zu %-14.6g %-10d [%s]\n", i, rows[i].score, rows[i].tied_with,
                    mapping.c_str());
    }
}

int cmd_find_layouts(const CommonOpts& o) {
    const QuantumCircuit circuit = load_circuit(o.circuit_path);
    const DeviceCandidate device = device_from_json(read_file(o.device_paths[0]));
    const MatchMode mode = o.match_mode();

    const InteractionGraph pattern = build_interaction_graph(circuit, mode);
    const SearchResult result =
        find_embeddings(pattern, device.coupling_map, mode, NodeOrdering::Vf2pp, o.budget());
    if (result.layouts.empty())
        throw NoEmbeddingError("no embeddings of circuit into device '" + device.name + "'",
                               result.exhausted);

    const ErrorMap em(device.calibration, mode);
    const auto ranked = rank_layouts(circuit, result.layouts, builtin_cost(o.cost), em,
                                     &device.calibration, o.tol);

    if (o.format == "table") {
        std::printf("device=%s mode=%s cost=%s layouts=%zu exhausted=%s\n", device.name.c_str(),
                    o.mode.c_str(), o.cost.c_str(), ranked.size(),
                    result.exhausted ? "true" : "false");
        print_layout_table(ranked);
        return 0;
    }
    nlohmann::json j;
    j["command"] = "find-layouts";
    j["device"] = device.name;
    j["mode"] = o.mode;
    j["cost"] = o.cost;
    j["exhausted"] = result.exhausted;
    j["visits_used"] = result.visits_used;
    auto& layouts = j["layouts"] = nlohmann::json::array();
    for (const auto& s : ranked) layouts.push_back(scored_to_json(s));
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_remap(const CommonOpts& o, const std::string& output_path) {
    const QuantumCircuit circuit = load_circuit(o.circuit_path);
    const DeviceCandidate device = device_from_json(read_file(o.device_paths[0]));
    const ScoredLayout best = best_layout(circuit, device, o.match_mode(), builtin_cost(o.cost),
                                          o.budget(), NodeOrdering::Vf2pp, o.tol);
    const QuantumCircuit remapped = remap(circuit, best.layout);
    const CircuitFormat fmt =
        has_suffix(output_path, ".json") ? CircuitFormat::Json : CircuitFormat::Qasm;
    write_file(output_path, serialize_circuit(remapped, fmt));

    if (o.format == "table") {
        std::printf("device=%s score=%.8g tied_with=%d output=%s\n", device.name.c_str(),
                    best.score, best.tied_with, output_path.c_str());
        return 0;
    }
    nlohmann::json j;
    j["command"] = "remap";
    j["device"] = device.name;
    j["mode"] = o.mode;
    j["cost"] = o.cost;
    j["best"] = scored_to_json(best);
    j["output"] = output_path;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_select_device(const CommonOpts& o) {
    const QuantumCircuit circuit = load_circuit(o.circuit_path);
    std::vector<DeviceCandidate> fleet;
    for (const auto& path : o.device_paths) fleet.push_back(device_from_json(read_file(path)));
    const SelectionReport report =
        select_device(circuit, fleet, o.match_mode(), builtin_cost(o.cost), o.budget(),
                      NodeOrdering::Vf2pp, o.tol);
    if (o.format == "table") {
        for (const auto& d : report.devices) {
            if (d.skipped)
                std::printf("%-16s skipped (%s)\n", d.device.c_str(), d.skip_reason.c_str());
            else
                std::printf("%-16s score=%.8g layouts=%lld\n", d.device.c_str(), d.best.score,
                            d.layout_count);
        }
        const auto& w = report.winner();
        std::printf("winner: %s score=%.8g\n", w.device.c_str(), w.best.score);
        return 0;
    }
    std::cout << selection_report_to_json(report);
    return 0;
}

int cmd_graph(const CommonOpts& o) {
    const QuantumCircuit circuit = load_circuit(o.circuit_path);
    std::cout << interaction_graph_to_json(build_interaction_graph(circuit, o.match_mode()));
    return 0;
}

int cmd_validate(const CommonOpts& o, long long shots) {
    const QuantumCircuit circuit = load_circuit(o.circuit_path);
    const DeviceCandidate device = device_from_json(read_file(o.device_paths[0]));
    const MatchMode mode = o.match_mode();

    const InteractionGraph pattern = build_interaction_graph(circuit, mode);
    const SearchResult result =
        find_embeddings(pattern, device.coupling_map, mode, NodeOrdering::Vf2pp, o.budget());
    if (result.layouts.empty())
        throw NoEmbeddingError("no embeddings of circuit into device '" + device.name + "'",
                               result.exhausted);

    const ErrorMap em(device.calibration, mode);
    const auto ranked = rank_layouts(circuit, result.layouts, builtin_cost(o.cost), em,
                                     &device.calibration, o.tol);
    // the simulator always draws exact per-instruction rates
    const ErrorMap sim_em(device.calibration, MatchMode::Strict);

    nlohmann::json j;
    j["command"] = "validate";
    j["device"] = device.name;
    j["mode"] = o.mode;
    j["cost"] = o.cost;
    j["shots"] = shots;
    j["seed"] = o.seed;
    auto& rows = j["results"] = nlohmann::json::array();
    for (const auto& s : ranked) {
        const QuantumCircuit remapped = remap(circuit, s.layout);
        const NoiseModel nm = noise_model_for(remapped, sim_em, o.seed);
        const FidelityEstimate est = simulate_fidelity(remapped, nm, shots);
        rows.push_back({{"mapping", s.layout.phys_of_virtual},
                        {"score", s.score},
                        {"sim_fidelity", est.fidelity},
                        {"stderr", est.std_error}});
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct BenchOpts {
    std::vector<int> widths{5, 10, 15};
    int depth = 4;
    int runs = 3;
    int target_distance = 23;
    std::uint64_t seed = 0;
};

/// Random routed circuit on `target`: a random connected N-node region, its
/// spanning edges as cx gates, plus `depth-1` passes of random region edges.
QuantumCircuit random_routed_circuit(const CouplingMap& target, int width, int depth,
                                     std::uint64_t seed) {
    const auto adj = target.undirected_adjacency();
    std::mt19937_64 rng(seed);
    QuantumCircuit c;
    c.num_qubits = target.num_qubits;

    std::vector<int> region;
    std::vector<char> in_region(target.num_qubits, 0);
    std::vector<std::pair<int, int>> tree_edges;
    int start = static_cast<int>(rng() % target.num_qubits);
    region.push_back(start);
    in_region[start] = 1;
    while (static_cast<int>(region.size()) < width) {
        // grow from a random region node with an unused neighbor
        std::vector<std::pair<int, int>> frontier;
        for (int u : region)
            for (int v : adj[u])
                if (!in_region[v]) frontier.push_back({u, v});
        if (frontier.empty()) break;
        auto [u, v] = frontier[rng() % frontier.size()];
        region.push_back(v);
        in_region[v] = 1;
        tree_edges.push_back({u, v});
    }
    std::vector<std::pair<int, int>> region_edges;
    for (int u : region)
        for (int v : adj[u])
            if (u < v && in_region[v]) region_edges.push_back({u, v});

    for (auto [u, v] : tree_edges) c.add_gate("cx", {u, v});
    for (int layer = 1; layer < depth; ++layer)
        for (auto [u, v] : region_edges)
            if (rng() % 2 == 0) c.add_gate("cx", {u, v});
    return c;
}

int cmd_bench(const BenchOpts& b) {
    const CouplingMap target = heavy_hex(b.target_distance);
    std::printf("width,ordering,runs,layouts,visits,median_ms,mean_ms,min_ms,max_ms\n");
    for (int width : b.widths) {
        const QuantumCircuit circuit =
            random_routed_circuit(target, width, b.depth, b.seed + static_cast<std::uint64_t>(width));
        const InteractionGraph pattern = build_interaction_graph(circuit, MatchMode::Loose);
        double medians[2] = {0.0, 0.0};
        for (NodeOrdering ordering : {NodeOrdering::Vf2, NodeOrdering::Vf2pp}) {
            std::vector<double> times_ms;
            long long layouts = 0, visits = 0;
            for (int run = 0; run < b.runs; ++run) {
                const auto t0 = std::chrono::steady_clock::now();
                const SearchResult r =
                    find_embeddings(pattern, target, MatchMode::Loose, ordering, {});
                const auto t1 = std::chrono::steady_clock::now();
                times_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
                layouts = static_cast<long long>(r.layouts.size());
                visits = r.visits_used;
            }
            std::sort(times_ms.begin(), times_ms.end());
            const double median = times_ms[times_ms.size() / 2];
            double mean = 0.0;
            for (double t : times_ms) mean += t;
            mean /= static_cast<double>(times_ms.size());
            medians[ordering == NodeOrdering::Vf2pp ? 1 : 0] = median;
            std::printf("%d,%s,%d,%lld,%lld,%.3f,%.3f,%.3f,%.3f\n", width,
                        ordering == NodeOrdering::Vf2pp ? "vf2pp" : "vf2", b.runs, layouts,
                        visits, median, mean, times_ms.front(), times_ms.back());
        }
        if (medians[1] > medians[0])
            std::fprintf(stderr,
                         "regression: vf2pp median %.3f ms exceeds vf2 median %.3f ms at width %d\n",
                         medians[1], medians[0], width);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"laymat: post-routing qubit layout optimization"};
    app.require_subcommand(0, 1);

    CommonOpts find_opts, remap_opts, select_opts, graph_opts, validate_opts;
    std::string remap_output = "remapped.qasm";
    long long shots = 10000;
    BenchOpts bench_opts;
    std::string widths_csv;

    auto* find_cmd =
        app.add_subcommand("find-layouts", "rank all embeddings of a circuit into one device");
    add_common_flags(find_cmd, find_opts, false);

    auto* remap_cmd =
        app.add_subcommand("remap", "rewrite a circuit onto its lowest-error layout");
    add_common_flags(remap_cmd, remap_opts, false);
    remap_cmd->add_option("-o,--output", remap_output, "remapped circuit path (.qasm or .json)")
        ->capture_default_str();

    auto* select_cmd =
        app.add_subcommand("select-device", "pick the lowest-error device across a fleet");
    add_common_flags(select_cmd, select_opts, true);

    auto* graph_cmd = app.add_subcommand("graph", "emit a circuit's interaction graph as JSON");
    graph_cmd->add_option("-c,--circuit", graph_opts.circuit_path, "input circuit")->required();
    graph_cmd->add_option("--mode", graph_opts.mode, "loose|strict")->capture_default_str();

    auto* validate_cmd = app.add_subcommand(
        "validate", "simulate each layout under calibration noise and report fidelities");
    add_common_flags(validate_cmd, validate_opts, false);
    validate_cmd->add_option("--shots", shots, "trajectories per layout")->capture_default_str();

    auto* bench_cmd =
        app.add_subcommand("bench", "time embedding search on a heavy-hex target, CSV output");
    bench_cmd->add_option("--widths", widths_csv, "comma-separated circuit widths (default 5,10,15)");
    bench_cmd->add_option("--depth", bench_opts.depth, "layers in the generated circuits")
        ->capture_default_str();
    bench_cmd->add_option("--runs", bench_opts.runs, "timed repetitions per configuration")
        ->capture_default_str();
    bench_cmd->add_option("--target-distance", bench_opts.target_distance,
                          "heavy-hex distance of the target (23 = 1299 qubits)")
        ->capture_default_str();
    bench_cmd->add_option("--seed", bench_opts.seed, "rng seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(find_cmd)) return cmd_find_layouts(find_opts);
        if (app.got_subcommand(remap_cmd)) return cmd_remap(remap_opts, remap_output);
        if (app.got_subcommand(select_cmd)) return cmd_select_device(select_opts);
        if (app.got_subcommand(graph_cmd)) return cmd_graph(graph_opts);
        if (app.got_subcommand(validate_cmd)) return cmd_validate(validate_opts, shots);
        if (app.got_subcommand(bench_cmd)) {
            if (!widths_csv.empty()) {
                bench_opts.widths.clear();
                std::stringstream ss(widths_csv);
                std::string item;
                while (std::getline(ss, item, ',')) bench_opts.widths.push_back(std::stoi(item));
            }
            return cmd_bench(bench_opts);
        }
        std::cout << app.help();
        return 0;
    } catch (const laymat::NoEmbeddingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const laymat::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const laymat::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const laymat::CalibrationLookupError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const laymat::SimulationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
