#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "momd/coarsen.hpp"
#include "momd/errors.hpp"
#include "momd/graph.hpp"
#include "momd/harness.hpp"
#include "momd/io.hpp"
#include "momd/netmetrics.hpp"
#include "momd/osm.hpp"
#include "momd/search.hpp"
#include "momd/strategy.hpp"
#include "momd/synth.hpp"

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == ',') {
            if (i > start)
                out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

int run_app(int argc, char** argv) {
    CLI::App app{"Region-to-region shortest path toolkit"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Build a graph from an OSM XML extract");
    std::string ingest_xml, ingest_out;
    bool ingest_all = false;
    ingest->add_option("xml", ingest_xml, "OSM XML file")->required();
    ingest->add_option("out", ingest_out, "output graph file")->required();
    ingest->add_flag("--all-ways", ingest_all, "keep every way, not only highway-tagged ones");

    // clean
    auto* clean = app.add_subcommand("clean", "Keep only the largest connected component");
    std::string clean_in, clean_out;
    clean->add_option("in", clean_in, "input graph")->required();
    clean->add_option("out", clean_out, "output graph")->required();

    // sample-od
    auto* sample = app.add_subcommand("sample-od", "Draw random origin/destination pairs");
    std::string sample_graph, sample_out;
    std::size_t sample_n = 0;
    std::uint64_t sample_seed = 0;
    sample->add_option("graph", sample_graph, "graph file")->required();
    sample->add_option("n", sample_n, "number of pairs")->required();
    sample->add_option("seed", sample_seed, "rng seed")->required();
    sample->add_option("out", sample_out, "output od file")->required();

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a synthetic topology");
    std::string gen_topology, gen_out;
    std::uint32_t gen_n = 0;
    std::uint64_t gen_seed = 0;
    double gen_p = 0.1, gen_spacing = 100.0;
    std::uint32_t gen_m = 2;
    gen->add_option("topology", gen_topology, "regular|random|small-world|scale-free")
        ->required();
    gen->add_option("n", gen_n, "vertex count")->required();
    gen->add_option("seed", gen_seed, "rng seed")->required();
    gen->add_option("out", gen_out, "output graph file")->required();
    gen->add_option("--p", gen_p, "small-world rewiring probability (default 0.1)");
    gen->add_option("--m", gen_m, "scale-free attachments per vertex (default 2)");
    gen->add_option("--spacing", gen_spacing, "grid spacing in metres (default 100)");

    // run
    auto* run = app.add_subcommand("run", "Run a batch of region-to-region queries");
    std::string run_graph, run_od, run_strategy = "both", run_radii = "0", run_out;
    std::size_t run_workers = 1, run_limit = 0;
    std::uint64_t run_seed = 0;
    bool run_private = false;
    run->add_option("graph", run_graph, "graph file")->required();
    run->add_option("od", run_od, "od pair file")->required();
    run->add_option("--strategy", run_strategy, "collapse|brute|both (default both)");
    run->add_option("--radii", run_radii, "comma list of region radii in metres")->required();
    run->add_option("--workers", run_workers, "worker thread count (default 1)");
    run->add_option("--seed", run_seed, "recorded in the run log");
    run->add_option("--out", run_out, "output directory")->required();
    run->add_option("--limit", run_limit, "cap the number of od pairs (0 keeps all)");
    run->add_flag("--private-graphs", run_private, "give each worker its own graph copy");

    // profile
    auto* prof = app.add_subcommand("profile", "Print structural metrics of a graph");
    std::string prof_graph, prof_name;
    std::size_t prof_pairs = 0;
    std::uint64_t prof_seed = 0;
    prof->add_option("graph", prof_graph, "graph file")->required();
    prof->add_option("--pairs", prof_pairs, "mean-path sample size (0 skips it)");
    prof->add_option("--seed", prof_seed, "rng seed for path sampling");
    prof->add_option("--name", prof_name, "label for the csv row (default: file name)");

    // analyze
    auto* ana = app.add_subcommand("analyze", "Reduce result files to accuracy statistics");
    std::string ana_col, ana_bru, ana_radii, ana_nodes, ana_out;
    ana->add_option("collapse-results", ana_col, "comma list of collapse result files")
        ->required();
    ana->add_option("brute-results", ana_bru, "comma list of brute result files")->required();
    ana->add_option("--radii", ana_radii, "comma list of radii, one per file")->required();
    ana->add_option("--nodes", ana_nodes, "comma list of collapsed-node files (optional)");
    ana->add_option("--out", ana_out, "output csv")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (*ingest) {
        momd::OsmOptions opts;
        opts.keep_all_ways = ingest_all;
        momd::ParsedOsm parsed = momd::parse_osm_file(ingest_xml, opts);
        momd::write_compact(parsed.graph, ingest_out);
        momd::write_id_map(parsed, ingest_out + ".idmap");
        std::cout << "nodes_seen=" << parsed.nodes_seen
                  << " nodes_invalid=" << parsed.nodes_invalid
                  << " ways_seen=" << parsed.ways_seen << " ways_kept=" << parsed.ways_kept
                  << " vertices=" << parsed.graph.vertex_count()
                  << " edges=" << parsed.graph.edge_count() << '\n';
    } else if (*clean) {
        momd::Graph g = momd::read_compact(clean_in);
        momd::GiantComponent gc = momd::giant_component(g);
        momd::write_compact(gc.graph, clean_out);
        std::ofstream f(clean_out + ".idmap");
        if (!f)
            momd::raise(momd::ErrorKind::Io, "cannot open " + clean_out + ".idmap");
        for (std::size_t v = 0; v < gc.old_of_new.size(); ++v)
            f << v << ' ' << gc.old_of_new[v] << '\n';
        std::cout << "kept=" << gc.graph.vertex_count()
                  << " dropped=" << (g.vertex_count() - gc.graph.vertex_count()) << '\n';
    } else if (*sample) {
        momd::Graph g = momd::read_compact(sample_graph);
        auto pairs = momd::sample_od_pairs(g, sample_n, sample_seed);
        momd::write_od_pairs(pairs, sample_out);
        std::cout << "pairs=" << pairs.size() << '\n';
    } else if (*gen) {
        momd::SynthSpec spec;
        spec.topology = momd::parse_topology(gen_topology);
        spec.n = gen_n;
        spec.p = gen_p;
        spec.m = gen_m;
        spec.spacing = gen_spacing;
        spec.seed = gen_seed;
        momd::Graph g = momd::generate(spec);
        momd::write_compact(g, gen_out);
        std::cout << "vertices=" << g.vertex_count() << " edges=" << g.edge_count() << '\n';
    } else if (*run) {
        momd::ExperimentConfig cfg;
        cfg.graph_path = run_graph;
        cfg.od_path = run_od;
        if (run_strategy == "both") {
            cfg.strategies = {momd::StrategyKind::collapse_single,
                              momd::StrategyKind::brute_force};
        } else {
            cfg.strategies = {momd::parse_strategy(run_strategy)};
        }
        for (const std::string& r : split_list(run_radii))
            cfg.radii.push_back(momd::parse_double(r, "--radii"));
        cfg.workers = run_workers;
        cfg.seed = run_seed;
        cfg.output_dir = run_out;
        cfg.limit = run_limit;
        cfg.private_graphs = run_private;
        auto artifacts = momd::run_experiment(cfg);
        for (const auto& a : artifacts)
            std::cout << a.results_path << '\n';
    } else if (*prof) {
        momd::Graph g = momd::read_compact(prof_graph);
        momd::ProfileOptions opts;
        opts.seed = prof_seed;
        if (prof_pairs > 0) {
            if (momd::connected_components(g).count() == 1) {
                opts.path_pairs = prof_pairs;
            } else {
                std::cerr << "graph is disconnected, skipping mean path length\n";
            }
        }
        momd::TopologyProfile p = momd::profile(g, opts);
        std::string name = prof_name.empty()
                               ? std::filesystem::path(prof_graph).filename().string()
                               : prof_name;
        std::cout << momd::profile_csv_header() << '\n'
                  << momd::profile_csv_row(name, p) << '\n';
    } else if (*ana) {
        auto cols = split_list(ana_col);
        auto brus = split_list(ana_bru);
        auto radii = split_list(ana_radii);
        auto nodes = split_list(ana_nodes);
        if (cols.size() != brus.size() || cols.size() != radii.size() ||
            (!nodes.empty() && nodes.size() != cols.size()))
            momd::raise(momd::ErrorKind::ConfigInvalid,
                        "analyze needs matching counts of files and radii");
        std::vector<momd::AnalyzeInput> inputs;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            momd::AnalyzeInput in;
            in.radius = momd::parse_double(radii[i], "--radii");
            in.collapse_results = cols[i];
            in.brute_results = brus[i];
            if (!nodes.empty())
                in.collapse_nodes = nodes[i];
            inputs.push_back(in);
        }
        auto rows = momd::analyze(inputs);
        momd::write_analysis(rows, ana_out);
        std::cout << ana_out << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (const momd::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == momd::ErrorKind::ConfigInvalid ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
