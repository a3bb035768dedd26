#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "momd/errors.hpp"
#include "momd/graph.hpp"
#include "momd/io.hpp"
#include "momd/strategy.hpp"

namespace momd {

// Contiguous slice sizes: everyone gets the floor share, the last worker
// also takes the remainder.
inline std::vector<std::size_t> partition_work(std::size_t total, std::size_t workers) {
    if (workers == 0)
        raise(ErrorKind::ConfigInvalid, "worker count must be positive");
    std::vector<std::size_t> sizes(workers, total / workers);
    sizes.back() += total % workers;
    return sizes;
}

struct ResultRecord {
    VertexId origin = kNoVertex;
    VertexId destination = kNoVertex;
    SearchStatus status = SearchStatus::SearchError;
    std::uint32_t hops = 0;
    std::uint64_t expansions = 0;
    std::int64_t time_us = 0;
    double distance = std::numeric_limits<double>::infinity();
    std::vector<VertexId> path;
};

inline std::string result_csv_header() {
    return "origin,destination,status,hops,expansions,time,distance,path";
}

inline std::string to_csv(const ResultRecord& r) {
    std::ostringstream os;
    os << r.origin << ',' << r.destination << ',' << to_string(r.status) << ',' << r.hops << ','
       << r.expansions << ',' << r.time_us << ',' << format_double(r.distance) << ',';
    for (std::size_t i = 0; i < r.path.size(); ++i) {
        if (i) os << '-';
        os << r.path[i];
    }
    return std::move(os).str();
}

inline std::vector<std::string_view> split_char(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

inline ResultRecord parse_result_row(std::string_view line, const std::string& context) {
    auto f = split_char(line, ',');
    if (f.size() != 8)
        raise(ErrorKind::FormatViolation, context + ": result row needs 8 fields");
    ResultRecord r;
    r.origin = static_cast<VertexId>(parse_u64(f[0], context));
    r.destination = static_cast<VertexId>(parse_u64(f[1], context));
    r.status = parse_status(f[2]);
    r.hops = static_cast<std::uint32_t>(parse_u64(f[3], context));
    r.expansions = parse_u64(f[4], context);
    std::int64_t t = 0;
    {
        auto [p, ec] = std::from_chars(f[5].data(), f[5].data() + f[5].size(), t);
        if (ec != std::errc() || p != f[5].data() + f[5].size())
            raise(ErrorKind::FormatViolation, context + ": bad time field");
    }
    r.time_us = t;
    r.distance = f[6] == "inf" ? std::numeric_limits<double>::infinity()
                               : parse_double(f[6], context);
    if (!f[7].empty())
        for (auto part : split_char(f[7], '-'))
            r.path.push_back(static_cast<VertexId>(parse_u64(part, context)));
    return r;
}

inline std::vector<ResultRecord> read_results(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        raise(ErrorKind::Io, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        raise(ErrorKind::FormatViolation, path + ": empty result file");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != result_csv_header())
        raise(ErrorKind::FormatViolation, path + ": unexpected result header");
    std::vector<ResultRecord> out;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        out.push_back(parse_result_row(line, path));
    }
    return out;
}

// Append-only progress log with a monotonic state machine:
// started -> running/error -> finished.
class RunLog {
public:
    enum class State { Idle, Started, Running, Finished };

    explicit RunLog(const std::string& path) : out_(path) {
        if (!out_)
            raise(ErrorKind::Io, "cannot open " + path + " for writing");
    }

    void started(std::size_t total, const std::string& label) {
        require(State::Idle);
        state_ = State::Started;
        line("started", "total=" + std::to_string(total) + " " + label);
    }

    void running(std::size_t done, std::size_t total) {
        if (state_ != State::Started && state_ != State::Running)
            raise(ErrorKind::ConfigInvalid, "log state cannot move back to running");
        state_ = State::Running;
        line("running", "done=" + std::to_string(done) + " total=" + std::to_string(total));
    }

    void error(std::size_t query, const std::string& msg) {
        if (state_ == State::Idle || state_ == State::Finished)
            raise(ErrorKind::ConfigInvalid, "log error event outside a run");
        if (state_ == State::Started)
            state_ = State::Running;
        line("error", "query=" + std::to_string(query) + " msg=" + msg);
    }

    void finished(std::int64_t elapsed_ms) {
        if (state_ == State::Idle || state_ == State::Finished)
            raise(ErrorKind::ConfigInvalid, "log cannot finish before starting");
        state_ = State::Finished;
        line("finished", "elapsed_ms=" + std::to_string(elapsed_ms));
        out_.flush();
    }

    State state() const { return state_; }

private:
    void require(State s) {
        if (state_ != s)
            raise(ErrorKind::ConfigInvalid, "log state transition out of order");
    }

    void line(const char* state, const std::string& rest) {
        auto now = std::chrono::system_clock::now();
        std::time_t tt = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::tm tm{};
        gmtime_r(&tt, &tm);
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        out_ << buf << ' ' << state << ' ' << rest << '\n';
    }

    std::ofstream out_;
    State state_ = State::Idle;
};

struct ExperimentConfig {
    std::string graph_path;
    std::string od_path;
    std::vector<StrategyKind> strategies;
    std::vector<double> radii;
    std::size_t workers = 1;
    std::uint64_t seed = 0;
    std::string output_dir;
    std::size_t limit = 0;        // 0 keeps every OD pair
    bool private_graphs = false;  // give each worker its own graph copy
};

struct BatchArtifact {
    StrategyKind strategy;
    double radius = 0.0;
    std::string results_path;
    std::string log_path;
    std::string nodes_path; // empty for brute force
};

namespace detail {

inline std::string radius_tag(double r) {
    std::string s = format_double(r);
    for (char& c : s)
        if (c == '.') c = 'p';
    return s;
}

struct BatchOutput {
    std::vector<ResultRecord> records;
    std::vector<std::uint64_t> collapsed_nodes; // per query, collapse only
};

inline BatchOutput execute_batch(const Graph& g, const std::vector<OdPair>& pairs,
                                 StrategyKind strategy, double radius, std::size_t workers,
                                 bool private_graphs, std::uint64_t seed, RunLog& log) {
    const std::size_t total = pairs.size();
    auto sizes = partition_work(total, workers);

    BatchOutput out;
    out.records.resize(total);
    out.collapsed_nodes.assign(total, 0);

    std::atomic<std::size_t> done{0};
    std::mutex error_mu;
    std::vector<std::pair<std::size_t, std::string>> errors;

    auto work = [&](std::size_t begin, std::size_t end) {
        SearchWorkspace ws;
        std::optional<Graph> own;
        if (private_graphs)
            own = g; // worker-private copy
        const Graph& local = private_graphs ? *own : g;
        for (std::size_t i = begin; i < end; ++i) {
            MomdQuery q{pairs[i].origin, pairs[i].destination, radius};
            ResultRecord rec;
            rec.origin = q.origin;
            rec.destination = q.destination;
            try {
                MomdOutcome o = run_strategy(strategy, local, q, &ws);
                rec.status = o.search.status;
                rec.hops = o.search.hops;
                rec.expansions = o.search.expansions;
                rec.time_us = o.search.elapsed_us;
                rec.distance = o.search.distance;
                rec.path = std::move(o.search.path);
                out.collapsed_nodes[i] = o.collapsed_nodes;
            } catch (const std::exception& e) {
                rec.status = SearchStatus::SearchError;
                rec.distance = std::numeric_limits<double>::infinity();
                std::lock_guard<std::mutex> lock(error_mu);
                errors.emplace_back(i, e.what());
            }
            out.records[i] = std::move(rec);
            done.fetch_add(1, std::memory_order_relaxed);
        }
    };

    auto t0 = std::chrono::steady_clock::now();
    log.started(total, std::string("strategy=") + to_string(strategy) +
                           " radius=" + format_double(radius) +
                           " workers=" + std::to_string(workers) +
                           " seed=" + std::to_string(seed));

    if (workers == 1) {
        work(0, total);
        log.running(done.load(), total);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        std::size_t offset = 0;
        for (std::size_t w = 0; w < workers; ++w) {
            std::size_t begin = offset;
            std::size_t end = begin + sizes[w];
            offset = end;
            threads.emplace_back(work, begin, end);
        }
        std::size_t last = 0;
        while (done.load(std::memory_order_relaxed) < total) {
            std::this_thread::sleep_for(std::chrono::milliseconds(50));
            std::size_t now = done.load(std::memory_order_relaxed);
            if (now != last && now < total) {
                log.running(now, total);
                last = now;
            }
        }
        for (auto& t : threads)
            t.join();
        log.running(total, total);
    }

    std::sort(errors.begin(), errors.end());
    for (const auto& [idx, msg] : errors)
        log.error(idx, msg);
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    log.finished(elapsed);
    return out;
}

} // namespace detail

// Runs every strategy/radius combination over the OD list and writes, per
// combination, a result CSV (query order), a progress log and, for the
// collapse strategy, a per-query collapsed-node-count CSV.
inline std::vector<BatchArtifact> run_experiment(const ExperimentConfig& cfg) {
    if (cfg.strategies.empty())
        raise(ErrorKind::ConfigInvalid, "no strategies selected");
    if (cfg.radii.empty())
        raise(ErrorKind::ConfigInvalid, "no radii given");
    for (double r : cfg.radii)
        if (r < 0.0)
            raise(ErrorKind::ConfigInvalid, "radii must be non-negative");
    if (cfg.workers == 0)
        raise(ErrorKind::ConfigInvalid, "worker count must be positive");

    Graph g = read_compact(cfg.graph_path);
    std::vector<OdPair> pairs = read_od_pairs(cfg.od_path);
    if (cfg.limit > 0 && pairs.size() > cfg.limit)
        pairs.resize(cfg.limit);
    for (const OdPair& p : pairs) {
        g.position(p.origin);
        g.position(p.destination);
    }

    std::filesystem::create_directories(cfg.output_dir);
    std::vector<BatchArtifact> artifacts;
    for (StrategyKind strategy : cfg.strategies) {
        for (double radius : cfg.radii) {
            std::string stem = std::string(to_string(strategy)) + "_r" +
                               detail::radius_tag(radius);
            BatchArtifact art;
            art.strategy = strategy;
            art.radius = radius;
            art.results_path = cfg.output_dir + "/results_" + stem + ".csv";
            art.log_path = cfg.output_dir + "/log_" + stem + ".txt";

            RunLog log(art.log_path);
            detail::BatchOutput batch = detail::execute_batch(
                g, pairs, strategy, radius, cfg.workers, cfg.private_graphs, cfg.seed, log);

            std::ofstream rf(art.results_path);
            if (!rf)
                raise(ErrorKind::Io, "cannot open " + art.results_path + " for writing");
            rf << result_csv_header() << '\n';
            for (const ResultRecord& r : batch.records)
                rf << to_csv(r) << '\n';
            rf.flush();
            if (!rf)
                raise(ErrorKind::Io, "write failed on " + art.results_path);

            if (strategy == StrategyKind::collapse_single) {
                art.nodes_path = cfg.output_dir + "/nodes_" + stem + ".csv";
                std::ofstream nf(art.nodes_path);
                if (!nf)
                    raise(ErrorKind::Io, "cannot open " + art.nodes_path + " for writing");
                nf << "query,collapsed_nodes\n";
                for (std::size_t i = 0; i < batch.collapsed_nodes.size(); ++i)
                    nf << i << ',' << batch.collapsed_nodes[i] << '\n';
                nf.flush();
                if (!nf)
                    raise(ErrorKind::Io, "write failed on " + art.nodes_path);
            }
            artifacts.push_back(std::move(art));
        }
    }
    return artifacts;
}

struct AnalyzeInput {
    double radius = 0.0;
    std::string collapse_results;
    std::string brute_results;
    std::string collapse_nodes; // optional
};

struct AnalyzeRow {
    double radius = 0.0;
    std::size_t records = 0;
    std::size_t compared = 0;
    std::size_t excluded = 0;
    double accuracy = 0.0;
    double mean_error_all = 0.0;
    double mean_error_nonoptimal = 0.0;
    double max_error = 0.0;
    double collapse_median_expansions = 0.0;
    std::uint64_t collapse_total_expansions = 0;
    std::uint64_t brute_total_expansions = 0;
    std::int64_t collapse_total_time_us = 0;
    std::int64_t brute_total_time_us = 0;
    std::uint64_t total_collapsed_nodes = 0;
};

// Joins collapse and brute result files per radius and reduces them to
// accuracy and cost statistics. Rows are matched by position and must carry
// the same OD pair.
inline std::vector<AnalyzeRow> analyze(const std::vector<AnalyzeInput>& inputs) {
    std::vector<AnalyzeRow> rows;
    for (const AnalyzeInput& in : inputs) {
        std::vector<ResultRecord> col = read_results(in.collapse_results);
        std::vector<ResultRecord> bru = read_results(in.brute_results);
        if (col.size() != bru.size())
            raise(ErrorKind::MismatchedInputs,
                  "result files disagree on record count: " + in.collapse_results + " vs " +
                      in.brute_results);

        AnalyzeRow row;
        row.radius = in.radius;
        row.records = col.size();
        double err_sum = 0.0, err_nonopt_sum = 0.0, max_err = 0.0;
        std::size_t nonopt = 0, optimal = 0;
        std::vector<std::uint64_t> col_exp;
        for (std::size_t i = 0; i < col.size(); ++i) {
            if (col[i].origin != bru[i].origin || col[i].destination != bru[i].destination)
                raise(ErrorKind::MismatchedInputs,
                      "row " + std::to_string(i) + " pairs different queries");
            row.collapse_total_expansions += col[i].expansions;
            row.brute_total_expansions += bru[i].expansions;
            row.collapse_total_time_us += col[i].time_us;
            row.brute_total_time_us += bru[i].time_us;
            if (col[i].status != SearchStatus::Found || bru[i].status != SearchStatus::Found) {
                ++row.excluded;
                continue;
            }
            double error = col[i].distance - bru[i].distance;
            if (error < -kOptimalTolerance)
                raise(ErrorKind::MismatchedInputs,
                      "row " + std::to_string(i) + ": collapse beat the optimum, " +
                          "these files do not describe the same experiment");
            if (error < 0.0)
                error = 0.0;
            ++row.compared;
            col_exp.push_back(col[i].expansions);
            err_sum += error;
            max_err = std::max(max_err, error);
            if (error <= kOptimalTolerance)
                ++optimal;
            else {
                err_nonopt_sum += error;
                ++nonopt;
            }
        }
        if (row.compared > 0) {
            row.accuracy = static_cast<double>(optimal) / static_cast<double>(row.compared);
            row.mean_error_all = err_sum / static_cast<double>(row.compared);
            row.max_error = max_err;
            if (nonopt > 0)
                row.mean_error_nonoptimal = err_nonopt_sum / static_cast<double>(nonopt);
            std::sort(col_exp.begin(), col_exp.end());
            row.collapse_median_expansions =
                static_cast<double>(col_exp[col_exp.size() / 2]);
        }
        if (!in.collapse_nodes.empty()) {
            std::ifstream nf(in.collapse_nodes);
            if (!nf)
                raise(ErrorKind::Io, "cannot open " + in.collapse_nodes);
            std::string line;
            if (!std::getline(nf, line) || line.rfind("query,", 0) != 0)
                raise(ErrorKind::FormatViolation, in.collapse_nodes + ": bad header");
            while (std::getline(nf, line)) {
                if (line.empty())
                    continue;
                auto f = split_char(line, ',');
                if (f.size() != 2)
                    raise(ErrorKind::FormatViolation, in.collapse_nodes + ": bad row");
                row.total_collapsed_nodes += parse_u64(f[1], in.collapse_nodes);
            }
        }
        rows.push_back(row);
    }
    return rows;
}

inline std::string analyze_csv_header() {
    return "radius,records,compared,excluded,accuracy,mean_error_all,"
           "mean_error_nonoptimal,max_error,collapse_median_expansions,"
           "collapse_total_expansions,brute_total_expansions,"
           "collapse_total_time_us,brute_total_time_us,total_collapsed_nodes";
}

inline std::string to_csv(const AnalyzeRow& r) {
    std::ostringstream os;
    os << format_double(r.radius) << ',' << r.records << ',' << r.compared << ',' << r.excluded
       << ',' << format_double(r.accuracy) << ',' << format_double(r.mean_error_all) << ','
       << format_double(r.mean_error_nonoptimal) << ',' << format_double(r.max_error) << ','
       << format_double(r.collapse_median_expansions) << ',' << r.collapse_total_expansions
       << ',' << r.brute_total_expansions << ',' << r.collapse_total_time_us << ','
       << r.brute_total_time_us << ',' << r.total_collapsed_nodes;
    return std::move(os).str();
}

inline void write_analysis(const std::vector<AnalyzeRow>& rows, const std::string& path) {
    std::ofstream f(path);
    if (!f)
        raise(ErrorKind::Io, "cannot open " + path + " for writing");
    f << analyze_csv_header() << '\n';
    for (const AnalyzeRow& r : rows)
        f << to_csv(r) << '\n';
    f.flush();
    if (!f)
        raise(ErrorKind::Io, "write failed on " + path);
}

} // namespace momd
