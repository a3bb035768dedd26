#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "momd/errors.hpp"
#include "momd/graph.hpp"
#include "momd/io.hpp"

namespace momd {

// Shannon entropy of the degree distribution, normalised by the log of the
// number of distinct observed degrees. A single-valued distribution scores 0.
inline double degree_entropy(const Graph& g) {
    const std::size_t n = g.vertex_count();
    if (n == 0)
        raise(ErrorKind::EmptyGraph, "degree_entropy needs vertices");
    std::map<std::size_t, std::size_t> freq;
    for (VertexId v = 0; v < n; ++v)
        ++freq[g.degree(v)];
    if (freq.size() <= 1)
        return 0.0;
    double h = 0.0;
    for (const auto& [deg, count] : freq) {
        double p = static_cast<double>(count) / static_cast<double>(n);
        h -= p * std::log(p);
    }
    return h / std::log(static_cast<double>(freq.size()));
}

// Mean local clustering coefficient. A vertex with fewer than two
// neighbours contributes 0.
inline double clustering_coefficient(const Graph& g) {
    const std::size_t n = g.vertex_count();
    if (n == 0)
        raise(ErrorKind::EmptyGraph, "clustering_coefficient needs vertices");
    double total = 0.0;
    for (VertexId v = 0; v < n; ++v) {
        auto row = g.neighbors(v);
        std::size_t k = row.size();
        if (k < 2)
            continue;
        std::size_t links2 = 0; // twice the links among neighbours
        for (const Arc& a : row) {
            auto other = g.neighbors(a.to);
            // count |N(a.to) ∩ N(v)| with both rows sorted
            std::size_t i = 0, j = 0;
            while (i < row.size() && j < other.size()) {
                if (row[i].to < other[j].to) ++i;
                else if (row[i].to > other[j].to) ++j;
                else { ++links2; ++i; ++j; }
            }
        }
        total += static_cast<double>(links2) /
                 static_cast<double>(k * (k - 1));
    }
    return total / static_cast<double>(n);
}

struct MeanPathResult {
    double mean = 0.0;
    std::size_t sample_size = 0;
    bool exhaustive = false;
};

namespace detail {

inline std::size_t bfs_hops(const Graph& g, VertexId from, VertexId to,
                            std::vector<std::uint32_t>& dist) {
    const auto unseen = std::numeric_limits<std::uint32_t>::max();
    dist.assign(g.vertex_count(), unseen);
    std::deque<VertexId> queue;
    dist[from] = 0;
    queue.push_back(from);
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        if (v == to)
            return dist[v];
        for (const Arc& a : g.neighbors(v)) {
            if (dist[a.to] == unseen) {
                dist[a.to] = dist[v] + 1;
                queue.push_back(a.to);
            }
        }
    }
    raise(ErrorKind::Disconnected, "no path between sampled vertices");
}

} // namespace detail

// Mean shortest-path length in hops, over random vertex pairs. Falls back to
// the exact all-pairs mean when the requested sample covers every pair.
inline MeanPathResult mean_path_length(const Graph& g, std::size_t pairs, std::uint64_t seed) {
    const std::size_t n = g.vertex_count();
    if (n < 2)
        raise(ErrorKind::GraphTooSmall, "mean_path_length needs at least 2 vertices");
    if (connected_components(g).count() != 1)
        raise(ErrorKind::Disconnected, "mean_path_length needs a connected graph");
    if (pairs == 0)
        raise(ErrorKind::ConfigInvalid, "sample size must be positive");

    const std::size_t all_pairs = n * (n - 1) / 2;
    std::vector<std::uint32_t> dist;
    MeanPathResult out;
    if (pairs >= all_pairs) {
        const auto unseen = std::numeric_limits<std::uint32_t>::max();
        std::uint64_t total = 0;
        std::deque<VertexId> queue;
        for (VertexId s = 0; s < n; ++s) {
            dist.assign(n, unseen);
            dist[s] = 0;
            queue.clear();
            queue.push_back(s);
            while (!queue.empty()) {
                VertexId v = queue.front();
                queue.pop_front();
                for (const Arc& a : g.neighbors(v)) {
                    if (dist[a.to] == unseen) {
                        dist[a.to] = dist[v] + 1;
                        queue.push_back(a.to);
                    }
                }
            }
            for (VertexId t = s + 1; t < n; ++t)
                total += dist[t];
        }
        out.mean = static_cast<double>(total) / static_cast<double>(all_pairs);
        out.sample_size = all_pairs;
        out.exhaustive = true;
        return out;
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<VertexId> any(0, static_cast<VertexId>(n - 1));
    std::uniform_int_distribution<VertexId> other(0, static_cast<VertexId>(n - 2));
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < pairs; ++i) {
        VertexId o = any(rng);
        VertexId d = other(rng);
        if (d >= o)
            ++d;
        total += detail::bfs_hops(g, o, d, dist);
    }
    out.mean = static_cast<double>(total) / static_cast<double>(pairs);
    out.sample_size = pairs;
    out.exhaustive = false;
    return out;
}

struct TopologyProfile {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    double mean_degree = 0.0;
    std::size_t median_degree = 0; // upper median
    std::size_t max_degree = 0;
    double hub_ratio = 0.0;        // max degree over median degree
    double entropy = 0.0;
    double clustering = 0.0;
    std::optional<MeanPathResult> mean_path;
};

struct ProfileOptions {
    std::size_t path_pairs = 0; // 0 skips the mean-path computation
    std::uint64_t seed = 0;
};

inline TopologyProfile profile(const Graph& g, const ProfileOptions& opts = {}) {
    if (g.vertex_count() == 0)
        raise(ErrorKind::EmptyGraph, "profile needs vertices");
    TopologyProfile out;
    out.vertices = g.vertex_count();
    out.edges = g.edge_count();
    std::vector<std::size_t> degrees(out.vertices);
    for (VertexId v = 0; v < out.vertices; ++v)
        degrees[v] = g.degree(v);
    std::sort(degrees.begin(), degrees.end());
    out.max_degree = degrees.back();
    out.median_degree = degrees[out.vertices / 2];
    out.mean_degree = 2.0 * static_cast<double>(out.edges) / static_cast<double>(out.vertices);
    out.hub_ratio = out.median_degree == 0
                        ? 0.0
                        : static_cast<double>(out.max_degree) /
                              static_cast<double>(out.median_degree);
    out.entropy = degree_entropy(g);
    out.clustering = clustering_coefficient(g);
    if (opts.path_pairs > 0)
        out.mean_path = mean_path_length(g, opts.path_pairs, opts.seed);
    return out;
}

inline std::string profile_csv_header() {
    return "graph,vertices,edges,mean_degree,median_degree,max_degree,"
           "hub_ratio,entropy,clustering,mean_path,path_samples";
}

inline std::string profile_csv_row(const std::string& name, const TopologyProfile& p) {
    std::ostringstream os;
    os << name << ',' << p.vertices << ',' << p.edges << ','
       << format_double(p.mean_degree) << ',' << p.median_degree << ','
       << p.max_degree << ',' << format_double(p.hub_ratio) << ','
       << format_double(p.entropy) << ',' << format_double(p.clustering) << ',';
    if (p.mean_path)
        os << format_double(p.mean_path->mean) << ',' << p.mean_path->sample_size;
    else
        os << ',' << 0;
    return std::move(os).str();
}

} // namespace momd
