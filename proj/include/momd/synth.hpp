#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "momd/errors.hpp"
#include "momd/graph.hpp"

namespace momd {

enum class Topology { regular, random_uniform, small_world, scale_free };

inline const char* to_string(Topology t) {
    switch (t) {
    case Topology::regular:        return "regular";
    case Topology::random_uniform: return "random";
    case Topology::small_world:    return "small-world";
    case Topology::scale_free:     return "scale-free";
    }
    return "unknown";
}

inline Topology parse_topology(std::string_view s) {
    if (s == "regular") return Topology::regular;
    if (s == "random") return Topology::random_uniform;
    if (s == "small-world") return Topology::small_world;
    if (s == "scale-free") return Topology::scale_free;
    raise(ErrorKind::ConfigInvalid, "unknown topology '" + std::string(s) + "'");
}

struct SynthSpec {
    Topology topology = Topology::regular;
    std::uint32_t n = 0;
    double p = 0.1;        // small-world rewiring probability
    std::uint32_t m = 2;   // scale-free edges per new vertex
    double spacing = 100.0; // metres between grid neighbours
    std::uint64_t seed = 0;
};

namespace detail {

inline std::uint32_t grid_side(std::uint32_t n) {
    auto s = static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    while (s > 1 && (s - 1) * static_cast<std::uint64_t>(s - 1) >= n)
        --s;
    return s;
}

inline void check_common(const SynthSpec& spec) {
    if (spec.n < 4)
        raise(ErrorKind::ConfigInvalid, "generator needs n >= 4");
    if (!(spec.spacing > 0.0))
        raise(ErrorKind::ConfigInvalid, "spacing must be positive");
}

// vertices laid out row-major on a square grid
inline GraphBuilder grid_builder(std::uint32_t n, double spacing) {
    std::uint32_t s = grid_side(n);
    GraphBuilder b(MetricKind::planar);
    for (std::uint32_t i = 0; i < n; ++i) {
        double col = static_cast<double>(i % s);
        double row = static_cast<double>(i / s);
        b.add_vertex(Position{col * spacing, row * spacing});
    }
    return b;
}

// lattice edges in construction order: per vertex, right neighbour then down
inline std::vector<std::pair<VertexId, VertexId>> lattice_edges(std::uint32_t n) {
    std::uint32_t s = grid_side(n);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (i % s != s - 1 && i + 1 < n)
            edges.emplace_back(i, i + 1);
        if (i + s < n)
            edges.emplace_back(i, i + s);
    }
    return edges;
}

} // namespace detail

inline std::size_t lattice_edge_count(std::uint32_t n) {
    return detail::lattice_edges(n).size();
}

// Square grid, every vertex linked to its horizontal and vertical neighbours.
inline Graph gen_regular(const SynthSpec& spec) {
    detail::check_common(spec);
    GraphBuilder b = detail::grid_builder(spec.n, spec.spacing);
    for (auto [u, v] : detail::lattice_edges(spec.n))
        b.add_edge_auto(u, v);
    return b.build();
}

// Uniform random graph with the same vertex layout and edge count as the
// grid of equal size.
inline Graph gen_random(const SynthSpec& spec) {
    detail::check_common(spec);
    const std::uint32_t n = spec.n;
    const std::size_t target = lattice_edge_count(n);
    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<VertexId> pick(0, n - 1);

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(target * 2);
    GraphBuilder b = detail::grid_builder(n, spec.spacing);
    std::size_t added = 0;
    while (added < target) {
        VertexId u = pick(rng);
        VertexId v = pick(rng);
        if (u == v)
            continue;
        VertexId lo = u < v ? u : v;
        VertexId hi = u < v ? v : u;
        std::uint64_t key = (static_cast<std::uint64_t>(lo) << 32) | hi;
        if (!seen.insert(key).second)
            continue;
        b.add_edge_auto(lo, hi);
        ++added;
    }
    return b.build();
}

// Watts-Strogatz style rewiring over the grid: each lattice edge is rewired
// with probability p by replacing one endpoint (chosen by coin flip) with a
// uniformly drawn vertex that is neither the kept endpoint nor one of its
// current neighbours. Weights follow the final endpoint positions.
inline Graph gen_small_world(const SynthSpec& spec) {
    detail::check_common(spec);
    if (!(spec.p >= 0.0 && spec.p <= 1.0))
        raise(ErrorKind::ConfigInvalid, "rewiring probability must be in [0, 1]");
    const std::uint32_t n = spec.n;
    auto edges = detail::lattice_edges(n);

    std::vector<std::unordered_set<VertexId>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].insert(v);
        adj[v].insert(u);
    }

    std::mt19937_64 rng(spec.seed);
    std::bernoulli_distribution rewire(spec.p);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<VertexId> pick(0, n - 1);

    for (auto& [u, v] : edges) {
        if (!rewire(rng))
            continue;
        VertexId kept = coin(rng) == 0 ? u : v;
        VertexId dropped = kept == u ? v : u;
        if (adj[kept].size() >= n - 1)
            continue; // kept endpoint already linked to everyone
        VertexId w;
        do {
            w = pick(rng);
        } while (w == kept || adj[kept].count(w));
        adj[kept].erase(dropped);
        adj[dropped].erase(kept);
        adj[kept].insert(w);
        adj[w].insert(kept);
        u = kept;
        v = w;
    }

    GraphBuilder b = detail::grid_builder(n, spec.spacing);
    for (auto [u, v] : edges)
        b.add_edge_auto(u, v);
    return b.build();
}

// Barabasi-Albert style preferential attachment: a complete seed on m+1
// vertices, then each new vertex attaches to m distinct existing vertices
// drawn proportionally to degree.
inline Graph gen_scale_free(const SynthSpec& spec) {
    detail::check_common(spec);
    if (spec.m < 1)
        raise(ErrorKind::ConfigInvalid, "attachment count m must be at least 1");
    if (spec.n < spec.m + 1)
        raise(ErrorKind::ConfigInvalid, "scale-free generator needs n >= m + 1");
    const std::uint32_t n = spec.n;
    const std::uint32_t m = spec.m;

    std::mt19937_64 rng(spec.seed);
    GraphBuilder b = detail::grid_builder(n, spec.spacing);

    // each vertex appears once per incident edge endpoint
    std::vector<VertexId> repeats;
    repeats.reserve(static_cast<std::size_t>(n) * m * 2);
    for (VertexId u = 0; u <= m; ++u)
        for (VertexId v = u + 1; v <= m; ++v) {
            b.add_edge_auto(u, v);
            repeats.push_back(u);
            repeats.push_back(v);
        }

    std::vector<VertexId> round;
    for (VertexId v = m + 1; v < n; ++v) {
        round.clear();
        while (round.size() < m) {
            std::uniform_int_distribution<std::size_t> pick(0, repeats.size() - 1);
            VertexId t = repeats[pick(rng)];
            bool dup = false;
            for (VertexId r : round)
                if (r == t) { dup = true; break; }
            if (!dup)
                round.push_back(t);
        }
        for (VertexId t : round) {
            b.add_edge_auto(v, t);
            repeats.push_back(v);
            repeats.push_back(t);
        }
    }
    return b.build();
}

inline Graph generate(const SynthSpec& spec) {
    switch (spec.topology) {
    case Topology::regular:        return gen_regular(spec);
    case Topology::random_uniform: return gen_random(spec);
    case Topology::small_world:    return gen_small_world(spec);
    case Topology::scale_free:     return gen_scale_free(spec);
    }
    raise(ErrorKind::ConfigInvalid, "unknown topology");
}

} // namespace momd
