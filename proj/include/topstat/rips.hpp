#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "topstat/distance.hpp"
#include "topstat/filtration.hpp"
#include "topstat/pointcloud.hpp"

namespace topstat {

namespace detail {

// A simplex on vertex set sigma appears at the maximum pairwise distance in
// sigma. Enumeration runs dimension by dimension: edges from the distance
// functor, triangles by merging the upper-adjacency lists of an edge's
// endpoints, higher simplices by extending a simplex with a common upper
// neighbor of all its vertices. Facet rows are recorded on the way so the
// reduction never has to search for boundaries.
template <typename Dist>
Filtration build_rips_impl(std::size_t n, Dist&& dist, double tau, int max_dim) {
    if (!(tau > 0.0)) throw ConfigError("build_rips: tau must be > 0");
    if (max_dim < 1) throw ConfigError("build_rips: max_dim must be >= 1");
    Filtration f;
    f.complex_type = ComplexType::Rips;
    f.tau = tau;
    f.max_dim = max_dim;
    f.n_vertices = n;

    // dimension 1
    FiltrationLevel edges;
    edges.dim = 1;
    for (std::uint32_t i = 0; i + 1 < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) {
            const double d = dist(i, j);
            if (d <= tau) {
                edges.values.push_back(d);
                edges.verts.push_back(i);
                edges.verts.push_back(j);
            }
        }
    detail::sort_level(edges);
    edges.facets = edges.verts; // boundary of an edge is its two vertices
    const std::size_t n_edges = edges.size();
    f.levels.push_back(std::move(edges));
    if (max_dim == 1) return f;

    // upper adjacency: adj[u] = (v, edge_row) for edges (u, v) with v > u,
    // sorted by v
    const FiltrationLevel& e = f.levels[0];
    std::vector<std::uint32_t> deg(n, 0);
    for (std::size_t r = 0; r < n_edges; ++r) ++deg[e.verts[2 * r]];
    std::vector<std::size_t> start(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) start[v + 1] = start[v] + deg[v];
    std::vector<std::pair<std::uint32_t, std::uint32_t>> adj(n_edges); // (nbr, edge row)
    {
        std::vector<std::size_t> fill(start.begin(), start.end() - 1);
        for (std::size_t r = 0; r < n_edges; ++r) {
            const std::uint32_t u = e.verts[2 * r], v = e.verts[2 * r + 1];
            adj[fill[u]++] = {v, std::uint32_t(r)};
        }
        for (std::size_t v = 0; v < n; ++v)
            std::sort(adj.begin() + std::ptrdiff_t(start[v]), adj.begin() + std::ptrdiff_t(start[v + 1]));
    }

    // dimension 2: count first so the arrays can be sized exactly
    FiltrationLevel tris;
    tris.dim = 2;
    {
        std::size_t count = 0;
        for (std::size_t r = 0; r < n_edges; ++r) {
            const std::uint32_t u = e.verts[2 * r], v = e.verts[2 * r + 1];
            std::size_t a = start[u], b = start[v];
            while (a < start[u + 1] && b < start[v + 1]) {
                if (adj[a].first < adj[b].first)
                    ++a;
                else if (adj[a].first > adj[b].first)
                    ++b;
                else {
                    if (adj[a].first > v) ++count;
                    ++a;
                    ++b;
                }
            }
        }
        tris.values.reserve(count);
        tris.verts.reserve(3 * count);
        tris.facets.reserve(3 * count);
        for (std::size_t r = 0; r < n_edges; ++r) {
            const std::uint32_t u = e.verts[2 * r], v = e.verts[2 * r + 1];
            const double duv = e.values[r];
            std::size_t a = start[u], b = start[v];
            while (a < start[u + 1] && b < start[v + 1]) {
                if (adj[a].first < adj[b].first)
                    ++a;
                else if (adj[a].first > adj[b].first)
                    ++b;
                else {
                    const std::uint32_t w = adj[a].first;
                    if (w > v) {
                        tris.values.push_back(
                            std::max(duv, std::max(e.values[adj[a].second], e.values[adj[b].second])));
                        tris.verts.insert(tris.verts.end(), {u, v, w});
                        tris.facets.insert(tris.facets.end(),
                                           {std::uint32_t(r), adj[a].second, adj[b].second});
                    }
                    ++a;
                    ++b;
                }
            }
        }
    }
    detail::sort_level(tris);
    f.levels.push_back(std::move(tris));

    // dimensions >= 3: extend each simplex by common upper neighbors; facet
    // rows found through a per-level tuple map (these levels only arise at
    // small scales)
    for (int dim = 3; dim <= max_dim; ++dim) {
        const FiltrationLevel& prev = f.levels[std::size_t(dim - 2)];
        if (prev.size() == 0) break;
        std::map<std::vector<std::uint32_t>, std::uint32_t> prev_row;
        for (std::size_t r = 0; r < prev.size(); ++r) {
            const auto s = prev.simplex(r);
            prev_row.emplace(std::vector<std::uint32_t>(s.begin(), s.end()), std::uint32_t(r));
        }
        FiltrationLevel next;
        next.dim = dim;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> common, merged;
        std::vector<std::uint32_t> key;
        for (std::size_t r = 0; r < prev.size(); ++r) {
            const auto s = prev.simplex(r);
            // common upper neighbors of all vertices of s, with edge rows to
            // the last vertex retained for the value update
            common.assign(adj.begin() + std::ptrdiff_t(start[s[0]]),
                          adj.begin() + std::ptrdiff_t(start[s[0] + 1]));
            for (int k = 1; k < dim && !common.empty(); ++k) {
                merged.clear();
                std::size_t a = 0, b = start[s[std::size_t(k)]];
                const std::size_t b_end = start[s[std::size_t(k)] + 1];
                while (a < common.size() && b < b_end) {
                    if (common[a].first < adj[b].first)
                        ++a;
                    else if (common[a].first > adj[b].first)
                        ++b;
                    else {
                        merged.push_back(adj[b]); // keep row of the latest edge
                        ++a;
                        ++b;
                    }
                }
                common.swap(merged);
            }
            for (const auto& [w, last_edge_row] : common) {
                (void)last_edge_row;
                if (w <= s[dim - 1]) continue;
                key.assign(s.begin(), s.end());
                key.push_back(w);
                double value = prev.values[r];
                next.verts.insert(next.verts.end(), key.begin(), key.end());
                next.facets.push_back(std::uint32_t(r)); // the face missing w
                for (int drop = 0; drop < dim; ++drop) {
                    std::vector<std::uint32_t> face;
                    face.reserve(std::size_t(dim));
                    for (int k = 0; k <= dim; ++k)
                        if (k != drop) face.push_back(key[std::size_t(k)]);
                    const auto it = prev_row.find(face);
                    if (it == prev_row.end())
                        throw DataError("build_rips: face missing from previous level");
                    value = std::max(value, prev.values[it->second]);
                    next.facets.push_back(it->second);
                }
                next.values.push_back(value);
            }
        }
        detail::sort_level(next);
        if (next.size() == 0) break;
        f.levels.push_back(std::move(next));
    }
    return f;
}

} // namespace detail

inline Filtration build_rips(const DistanceMatrix& dm, double tau, int max_dim = 3) {
    return detail::build_rips_impl(dm.n, [&](std::uint32_t i, std::uint32_t j) { return dm(i, j); },
                                   tau, max_dim);
}

/// Default truncation: the enclosing radius, beyond which nothing in degree
/// >= 1 survives.
inline Filtration build_rips(const DistanceMatrix& dm) {
    return build_rips(dm, enclosing_radius(dm), 3);
}

/// Point-cloud path; computes distances on the fly so no n^2 matrix is held.
inline Filtration build_rips(const PointCloud& cloud, double tau, int max_dim = 3) {
    return detail::build_rips_impl(
        cloud.size(), [&](std::uint32_t i, std::uint32_t j) { return cloud.distance(i, j); }, tau,
        max_dim);
}

inline Filtration build_rips(const PointCloud& cloud) {
    return build_rips(cloud, enclosing_radius(cloud), 3);
}

/// Number of point pairs at distance <= r (the paper's edge-count bookkeeping
/// for the threshold-search savings table).
inline std::size_t count_edges_at(const PointCloud& cloud, double r) {
    const std::size_t n = cloud.size();
    std::size_t count = 0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (cloud.distance(i, j) <= r) ++count;
    return count;
}

} // namespace topstat
