#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <span>
#include <vector>

#include "topstat/errors.hpp"

namespace topstat {

enum class ComplexType { Rips, Alpha };

/// Simplices of a single dimension d >= 1, sorted by (value, lexicographic
/// vertex tuple). Vertices are dimension 0 and implicit: they all enter at
/// value 0 in vertex-id order.
struct FiltrationLevel {
    int dim = 1;
    std::vector<double> values;          // one per simplex
    std::vector<std::uint32_t> verts;    // (dim+1) ascending ids per simplex
    std::vector<std::uint32_t> facets;   // (dim+1) rows into the level below

    [[nodiscard]] std::size_t size() const { return values.size(); }

    [[nodiscard]] std::span<const std::uint32_t> simplex(std::size_t i) const {
        return {verts.data() + i * std::size_t(dim + 1), std::size_t(dim + 1)};
    }

    [[nodiscard]] std::span<const std::uint32_t> boundary(std::size_t i) const {
        return {facets.data() + i * std::size_t(dim + 1), std::size_t(dim + 1)};
    }
};

struct Filtration {
    ComplexType complex_type = ComplexType::Rips;
    double tau = std::numeric_limits<double>::infinity();
    int max_dim = 1;
    std::size_t n_vertices = 0;
    std::vector<FiltrationLevel> levels; // levels[d-1] holds dimension d

    [[nodiscard]] const FiltrationLevel* level(int dim) const {
        if (dim < 1 || dim > int(levels.size())) return nullptr;
        return &levels[std::size_t(dim - 1)];
    }

    [[nodiscard]] std::size_t total_simplices() const {
        std::size_t t = n_vertices;
        for (const auto& l : levels) t += l.size();
        return t;
    }
};

namespace detail {

inline bool lex_less(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Sort one level by (value, lexicographic vertex tuple) and return the
/// permutation old_row -> new_row so facet references above can be remapped.
inline std::vector<std::uint32_t> sort_level(FiltrationLevel& level) {
    const std::size_t m = level.size();
    const int width = level.dim + 1;
    std::vector<std::uint32_t> order(m);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        if (level.values[x] != level.values[y]) return level.values[x] < level.values[y];
        return lex_less(level.simplex(x), level.simplex(y));
    });
    // gather into sorted arrays
    std::vector<double> values(m);
    std::vector<std::uint32_t> verts(m * std::size_t(width));
    for (std::size_t i = 0; i < m; ++i) {
        values[i] = level.values[order[i]];
        const auto s = level.simplex(order[i]);
        std::copy(s.begin(), s.end(), verts.begin() + i * std::size_t(width));
    }
    level.values = std::move(values);
    level.verts = std::move(verts);
    if (!level.facets.empty()) {
        std::vector<std::uint32_t> facets(m * std::size_t(width));
        for (std::size_t i = 0; i < m; ++i) {
            const std::uint32_t* src = level.facets.data() + order[i] * std::size_t(width);
            std::copy(src, src + width, facets.begin() + i * std::size_t(width));
        }
        level.facets = std::move(facets);
    }
    std::vector<std::uint32_t> inverse(m);
    for (std::size_t i = 0; i < m; ++i) inverse[order[i]] = std::uint32_t(i);
    return inverse;
}

} // namespace detail

/// Verifies the structural invariants: values nondecreasing per level, all
/// values <= tau, each simplex's value >= each facet's value, and facet rows
/// actually naming the simplex's faces. Throws on violation.
inline void check_filtration(const Filtration& f) {
    for (const auto& level : f.levels) {
        const int width = level.dim + 1;
        const FiltrationLevel* below = f.level(level.dim - 1);
        for (std::size_t i = 0; i < level.size(); ++i) {
            if (i > 0 && level.values[i] < level.values[i - 1])
                throw DataError("filtration: values not sorted");
            if (level.values[i] > f.tau)
                throw DataError("filtration: value exceeds tau");
            const auto s = level.simplex(i);
            for (int a = 0; a + 1 < width; ++a)
                if (s[a] >= s[a + 1]) throw DataError("filtration: vertex tuple not ascending");
            const auto rows = level.boundary(i);
            for (int a = 0; a < width; ++a) {
                if (level.dim == 1) {
                    if (rows[a] != s[a]) throw DataError("filtration: edge facet mismatch");
                    continue;
                }
                const auto face = below->simplex(rows[a]);
                if (below->values[rows[a]] > level.values[i])
                    throw DataError("filtration: face enters after coface");
                // the facet must equal the simplex with one vertex removed
                std::size_t matched = 0;
                for (int b = 0, c = 0; b < width; ++b) {
                    if (c < width - 1 && std::size_t(c) < face.size() && s[b] == face[c]) {
                        ++matched;
                        ++c;
                    }
                }
                if (matched != std::size_t(width - 1))
                    throw DataError("filtration: facet row does not name a face");
            }
        }
    }
}

/// Debug dump: one line per simplex, "value dim v0 v1 ... vk", in global
/// filtration order (value, dimension, lexicographic vertex tuple).
inline void dump_filtration(const Filtration& f, std::ostream& os) {
    struct Cursor {
        int dim;
        std::size_t next = 0;
    };
    std::vector<Cursor> cursors;
    for (const auto& l : f.levels) cursors.push_back({l.dim, 0});
    std::size_t vtx = 0;
    auto vertex_pending = [&] { return vtx < f.n_vertices; };
    for (;;) {
        int best = -1;
        double best_value = std::numeric_limits<double>::infinity();
        if (vertex_pending()) {
            best = 0; // vertices carry value 0 and the smallest dimension
            best_value = 0.0;
        }
        int best_level = -1;
        for (std::size_t li = 0; li < cursors.size(); ++li) {
            const auto& level = f.levels[li];
            if (cursors[li].next >= level.size()) continue;
            const double v = level.values[cursors[li].next];
            if (best == -1 || v < best_value) {
                best = 1;
                best_value = v;
                best_level = int(li);
            }
        }
        if (best == -1) break;
        char buf[64];
        if (best == 0) {
            std::snprintf(buf, sizeof(buf), "%.17g", 0.0);
            os << buf << " 0 " << vtx << "\n";
            ++vtx;
            continue;
        }
        const auto& level = f.levels[std::size_t(best_level)];
        const auto s = level.simplex(cursors[std::size_t(best_level)].next);
        std::snprintf(buf, sizeof(buf), "%.17g", best_value);
        os << buf << " " << level.dim;
        for (auto v : s) os << " " << v;
        os << "\n";
        ++cursors[std::size_t(best_level)].next;
    }
}

} // namespace topstat
