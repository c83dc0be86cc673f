#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <ostream>
#include <queue>
#include <vector>

#include "topstat/errors.hpp"
#include "topstat/filtration.hpp"
#include "topstat/io.hpp"

namespace topstat {

constexpr double kInfDeath = std::numeric_limits<double>::infinity();

/// Raw output of a reduction: index pairs plus unpaired (essential) births,
/// organized by homology degree. Values are copied out of the filtration so
/// diagrams survive the filtration itself.
struct PersistencePairing {
    struct Pair {
        int degree;                // dimension of the birth simplex
        std::uint32_t birth_row;   // row in its level (vertex id for degree 0)
        std::uint32_t death_row;   // row in the level above
        double birth;
        double death;
    };
    struct Essential {
        int degree;
        std::uint32_t birth_row;
        double birth;
    };
    std::vector<Pair> pairs;
    std::vector<Essential> essentials;
    int min_degree = 0; // degrees outside [min_degree, max_degree] were not computed
    int max_degree = 0;
};

namespace detail {

inline std::int64_t pop_pivot(std::priority_queue<std::uint32_t>& heap) {
    while (!heap.empty()) {
        const std::uint32_t top = heap.top();
        heap.pop();
        if (!heap.empty() && heap.top() == top) {
            heap.pop(); // Z/2: a doubled entry cancels
            continue;
        }
        return std::int64_t(top);
    }
    return -1;
}

} // namespace detail

/// Column reduction over Z/2 processed in decreasing dimension with clearing:
/// a column whose row was claimed as a pivot one dimension up is already known
/// to reduce to zero and is skipped. Degrees outside [k_min, k_max] are not
/// reported (and dimensions above k_max + 1 are not even touched).
inline PersistencePairing reduce_twist(const Filtration& f, int k_min = 0,
                                       int k_max = std::numeric_limits<int>::max()) {
    if (k_min < 0) k_min = 0;
    PersistencePairing out;
    const int top_dim = int(f.levels.size());
    const int d_top = std::min(top_dim, k_max < std::numeric_limits<int>::max() - 1 ? k_max + 1
                                                                                    : top_dim);
    const int d_min = std::max(1, k_min);
    out.min_degree = k_min;
    out.max_degree = std::min(k_max, d_top == top_dim ? top_dim : d_top - 1);
    if (d_top < d_min) {
        if (k_min == 0 && top_dim == 0) { // vertices only: all essential
            out.max_degree = std::max(out.max_degree, 0);
            for (std::size_t v = 0; v < f.n_vertices; ++v)
                out.essentials.push_back({0, std::uint32_t(v), 0.0});
        }
        return out;
    }

    // claimed_above[r]: the dim-(d+1) column that claimed row r as pivot
    std::vector<std::int64_t> claimed_above;
    for (int d = d_top; d >= d_min; --d) {
        const FiltrationLevel& cols = f.levels[std::size_t(d - 1)];
        const std::size_t n_rows = d == 1 ? f.n_vertices : f.levels[std::size_t(d - 2)].size();
        const std::size_t n_cols = cols.size();
        std::vector<std::int64_t> claim(n_rows, -1);
        std::vector<std::vector<std::uint32_t>> stored(n_rows);
        std::vector<bool> positive(n_cols, false);

        std::priority_queue<std::uint32_t> heap;
        std::vector<std::uint32_t> extracted;
        for (std::size_t c = 0; c < n_cols; ++c) {
            if (!claimed_above.empty() && claimed_above[c] >= 0) continue; // cleared
            heap = {};
            for (const std::uint32_t r : cols.boundary(c)) heap.push(r);
            for (;;) {
                const std::int64_t pivot = detail::pop_pivot(heap);
                if (pivot < 0) {
                    positive[c] = true;
                    break;
                }
                if (claim[std::size_t(pivot)] < 0) {
                    claim[std::size_t(pivot)] = std::int64_t(c);
                    extracted.clear();
                    extracted.push_back(std::uint32_t(pivot));
                    for (;;) {
                        const std::int64_t r = detail::pop_pivot(heap);
                        if (r < 0) break;
                        extracted.push_back(std::uint32_t(r));
                    }
                    stored[std::size_t(pivot)] = extracted;
                    break;
                }
                for (const std::uint32_t r : stored[std::size_t(pivot)]) heap.push(r);
                heap.push(std::uint32_t(pivot)); // cancels against the working pivot
            }
        }

        // report degree d-1 pairs
        if (d - 1 >= k_min && d - 1 <= k_max) {
            for (std::size_t r = 0; r < n_rows; ++r) {
                if (claim[r] < 0) continue;
                const double birth = d == 1 ? 0.0 : f.levels[std::size_t(d - 2)].values[r];
                out.pairs.push_back({d - 1, std::uint32_t(r), std::uint32_t(claim[r]), birth,
                                     cols.values[std::size_t(claim[r])]});
            }
        }
        // essential classes of degree d: positive and never claimed above;
        // only known when dimension d+1 was fully processed or absent
        if (d >= k_min && d <= k_max && (d < d_top || d == top_dim)) {
            for (std::size_t c = 0; c < n_cols; ++c)
                if (positive[c] && (claimed_above.empty() || claimed_above[c] < 0))
                    out.essentials.push_back({d, std::uint32_t(c), cols.values[c]});
        }
        claimed_above = std::move(claim);
    }

    // degree-0 pairs were reported by the d == 1 pass; unclaimed vertices are
    // the essential components
    if (k_min == 0 && d_min == 1) {
        for (std::size_t v = 0; v < f.n_vertices; ++v)
            if (claimed_above[v] < 0) out.essentials.push_back({0, std::uint32_t(v), 0.0});
    }
    return out;
}

/// Reference oracle: textbook left-to-right column reduction over the full
/// boundary matrix in global filtration order, no optimizations. Intended for
/// small filtrations.
inline PersistencePairing reduce_naive(const Filtration& f) {
    struct Cell {
        int dim;
        std::uint32_t row;
    };
    // global order: vertices first (value 0), then by (value, dim, lex);
    // levels are already (value, lex)-sorted so a stable merge suffices
    std::vector<Cell> order;
    order.reserve(f.total_simplices());
    for (std::size_t v = 0; v < f.n_vertices; ++v) order.push_back({0, std::uint32_t(v)});
    {
        std::vector<std::size_t> cursor(f.levels.size(), 0);
        for (;;) {
            int best_level = -1;
            double best_value = 0.0;
            for (std::size_t li = 0; li < f.levels.size(); ++li) {
                if (cursor[li] >= f.levels[li].size()) continue;
                const double v = f.levels[li].values[cursor[li]];
                if (best_level < 0 || v < best_value) {
                    best_level = int(li);
                    best_value = v;
                }
            }
            if (best_level < 0) break;
            order.push_back(
                {f.levels[std::size_t(best_level)].dim, std::uint32_t(cursor[std::size_t(best_level)])});
            ++cursor[std::size_t(best_level)];
        }
    }
    const std::size_t m = order.size();
    std::vector<std::vector<std::size_t>> global_of(f.levels.size() + 1);
    global_of[0].resize(f.n_vertices);
    for (std::size_t li = 0; li < f.levels.size(); ++li)
        global_of[li + 1].resize(f.levels[li].size());
    for (std::size_t g = 0; g < m; ++g) global_of[std::size_t(order[g].dim)][order[g].row] = g;

    // columns as ascending sorted vectors of global row ids
    std::vector<std::vector<std::size_t>> matrix(m);
    for (std::size_t g = 0; g < m; ++g) {
        const auto [dim, row] = order[g];
        if (dim == 0) continue;
        const auto rows = f.levels[std::size_t(dim - 1)].boundary(row);
        auto& col = matrix[g];
        for (const std::uint32_t r : rows) col.push_back(global_of[std::size_t(dim - 1)][r]);
        std::sort(col.begin(), col.end());
    }

    std::vector<std::int64_t> claim(m, -1);
    std::vector<std::size_t> merged;
    for (std::size_t j = 0; j < m; ++j) {
        auto& col = matrix[j];
        while (!col.empty()) {
            const std::size_t low = col.back();
            if (claim[low] < 0) {
                claim[low] = std::int64_t(j);
                break;
            }
            const auto& other = matrix[std::size_t(claim[low])];
            merged.clear();
            std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                          std::back_inserter(merged));
            col.swap(merged);
        }
    }

    PersistencePairing out;
    out.min_degree = 0;
    out.max_degree = int(f.levels.size());
    auto value_of = [&](std::size_t g) {
        const auto [dim, row] = order[g];
        return dim == 0 ? 0.0 : f.levels[std::size_t(dim - 1)].values[row];
    };
    for (std::size_t g = 0; g < m; ++g) {
        if (claim[g] >= 0) {
            out.pairs.push_back({order[g].dim, order[g].row, order[std::size_t(claim[g])].row,
                                 value_of(g), value_of(std::size_t(claim[g]))});
        } else if (matrix[g].empty()) { // positive and unclaimed: essential
            out.essentials.push_back({order[g].dim, order[g].row, value_of(g)});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Diagrams
// ---------------------------------------------------------------------------

/// Per-degree multiset of (birth, death) radius pairs; death == kInfDeath
/// marks cycles unresolved at the truncation radius tau.
struct PersistenceDiagram {
    int degree = 1;
    double tau = kInfDeath;
    std::size_t n_points = 0;
    ComplexType complex_type = ComplexType::Rips;
    std::vector<std::pair<double, double>> pairs;

    [[nodiscard]] std::size_t size() const { return pairs.size(); }

    [[nodiscard]] std::size_t n_infinite() const {
        std::size_t c = 0;
        for (const auto& [b, d] : pairs)
            if (d == kInfDeath) ++c;
        return c;
    }

    /// Finite pairs only, plus how many infinite ones were set aside.
    [[nodiscard]] std::pair<PersistenceDiagram, std::size_t> finite_part() const {
        PersistenceDiagram fin = *this;
        fin.pairs.clear();
        std::size_t dropped = 0;
        for (const auto& p : pairs) {
            if (p.second == kInfDeath)
                ++dropped;
            else
                fin.pairs.push_back(p);
        }
        return {fin, dropped};
    }
};

/// Filters a pairing to a single degree k >= 1, dropping zero-persistence
/// pairs (birth == death exactly).
inline PersistenceDiagram extract_diagram(const PersistencePairing& pairing, int k, double tau,
                                          std::size_t n_points,
                                          ComplexType complex_type = ComplexType::Rips) {
    if (k == 0)
        throw ConfigError("extract_diagram: degree 0 is unsupported; statistics are defined for "
                          "k >= 1");
    if (k < pairing.min_degree || k > pairing.max_degree)
        throw ConfigError("extract_diagram: degree " + std::to_string(k) +
                          " was not computed by the reduction");
    PersistenceDiagram dgm;
    dgm.degree = k;
    dgm.tau = tau;
    dgm.n_points = n_points;
    dgm.complex_type = complex_type;
    for (const auto& p : pairing.pairs)
        if (p.degree == k && p.death != p.birth) dgm.pairs.emplace_back(p.birth, p.death);
    for (const auto& e : pairing.essentials)
        if (e.degree == k) dgm.pairs.emplace_back(e.birth, kInfDeath);
    std::stable_sort(dgm.pairs.begin(), dgm.pairs.end());
    return dgm;
}

/// Diagram CSV: header "k,birth,death", death written as "inf".
inline void write_diagram_csv(const PersistenceDiagram& dgm, std::ostream& os) {
    os << "k,birth,death\n";
    for (const auto& [b, d] : dgm.pairs) {
        os << dgm.degree << "," << format_double(b) << ",";
        if (d == kInfDeath)
            os << "inf";
        else
            os << format_double(d);
        os << "\n";
    }
}

inline PersistenceDiagram read_diagram_csv(std::istream& is) {
    PersistenceDiagram dgm;
    std::string line;
    std::size_t line_no = 0;
    bool saw_degree = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (line_no == 1 || line.empty() || line == "\r") continue; // header
        std::size_t c1 = line.find(',');
        std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw DataError("diagram csv line " + std::to_string(line_no) + ": expected 3 columns");
        const int k = int(parse_double(line.substr(0, c1), line_no));
        if (!saw_degree) {
            dgm.degree = k;
            saw_degree = true;
        } else if (k != dgm.degree) {
            continue; // multi-degree files: keep the first degree encountered
        }
        const double b = parse_double(line.substr(c1 + 1, c2 - c1 - 1), line_no);
        std::string ds = line.substr(c2 + 1);
        while (!ds.empty() && (ds.back() == '\r' || ds.back() == ' ')) ds.pop_back();
        const double d = (ds == "inf") ? kInfDeath : parse_double(ds, line_no);
        dgm.pairs.emplace_back(b, d);
    }
    return dgm;
}

} // namespace topstat
