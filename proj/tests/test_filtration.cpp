#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "topstat/distance.hpp"
#include "topstat/filtration.hpp"
#include "topstat/rips.hpp"
#include "topstat/samplers.hpp"

using namespace topstat;

namespace {

PointCloud make_cloud(std::vector<std::vector<double>> pts) {
    PointCloud cloud;
    cloud.ambient_dim = int(pts[0].size());
    for (const auto& p : pts) cloud.push_point(p);
    return cloud;
}

const PointCloud kUnitSquare = make_cloud({{0, 0}, {1, 0}, {0, 1}, {1, 1}});

std::map<std::vector<std::uint32_t>, double> simplex_values(const Filtration& f, int dim) {
    std::map<std::vector<std::uint32_t>, double> out;
    const auto* level = f.level(dim);
    if (!level) return out;
    for (std::size_t i = 0; i < level->size(); ++i) {
        const auto s = level->simplex(i);
        out.emplace(std::vector<std::uint32_t>(s.begin(), s.end()), level->values[i]);
    }
    return out;
}

} // namespace

TEST_CASE("pairwise distances: 3-4-5, singleton, unit square") {
    const auto dm = pairwise_distances(make_cloud({{0, 0}, {3, 4}}));
    CHECK(dm(0, 1) == 5.0);
    CHECK(dm(1, 0) == 5.0);
    CHECK(dm(0, 0) == 0.0);

    const auto single = pairwise_distances(make_cloud({{2, 7}}));
    CHECK(single.n == 1);
    CHECK(single(0, 0) == 0.0);

    const auto sq = pairwise_distances(kUnitSquare);
    std::vector<double> ds;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) ds.push_back(sq(i, j));
    std::sort(ds.begin(), ds.end());
    const double rt2 = std::sqrt(2.0);
    CHECK(ds == std::vector<double>{1, 1, 1, 1, rt2, rt2});
}

TEST_CASE("enclosing radius: square, pair, equilateral") {
    CHECK(enclosing_radius(pairwise_distances(kUnitSquare)) == std::sqrt(2.0));
    CHECK(enclosing_radius(pairwise_distances(make_cloud({{0, 0}, {1, 0}}))) == 1.0);
    const double s = 0.75;
    const auto tri = make_cloud({{0, 0}, {s, 0}, {s / 2, s * std::sqrt(3.0) / 2}});
    CHECK(std::abs(enclosing_radius(pairwise_distances(tri)) - s) < 1e-12);
    CHECK(enclosing_radius(kUnitSquare) == std::sqrt(2.0));
}

TEST_CASE("rips on the equilateral triangle: everything enters at the side length") {
    const auto tri = make_cloud({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
    const auto f = build_rips(pairwise_distances(tri), 1.0 + 1e-9, 2);
    REQUIRE(f.levels.size() == 2);
    REQUIRE(f.level(1)->size() == 3);
    REQUIRE(f.level(2)->size() == 1);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(f.level(1)->values[i] - 1.0) < 1e-12);
    CHECK(std::abs(f.level(2)->values[0] - 1.0) < 1e-12);
    check_filtration(f);
}

TEST_CASE("rips on the unit square: tau selects the diagonals") {
    const auto below = build_rips(pairwise_distances(kUnitSquare), 1.2, 2);
    CHECK(below.level(1)->size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(below.level(1)->values[i] == 1.0);
    CHECK((below.level(2) == nullptr || below.level(2)->size() == 0));

    const auto above = build_rips(pairwise_distances(kUnitSquare), 1.5, 2);
    REQUIRE(above.level(1)->size() == 6);
    const double rt2 = std::sqrt(2.0);
    CHECK(above.level(1)->values[3] == 1.0);
    CHECK(above.level(1)->values[4] == rt2);
    CHECK(above.level(1)->values[5] == rt2);
    REQUIRE(above.level(2)->size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(above.level(2)->values[i] == rt2);
    check_filtration(above);
}

TEST_CASE("rips simplex value equals the max of its edge values") {
    const auto cloud = sample_iid({IidKind::Box, 3}, 30, 17);
    const auto dm = pairwise_distances(cloud);
    const auto f = build_rips(dm, enclosing_radius(dm), 3);
    check_filtration(f);
    for (const auto& level : f.levels) {
        for (std::size_t i = 0; i < level.size(); ++i) {
            const auto s = level.simplex(i);
            double expect = 0.0;
            for (std::size_t a = 0; a + 1 < s.size(); ++a)
                for (std::size_t b = a + 1; b < s.size(); ++b)
                    expect = std::max(expect, dm(s[a], s[b]));
            CHECK(level.values[i] == expect);
        }
    }
}

TEST_CASE("rips from distance matrix and from the cloud agree exactly") {
    const auto cloud = sample_iid({IidKind::Ball, 2}, 40, 23);
    const auto via_dm = build_rips(pairwise_distances(cloud), 0.5, 3);
    const auto via_cloud = build_rips(cloud, 0.5, 3);
    REQUIRE(via_dm.levels.size() == via_cloud.levels.size());
    for (std::size_t li = 0; li < via_dm.levels.size(); ++li) {
        CHECK(via_dm.levels[li].values == via_cloud.levels[li].values);
        CHECK(via_dm.levels[li].verts == via_cloud.levels[li].verts);
        CHECK(via_dm.levels[li].facets == via_cloud.levels[li].facets);
    }
}

TEST_CASE("increasing tau never removes simplices nor changes retained values") {
    const auto cloud = sample_iid({IidKind::Box, 2}, 25, 31);
    const auto dm = pairwise_distances(cloud);
    const auto f1 = build_rips(dm, 0.3, 2);
    const auto f2 = build_rips(dm, 0.45, 2);
    for (int dim = 1; dim <= 2; ++dim) {
        const auto small = simplex_values(f1, dim);
        const auto big = simplex_values(f2, dim);
        for (const auto& [verts, value] : small) {
            auto it = big.find(verts);
            REQUIRE(it != big.end());
            CHECK(it->second == value);
        }
    }
}

TEST_CASE("empty beyond vertices when tau is below the minimum distance") {
    const auto f = build_rips(pairwise_distances(kUnitSquare), 0.5, 2);
    CHECK(f.n_vertices == 4);
    CHECK(f.level(1)->size() == 0);
}

TEST_CASE("filtration dump lists simplices in global order") {
    const auto tri = make_cloud({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
    const auto f = build_rips(pairwise_distances(tri), 2.0, 2);
    std::stringstream ss;
    dump_filtration(f, ss);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    REQUIRE(lines.size() == 7);
    CHECK(lines[0] == "0 0 0");
    CHECK(lines[1] == "0 0 1");
    CHECK(lines[2] == "0 0 2");
    CHECK(lines[3].find(" 1 ") != std::string::npos); // first edge
    // last line is the triangle
    CHECK(lines[6].find(" 2 0 1 2") != std::string::npos);
}

TEST_CASE("edge count bookkeeping") {
    CHECK(count_edges_at(kUnitSquare, 1.0) == 4);
    CHECK(count_edges_at(kUnitSquare, 1.5) == 6);
    CHECK(count_edges_at(kUnitSquare, 0.5) == 0);
}
