#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include "topstat/distance.hpp"
#include "topstat/persistence.hpp"
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

// canonical form of a pairing for cross-algorithm comparison
struct CanonicalPairing {
    std::multiset<std::tuple<int, std::uint32_t, std::uint32_t>> pairs;
    std::multiset<std::pair<int, std::uint32_t>> essentials;
    bool operator==(const CanonicalPairing&) const = default;
};

CanonicalPairing canonical(const PersistencePairing& p, int k_min, int k_max) {
    CanonicalPairing c;
    for (const auto& pr : p.pairs)
        if (pr.degree >= k_min && pr.degree <= k_max)
            c.pairs.insert({pr.degree, pr.birth_row, pr.death_row});
    for (const auto& e : p.essentials)
        if (e.degree >= k_min && e.degree <= k_max) c.essentials.insert({e.degree, e.birth_row});
    return c;
}

} // namespace

TEST_CASE("equilateral triangle: the candidate 1-cycle has zero persistence") {
    const auto tri = make_cloud({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
    const auto f = build_rips(pairwise_distances(tri), 1.0 + 1e-9, 2);
    const auto pairing = reduce_twist(f);
    const auto dgm = extract_diagram(pairing, 1, f.tau, 3);
    CHECK(dgm.pairs.empty());
}

TEST_CASE("unit square: degree-1 diagram is {(1, sqrt 2)} at tau = 1.5") {
    const auto f = build_rips(pairwise_distances(kUnitSquare), 1.5, 2);
    const auto dgm = extract_diagram(reduce_twist(f), 1, 1.5, 4);
    REQUIRE(dgm.pairs.size() == 1);
    CHECK(dgm.pairs[0].first == 1.0);
    CHECK(dgm.pairs[0].second == std::sqrt(2.0));
}

TEST_CASE("unit square truncated below the diagonal: the cycle is infinite") {
    const auto f = build_rips(pairwise_distances(kUnitSquare), 1.2, 2);
    const auto dgm = extract_diagram(reduce_twist(f), 1, 1.2, 4);
    REQUIRE(dgm.pairs.size() == 1);
    CHECK(dgm.pairs[0].first == 1.0);
    CHECK(dgm.pairs[0].second == kInfDeath);
    CHECK(dgm.n_infinite() == 1);
}

TEST_CASE("twist equals naive on random clouds, all degrees") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int d = seed % 2 == 0 ? 2 : 3;
        const std::size_t n = 6 + seed % 7;
        const auto cloud = sample_iid({IidKind::Box, d}, n, seed + 100);
        const auto dm = pairwise_distances(cloud);
        const auto f = build_rips(dm, enclosing_radius(dm), 3);
        const auto twist = reduce_twist(f);
        const auto naive = reduce_naive(f);
        CHECK(canonical(twist, 0, 3) == canonical(naive, 0, 3));
    }
}

TEST_CASE("degree-restricted twist matches the full pairing") {
    const auto cloud = sample_iid({IidKind::Box, 2}, 12, 5);
    const auto dm = pairwise_distances(cloud);
    const auto f = build_rips(dm, enclosing_radius(dm), 3);
    const auto full = reduce_twist(f);
    const auto only_k1 = reduce_twist(f, 1, 1);
    CHECK(canonical(full, 1, 1) == canonical(only_k1, 1, 1));
}

TEST_CASE("vertices only: every vertex is an infinite degree-0 birth") {
    const auto f = build_rips(pairwise_distances(kUnitSquare), 0.5, 2);
    const auto pairing = reduce_twist(f);
    std::size_t deg0 = 0;
    for (const auto& e : pairing.essentials)
        if (e.degree == 0) ++deg0;
    CHECK(deg0 == 4);
    CHECK(pairing.pairs.empty());

    const auto naive = reduce_naive(f);
    CHECK(canonical(pairing, 0, 2) == canonical(naive, 0, 2));
}

TEST_CASE("empty filtration reduces to an empty pairing") {
    Filtration f;
    f.n_vertices = 0;
    f.tau = 1.0;
    const auto pairing = reduce_twist(f);
    CHECK(pairing.pairs.empty());
    CHECK(pairing.essentials.empty());
    CHECK(reduce_naive(f).pairs.empty());
}

TEST_CASE("extract_diagram drops zero persistence, keeps infinite, rejects k=0") {
    PersistencePairing pairing;
    pairing.min_degree = 0;
    pairing.max_degree = 1;
    pairing.pairs.push_back({1, 0, 0, 1.0, 1.0});  // zero persistence
    pairing.pairs.push_back({1, 1, 1, 1.0, 2.0});
    pairing.essentials.push_back({1, 2, 1.0});
    const auto dgm = extract_diagram(pairing, 1, 5.0, 10);
    REQUIRE(dgm.pairs.size() == 2);
    CHECK(dgm.pairs[0] == std::pair<double, double>{1.0, 2.0});
    CHECK(dgm.pairs[1].second == kInfDeath);
    CHECK_THROWS_AS(extract_diagram(pairing, 0, 5.0, 10), ConfigError);
}

TEST_CASE("diagrams are invariant under order-preserving relabeling") {
    const auto cloud = sample_iid({IidKind::Box, 2}, 15, 77);
    // reverse the point order: an order-preserving relabeling of vertices
    PointCloud reversed;
    reversed.ambient_dim = cloud.ambient_dim;
    for (std::size_t i = cloud.size(); i-- > 0;) reversed.push_point(cloud.point(i));

    for (int k = 1; k <= 2; ++k) {
        const auto f1 = build_rips(pairwise_distances(cloud), 0.8, 3);
        const auto f2 = build_rips(pairwise_distances(reversed), 0.8, 3);
        const auto d1 = extract_diagram(reduce_twist(f1), k, 0.8, 15);
        const auto d2 = extract_diagram(reduce_twist(f2), k, 0.8, 15);
        CHECK(d1.pairs == d2.pairs);
    }
}

TEST_CASE("monotonicity in tau: finite pairs persist, infinite pairs resolve") {
    const auto cloud = sample_iid({IidKind::Annulus, 2, 0.5, 1.0}, 60, 4);
    const auto dm = pairwise_distances(cloud);
    const double tau2 = enclosing_radius(dm);
    const double tau1 = tau2 * 0.45;
    const auto dgm1 = extract_diagram(reduce_twist(build_rips(dm, tau1, 2)), 1, tau1, 60);
    const auto dgm2 = extract_diagram(reduce_twist(build_rips(dm, tau2, 2)), 1, tau2, 60);

    std::multiset<std::pair<double, double>> later(dgm2.pairs.begin(), dgm2.pairs.end());
    std::multiset<double> later_births;
    for (const auto& [b, d] : dgm2.pairs) later_births.insert(b);
    for (const auto& [b, d] : dgm1.pairs) {
        if (d != kInfDeath) {
            CHECK(later.count({b, d}) > 0);
        } else {
            CHECK(later_births.count(b) > 0); // same birth, death possibly resolved
        }
    }
}

TEST_CASE("euler characteristic matches the alternating essential count") {
    const auto cloud = sample_iid({IidKind::Sphere, 2}, 30, 12);
    const auto dm = pairwise_distances(cloud);
    const auto f = build_rips(dm, enclosing_radius(dm), 3);
    const auto pairing = reduce_twist(f);
    // chi = sum over dims of (-1)^dim simplex count
    double chi = double(f.n_vertices);
    for (const auto& level : f.levels) chi += (level.dim % 2 == 0 ? 1.0 : -1.0) * double(level.size());
    double chi_essential = 0.0;
    for (const auto& e : pairing.essentials)
        chi_essential += (e.degree % 2 == 0 ? 1.0 : -1.0);
    CHECK(chi == chi_essential);
}

TEST_CASE("diagram csv round trip with inf deaths") {
    PersistenceDiagram dgm;
    dgm.degree = 1;
    dgm.tau = 2.0;
    dgm.n_points = 9;
    dgm.pairs = {{0.5, 1.25}, {0.75, kInfDeath}};
    std::stringstream ss;
    write_diagram_csv(dgm, ss);
    CHECK(ss.str().substr(0, 14) == "k,birth,death\n");
    const auto back = read_diagram_csv(ss);
    CHECK(back.degree == 1);
    REQUIRE(back.pairs.size() == 2);
    CHECK(back.pairs[0] == std::pair<double, double>{0.5, 1.25});
    CHECK(back.pairs[1].second == kInfDeath);
}

TEST_CASE("finite_part splits off infinite pairs with a count") {
    PersistenceDiagram dgm;
    dgm.pairs = {{1.0, 2.0}, {1.5, kInfDeath}, {2.0, 3.0}};
    const auto [fin, dropped] = dgm.finite_part();
    CHECK(fin.pairs.size() == 2);
    CHECK(dropped == 1);
}
