#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "topstat/errors.hpp"
#include "topstat/pointcloud.hpp"

namespace topstat {

/// Symmetric Euclidean distance matrix, lower triangle stored row-major.
struct DistanceMatrix {
    std::size_t n = 0;
    std::vector<double> lower; // d(i,j) for i > j at i*(i-1)/2 + j

    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n_) : n(n_), lower(n_ * (n_ - 1) / 2, 0.0) {}

    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
        if (i == j) return 0.0;
        if (i < j) std::swap(i, j);
        return lower[i * (i - 1) / 2 + j];
    }

    double& at(std::size_t i, std::size_t j) {
        if (i < j) std::swap(i, j);
        return lower[i * (i - 1) / 2 + j];
    }
};

inline DistanceMatrix pairwise_distances(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    if (n < 1) throw DataError("pairwise_distances: empty point cloud");
    DistanceMatrix dm(n);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) dm.lower[i * (i - 1) / 2 + j] = cloud.distance(i, j);
    return dm;
}

/// min over i of max over j of d(i,j). Beyond this radius the complex is a
/// cone over the minimizing vertex, so all homology in degree >= 1 is dead.
inline double enclosing_radius(const DistanceMatrix& dm) {
    if (dm.n == 0) throw DataError("enclosing_radius: empty matrix");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dm.n; ++i) {
        double row_max = 0.0;
        for (std::size_t j = 0; j < dm.n; ++j) row_max = std::max(row_max, dm(i, j));
        best = std::min(best, row_max);
    }
    return best;
}

inline double enclosing_radius(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    if (n == 0) throw DataError("enclosing_radius: empty point cloud");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double row_max = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) row_max = std::max(row_max, cloud.distance(i, j));
        best = std::min(best, row_max);
    }
    return best;
}

} // namespace topstat
