#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topstat/errors.hpp"

namespace topstat {

/// A finite set of points in R^D, stored row-major, with provenance
/// metadata so downstream artifacts can record how the cloud was made.
struct PointCloud {
    int ambient_dim = 0;
    std::vector<double> coords; // size() == n * ambient_dim
    std::string model_tag;
    std::uint64_t seed = 0;
    std::optional<int> intrinsic_dim;

    PointCloud() = default;
    PointCloud(int dim, std::size_t n) : ambient_dim(dim), coords(n * std::size_t(dim), 0.0) {}

    [[nodiscard]] std::size_t size() const {
        return ambient_dim == 0 ? 0 : coords.size() / std::size_t(ambient_dim);
    }

    [[nodiscard]] std::span<const double> point(std::size_t i) const {
        return {coords.data() + i * std::size_t(ambient_dim), std::size_t(ambient_dim)};
    }

    [[nodiscard]] std::span<double> point(std::size_t i) {
        return {coords.data() + i * std::size_t(ambient_dim), std::size_t(ambient_dim)};
    }

    void push_point(std::span<const double> p) {
        coords.insert(coords.end(), p.begin(), p.end());
    }

    [[nodiscard]] double distance(std::size_t i, std::size_t j) const {
        const double* a = coords.data() + i * std::size_t(ambient_dim);
        const double* b = coords.data() + j * std::size_t(ambient_dim);
        double s = 0.0;
        for (int k = 0; k < ambient_dim; ++k) {
            const double d = a[k] - b[k];
            s += d * d;
        }
        return std::sqrt(s);
    }

    void check_finite() const {
        for (double v : coords)
            if (!std::isfinite(v)) throw NumericError("point cloud contains non-finite coordinate");
    }
};

inline PointCloud scale_cloud(const PointCloud& cloud, double factor) {
    PointCloud out = cloud;
    for (double& v : out.coords) v *= factor;
    return out;
}

} // namespace topstat
