#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "topstat/errors.hpp"
#include "topstat/pointcloud.hpp"
#include "topstat/rng.hpp"

namespace topstat {

constexpr int kRejectionCap = 10000; // attempts per point before giving up

// ---------------------------------------------------------------------------
// Model descriptions
// ---------------------------------------------------------------------------

enum class IidKind { Box, Ball, Annulus, Sphere, Beta, Normal, Cauchy };

struct IidModel {
    IidKind kind = IidKind::Box;
    int dim = 2;          // intrinsic dimension d
    double r_in = 0.5;    // Annulus
    double r_out = 1.0;   // Annulus
    double a = 1.0;       // Beta
    double b = 1.0;       // Beta

    void validate() const {
        if (dim < 1) throw ConfigError("iid model: dim must be >= 1");
        if (kind == IidKind::Annulus && !(0.0 < r_in && r_in < r_out))
            throw ConfigError("annulus: requires 0 < r_in < r_out");
        if (kind == IidKind::Beta && !(a > 0.0 && b > 0.0))
            throw ConfigError("beta: requires a > 0 and b > 0");
    }

    [[nodiscard]] std::string tag() const {
        switch (kind) {
        case IidKind::Box: return "box-d" + std::to_string(dim);
        case IidKind::Ball: return "ball-d" + std::to_string(dim);
        case IidKind::Annulus:
            return "annulus-d" + std::to_string(dim) + "-" + std::to_string(r_in) + "-" +
                   std::to_string(r_out);
        case IidKind::Sphere: return "sphere-d" + std::to_string(dim);
        case IidKind::Beta:
            return "beta-d" + std::to_string(dim) + "-" + std::to_string(a) + "-" +
                   std::to_string(b);
        case IidKind::Normal: return "normal-d" + std::to_string(dim);
        case IidKind::Cauchy: return "cauchy-d" + std::to_string(dim);
        }
        return "iid";
    }
};

enum class ManifoldKind { Torus, Klein, Projective, Henneberg, Linkage };

struct ManifoldModel {
    ManifoldKind kind = ManifoldKind::Torus;
    double torus_R1 = 2.0; // center-circle radius
    double torus_R2 = 1.0; // tube radius

    void validate() const {
        if (kind == ManifoldKind::Torus && !(torus_R1 > torus_R2 && torus_R2 > 0.0))
            throw ConfigError("torus: requires R1 > R2 > 0");
    }

    [[nodiscard]] std::string tag() const {
        switch (kind) {
        case ManifoldKind::Torus:
            return "torus-" + std::to_string(torus_R1) + "-" + std::to_string(torus_R2);
        case ManifoldKind::Klein: return "klein";
        case ManifoldKind::Projective: return "projective";
        case ManifoldKind::Henneberg: return "henneberg";
        case ManifoldKind::Linkage: return "linkage";
        }
        return "manifold";
    }
};

struct LorenzParams {
    double sigma = 45.0;
    double rho = 54.0;
    double beta = 10.0;
    double dt = 0.1;
    std::optional<std::array<double, 3>> initial; // drawn uniform in [0,1]^3 when absent

    void validate() const {
        if (!(sigma > 0.0 && rho > 0.0 && beta > 0.0)) throw ConfigError("lorenz: sigma, rho, beta must be > 0");
        if (!(dt > 0.0)) throw ConfigError("lorenz: dt must be > 0");
    }
};

struct TriangleMesh {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<int, 3>> triangles;
};

enum class MeshWeighting { AreaProportional, InverseArea };

// ---------------------------------------------------------------------------
// iid samplers
// ---------------------------------------------------------------------------

inline PointCloud sample_iid(const IidModel& model, std::size_t n, std::uint64_t seed) {
    model.validate();
    if (n < 1) throw ConfigError("sample_iid: n must be >= 1");
    const int d = model.dim;
    const int D = model.kind == IidKind::Sphere ? d + 1 : d;
    PointCloud cloud;
    cloud.ambient_dim = D;
    cloud.coords.reserve(n * std::size_t(D));
    cloud.model_tag = model.tag();
    cloud.seed = seed;
    cloud.intrinsic_dim = d;
    Rng rng = Rng(seed).derive(cloud.model_tag);

    std::vector<double> p(D);
    for (std::size_t i = 0; i < n; ++i) {
        switch (model.kind) {
        case IidKind::Box:
            for (int k = 0; k < d; ++k) p[k] = rng.uniform();
            break;
        case IidKind::Ball: {
            int attempts = 0;
            for (;;) {
                if (++attempts > kRejectionCap)
                    throw NumericError("ball sampler: rejection cap exceeded");
                double s = 0.0;
                for (int k = 0; k < d; ++k) {
                    p[k] = rng.uniform(-1.0, 1.0);
                    s += p[k] * p[k];
                }
                if (s <= 1.0) break;
            }
            break;
        }
        case IidKind::Annulus: {
            int attempts = 0;
            for (;;) {
                if (++attempts > kRejectionCap)
                    throw NumericError("annulus sampler: rejection cap exceeded");
                double s = 0.0;
                for (int k = 0; k < d; ++k) {
                    p[k] = rng.uniform(-model.r_out, model.r_out);
                    s += p[k] * p[k];
                }
                if (s >= model.r_in * model.r_in && s <= model.r_out * model.r_out) break;
            }
            break;
        }
        case IidKind::Sphere: {
            double s = 0.0;
            do {
                s = 0.0;
                for (int k = 0; k < D; ++k) {
                    p[k] = rng.normal();
                    s += p[k] * p[k];
                }
            } while (s == 0.0);
            const double inv = 1.0 / std::sqrt(s);
            for (int k = 0; k < D; ++k) p[k] *= inv;
            break;
        }
        case IidKind::Beta:
            for (int k = 0; k < d; ++k) p[k] = rng.beta(model.a, model.b);
            break;
        case IidKind::Normal:
            for (int k = 0; k < d; ++k) p[k] = rng.normal();
            break;
        case IidKind::Cauchy:
            for (int k = 0; k < d; ++k) p[k] = rng.cauchy();
            break;
        }
        cloud.push_point(p);
    }
    return cloud;
}

// ---------------------------------------------------------------------------
// Parametrized surfaces and the pentagon linkage
// ---------------------------------------------------------------------------

inline PointCloud sample_manifold(const ManifoldModel& model, std::size_t n, std::uint64_t seed) {
    model.validate();
    if (n < 1) throw ConfigError("sample_manifold: n must be >= 1");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    PointCloud cloud;
    cloud.model_tag = model.tag();
    cloud.seed = seed;
    cloud.intrinsic_dim = 2;
    Rng rng = Rng(seed).derive(cloud.model_tag);

    switch (model.kind) {
    case ManifoldKind::Torus: {
        cloud.ambient_dim = 3;
        const double R1 = model.torus_R1, R2 = model.torus_R2;
        for (std::size_t i = 0; i < n; ++i) {
            const double phi = rng.uniform(0.0, two_pi);
            const double theta = rng.uniform(0.0, two_pi);
            const double w = R1 + R2 * std::cos(phi);
            const std::array<double, 3> p{w * std::cos(theta), w * std::sin(theta),
                                          R2 * std::sin(phi)};
            cloud.push_point(p);
        }
        break;
    }
    case ManifoldKind::Klein: {
        cloud.ambient_dim = 4;
        for (std::size_t i = 0; i < n; ++i) {
            const double phi = rng.uniform(0.0, two_pi);
            const double theta = rng.uniform(0.0, two_pi);
            const double w = 1.0 + std::cos(theta);
            const std::array<double, 4> p{w * std::cos(phi), w * std::sin(phi),
                                          std::sin(theta) * std::cos(phi / 2.0),
                                          std::sin(theta) * std::sin(phi / 2.0)};
            cloud.push_point(p);
        }
        break;
    }
    case ManifoldKind::Projective: {
        cloud.ambient_dim = 4;
        for (std::size_t i = 0; i < n; ++i) {
            double u, v, w, s;
            do {
                u = rng.normal();
                v = rng.normal();
                w = rng.normal();
                s = u * u + v * v + w * w;
            } while (s == 0.0);
            const double inv = 1.0 / std::sqrt(s);
            u *= inv;
            v *= inv;
            w *= inv;
            const std::array<double, 4> p{u * v, u * w, v * v - w * w, 2.0 * v * w};
            cloud.push_point(p);
        }
        break;
    }
    case ManifoldKind::Henneberg: {
        cloud.ambient_dim = 3;
        for (std::size_t i = 0; i < n; ++i) {
            const double phi = rng.uniform(0.0, two_pi);
            const double theta = rng.uniform(0.0, two_pi);
            const std::array<double, 3> p{
                2.0 * std::cos(theta) * std::sinh(phi) -
                    (2.0 / 3.0) * std::cos(3.0 * theta) * std::sinh(3.0 * phi),
                2.0 * std::sin(theta) * std::sinh(phi) +
                    (2.0 / 3.0) * std::sin(3.0 * theta) * std::sinh(3.0 * phi),
                2.0 * std::cos(2.0 * theta) * std::cosh(2.0 * phi)};
            cloud.push_point(p);
        }
        break;
    }
    case ManifoldKind::Linkage: {
        // Unit pentagonal linkage with p1 = (0,0), p2 = (1,0) pinned; a sample
        // is the coordinates of (p3, p4, p5). Proposals with |p3 - p5| > 2
        // admit no unit-length closure and are rejected.
        cloud.ambient_dim = 6;
        for (std::size_t i = 0; i < n; ++i) {
            int attempts = 0;
            for (;;) {
                if (++attempts > kRejectionCap)
                    throw NumericError("linkage sampler: rejection cap exceeded");
                const double phi = rng.uniform(0.0, two_pi);
                const double theta = rng.uniform(0.0, two_pi);
                const double p5x = std::cos(phi), p5y = std::sin(phi);
                const double p3x = 1.0 + std::cos(theta), p3y = std::sin(theta);
                const double dx = p3x - p5x, dy = p3y - p5y;
                const double dist2 = dx * dx + dy * dy;
                if (dist2 > 4.0) continue;
                const double qx = 0.5 * (p3x + p5x), qy = 0.5 * (p3y + p5y);
                const double hx = p5x - qx, hy = p5y - qy;
                const double rho2 = hx * hx + hy * hy;
                if (rho2 == 0.0) continue; // p3 == p5: direction undefined
                const double sign = rng.uniform() < 0.5 ? 1.0 : -1.0;
                const double scale = sign * std::sqrt(1.0 - rho2) / std::sqrt(rho2);
                const double p4x = qx + scale * (p5y - qy);
                const double p4y = qy + scale * (qx - p5x);
                const std::array<double, 6> p{p3x, p3y, p4x, p4y, p5x, p5y};
                cloud.push_point(p);
                break;
            }
        }
        break;
    }
    }
    return cloud;
}

// ---------------------------------------------------------------------------
// Stratified plane-in-cube mixture
// ---------------------------------------------------------------------------

inline PointCloud sample_stratified(double p_plane, std::size_t n, std::uint64_t seed) {
    if (!(p_plane >= 0.0 && p_plane <= 1.0))
        throw ConfigError("sample_stratified: p_plane must be in [0, 1]");
    PointCloud cloud;
    cloud.ambient_dim = 3;
    cloud.model_tag = "stratified-" + std::to_string(p_plane);
    cloud.seed = seed;
    Rng rng = Rng(seed).derive(cloud.model_tag);
    for (std::size_t i = 0; i < n; ++i) {
        const bool on_plane = rng.uniform() < p_plane;
        const std::array<double, 3> p{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                                      on_plane ? 0.0 : rng.uniform(-1.0, 1.0)};
        cloud.push_point(p);
    }
    return cloud;
}

// ---------------------------------------------------------------------------
// Triangle-mesh surface sampling
// ---------------------------------------------------------------------------

inline double triangle_area(const TriangleMesh& mesh, const std::array<int, 3>& t) {
    const auto& a = mesh.vertices[t[0]];
    const auto& b = mesh.vertices[t[1]];
    const auto& c = mesh.vertices[t[2]];
    const double ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
    const double vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
    const double cx = uy * vz - uz * vy;
    const double cy = uz * vx - ux * vz;
    const double cz = ux * vy - uy * vx;
    return 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
}

inline PointCloud sample_mesh(const TriangleMesh& mesh, std::size_t n, std::uint64_t seed,
                              MeshWeighting weighting = MeshWeighting::AreaProportional) {
    if (mesh.triangles.empty()) throw DataError("sample_mesh: mesh has no triangles");
    std::vector<double> weight;
    weight.reserve(mesh.triangles.size());
    for (const auto& t : mesh.triangles) {
        const double area = triangle_area(mesh, t);
        if (area > 0.0)
            weight.push_back(weighting == MeshWeighting::AreaProportional ? area : 1.0 / area);
        else
            weight.push_back(0.0); // degenerate triangles are never selected
    }
    std::vector<double> cum(weight.size());
    double total = 0.0;
    for (std::size_t i = 0; i < weight.size(); ++i) {
        total += weight[i];
        cum[i] = total;
    }
    if (total <= 0.0) throw DataError("sample_mesh: all triangles are degenerate");

    PointCloud cloud;
    cloud.ambient_dim = 3;
    cloud.model_tag = weighting == MeshWeighting::AreaProportional ? "mesh-area" : "mesh-invarea";
    cloud.seed = seed;
    cloud.intrinsic_dim = 2;
    Rng rng = Rng(seed).derive(cloud.model_tag);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform() * total;
        const std::size_t ti =
            std::size_t(std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
        const auto& t = mesh.triangles[std::min(ti, cum.size() - 1)];
        double r1 = rng.uniform(), r2 = rng.uniform();
        if (r1 + r2 > 1.0) { // fold back into the triangle
            r1 = 1.0 - r1;
            r2 = 1.0 - r2;
        }
        const auto& a = mesh.vertices[t[0]];
        const auto& b = mesh.vertices[t[1]];
        const auto& c = mesh.vertices[t[2]];
        std::array<double, 3> p;
        for (int k = 0; k < 3; ++k) p[k] = a[k] + r1 * (b[k] - a[k]) + r2 * (c[k] - a[k]);
        cloud.push_point(p);
    }
    return cloud;
}

// ---------------------------------------------------------------------------
// Non-iid models: random walk, Lorenz flow, perturbed lattice
// ---------------------------------------------------------------------------

inline PointCloud sample_brownian(int d, std::size_t n, std::uint64_t seed) {
    if (d < 1 || n < 1) throw ConfigError("sample_brownian: requires d >= 1 and n >= 1");
    PointCloud cloud;
    cloud.ambient_dim = d;
    cloud.model_tag = "brownian-d" + std::to_string(d);
    cloud.seed = seed;
    Rng rng = Rng(seed).derive(cloud.model_tag);
    std::vector<double> pos(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (int k = 0; k < d; ++k) pos[k] += rng.normal();
        cloud.push_point(pos);
    }
    return cloud;
}

inline PointCloud sample_lorenz(const LorenzParams& params, std::size_t n, std::uint64_t seed) {
    params.validate();
    if (n < 1) throw ConfigError("sample_lorenz: n must be >= 1");
    PointCloud cloud;
    cloud.ambient_dim = 3;
    cloud.model_tag = "lorenz";
    cloud.seed = seed;
    Rng rng = Rng(seed).derive(cloud.model_tag);
    std::array<double, 3> x{};
    if (params.initial)
        x = *params.initial;
    else
        for (double& c : x) c = rng.uniform();

    const auto field = [&](const std::array<double, 3>& s) {
        return std::array<double, 3>{params.sigma * (s[1] - s[0]),
                                     s[0] * (params.rho - s[2]) - s[1],
                                     s[0] * s[1] - params.beta * s[2]};
    };
    cloud.push_point(x);
    for (std::size_t i = 1; i < n; ++i) {
        // classical fixed-step RK4
        const auto k1 = field(x);
        std::array<double, 3> t;
        for (int k = 0; k < 3; ++k) t[k] = x[k] + 0.5 * params.dt * k1[k];
        const auto k2 = field(t);
        for (int k = 0; k < 3; ++k) t[k] = x[k] + 0.5 * params.dt * k2[k];
        const auto k3 = field(t);
        for (int k = 0; k < 3; ++k) t[k] = x[k] + params.dt * k3[k];
        const auto k4 = field(t);
        for (int k = 0; k < 3; ++k)
            x[k] += params.dt / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
        for (double c : x)
            if (!std::isfinite(c))
                throw NumericError("lorenz integration blew up at step " + std::to_string(i));
        cloud.push_point(x);
    }
    return cloud;
}

inline PointCloud sample_perturbed_grid(int d, int side, double sigma, std::uint64_t seed) {
    if (side < 2) throw ConfigError("sample_perturbed_grid: side must be >= 2");
    if (sigma < 0.0) throw ConfigError("sample_perturbed_grid: sigma must be >= 0");
    if (d < 1) throw ConfigError("sample_perturbed_grid: d must be >= 1");
    PointCloud cloud;
    cloud.ambient_dim = d;
    cloud.model_tag = "grid-d" + std::to_string(d) + "-s" + std::to_string(side);
    cloud.seed = seed;
    Rng rng = Rng(seed).derive(cloud.model_tag);
    std::size_t total = 1;
    for (int k = 0; k < d; ++k) total *= std::size_t(side);
    std::vector<double> p(d);
    std::vector<int> idx(d, 0);
    for (std::size_t i = 0; i < total; ++i) {
        for (int k = 0; k < d; ++k)
            p[k] = double(idx[k]) / double(side - 1) + (sigma > 0.0 ? sigma * rng.normal() : 0.0);
        cloud.push_point(p);
        for (int k = d - 1; k >= 0; --k) {
            if (++idx[k] < side) break;
            idx[k] = 0;
        }
    }
    return cloud;
}

// ---------------------------------------------------------------------------
// Time-delay embedding
// ---------------------------------------------------------------------------

inline PointCloud delay_embed(std::span<const double> signal, int d, int delta, int tau) {
    if (d < 1 || delta < 1 || tau < 1)
        throw ConfigError("delay_embed: requires d >= 1, delta >= 1, tau >= 1");
    const std::size_t window = std::size_t(d - 1) * std::size_t(tau) + 1;
    if (signal.size() < window)
        throw DataError("delay_embed: signal too short, need at least " + std::to_string(window) +
                        " samples");
    const std::size_t n = (signal.size() - window) / std::size_t(delta) + 1;
    PointCloud cloud;
    cloud.ambient_dim = d;
    cloud.model_tag = "delay-d" + std::to_string(d);
    cloud.intrinsic_dim = std::nullopt;
    std::vector<double> p(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) p[j] = signal[i * std::size_t(delta) + std::size_t(j) * tau];
        cloud.push_point(p);
    }
    return cloud;
}

// ---------------------------------------------------------------------------
// Shapes for the signal-detection experiments: an annulus with a strip
// removed (contractible) and a figure-8 whose neck has an opening of
// width W.
// ---------------------------------------------------------------------------

inline PointCloud sample_cut_annulus(double r_in, double r_out, double width, std::size_t n,
                                     std::uint64_t seed) {
    if (!(0.0 < r_in && r_in < r_out)) throw ConfigError("cut_annulus: requires 0 < r_in < r_out");
    if (width < 0.0) throw ConfigError("cut_annulus: width must be >= 0");
    PointCloud cloud;
    cloud.ambient_dim = 2;
    cloud.model_tag = "cut-annulus-" + std::to_string(width);
    cloud.seed = seed;
    cloud.intrinsic_dim = 2;
    Rng rng = Rng(seed).derive(cloud.model_tag);
    for (std::size_t i = 0; i < n; ++i) {
        int attempts = 0;
        for (;;) {
            if (++attempts > kRejectionCap)
                throw NumericError("cut_annulus sampler: rejection cap exceeded");
            const double x = rng.uniform(-r_out, r_out);
            const double y = rng.uniform(-r_out, r_out);
            const double r2 = x * x + y * y;
            if (r2 < r_in * r_in || r2 > r_out * r_out) continue;
            if (x > 0.0 && std::abs(y) < 0.5 * width) continue; // the removed strip
            const std::array<double, 2> p{x, y};
            cloud.push_point(p);
            break;
        }
    }
    return cloud;
}

inline PointCloud sample_figure8(double r_in, double r_out, double gap, std::size_t n,
                                 std::uint64_t seed) {
    if (!(0.0 < r_in && r_in < r_out)) throw ConfigError("figure8: requires 0 < r_in < r_out");
    if (gap < 0.0) throw ConfigError("figure8: gap must be >= 0");
    PointCloud cloud;
    cloud.ambient_dim = 2;
    cloud.model_tag = "figure8-" + std::to_string(gap);
    cloud.seed = seed;
    cloud.intrinsic_dim = 2;
    Rng rng = Rng(seed).derive(cloud.model_tag);
    // Two rings centered at (+-r_out, 0); the channel |y| < gap/2 between the
    // holes is cleared so they open toward each other.
    for (std::size_t i = 0; i < n; ++i) {
        int attempts = 0;
        for (;;) {
            if (++attempts > kRejectionCap)
                throw NumericError("figure8 sampler: rejection cap exceeded");
            const double cx = rng.uniform() < 0.5 ? -r_out : r_out;
            const double x = cx + rng.uniform(-r_out, r_out);
            const double y = rng.uniform(-r_out, r_out);
            const double dx = x - cx;
            const double r2 = dx * dx + y * y;
            if (r2 < r_in * r_in || r2 > r_out * r_out) continue;
            if (gap > 0.0 && std::abs(y) < 0.5 * gap && std::abs(x) < r_out) continue;
            const std::array<double, 2> p{x, y};
            cloud.push_point(p);
            break;
        }
    }
    return cloud;
}

} // namespace topstat
