#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "topstat/errors.hpp"
#include "topstat/pointcloud.hpp"
#include "topstat/samplers.hpp"

namespace topstat {

// Doubles are emitted with %.17g so that reading the file back reproduces
// the exact bit pattern and repeated runs are byte-identical.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double parse_double(const std::string& token, std::size_t line_no) {
    double v = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end != begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end)
        throw DataError("line " + std::to_string(line_no) + ": not a number: '" + token + "'");
    return v;
}

inline void write_pointcloud_csv(const PointCloud& cloud, std::ostream& os,
                                 bool header = false) {
    if (header) {
        for (int k = 0; k < cloud.ambient_dim; ++k) os << (k ? "," : "") << "x" << k;
        os << "\n";
    }
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        for (int k = 0; k < cloud.ambient_dim; ++k) os << (k ? "," : "") << format_double(p[k]);
        os << "\n";
    }
}

inline void write_pointcloud_csv(const PointCloud& cloud, const std::string& path,
                                 bool header = false) {
    std::ofstream os(path);
    if (!os) throw DataError("cannot open for writing: " + path);
    write_pointcloud_csv(cloud, os, header);
}

inline PointCloud read_pointcloud_csv(std::istream& is, bool skip_header = false) {
    PointCloud cloud;
    cloud.model_tag = "external";
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (skip_header && line_no == 1) continue;
        if (line.empty() || line == "\r") continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (start <= line.size()) {
            const std::size_t comma = line.find(',', start);
            const std::string cell =
                line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            row.push_back(parse_double(cell, line_no));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (cloud.ambient_dim == 0)
            cloud.ambient_dim = int(row.size());
        else if (int(row.size()) != cloud.ambient_dim)
            throw DataError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(cloud.ambient_dim) + " columns, got " +
                            std::to_string(row.size()));
        cloud.push_point(row);
    }
    if (cloud.size() == 0) throw DataError("point cloud file is empty");
    return cloud;
}

inline PointCloud read_pointcloud_csv(const std::string& path, bool skip_header = false) {
    std::ifstream is(path);
    if (!is) throw DataError("cannot open: " + path);
    return read_pointcloud_csv(is, skip_header);
}

/// One real number per line.
inline std::vector<double> read_signal(std::istream& is) {
    std::vector<double> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        out.push_back(parse_double(line, line_no));
    }
    if (out.empty()) throw DataError("signal file is empty");
    return out;
}

inline std::vector<double> read_signal(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw DataError("cannot open: " + path);
    return read_signal(is);
}

/// ASCII OFF: "OFF" header, counts line, vertex lines, triangular face lines.
inline TriangleMesh read_off(std::istream& is) {
    std::string token;
    if (!(is >> token) || token != "OFF") throw DataError("OFF: missing header");
    std::size_t nv = 0, nf = 0, ne = 0;
    if (!(is >> nv >> nf >> ne)) throw DataError("OFF: malformed counts line");
    TriangleMesh mesh;
    mesh.vertices.resize(nv);
    for (std::size_t i = 0; i < nv; ++i)
        if (!(is >> mesh.vertices[i][0] >> mesh.vertices[i][1] >> mesh.vertices[i][2]))
            throw DataError("OFF: malformed vertex " + std::to_string(i));
    mesh.triangles.reserve(nf);
    for (std::size_t i = 0; i < nf; ++i) {
        std::size_t arity = 0;
        if (!(is >> arity)) throw DataError("OFF: malformed face " + std::to_string(i));
        if (arity != 3) throw DataError("OFF: face " + std::to_string(i) + " is not a triangle");
        std::array<int, 3> t{};
        if (!(is >> t[0] >> t[1] >> t[2]))
            throw DataError("OFF: malformed face " + std::to_string(i));
        for (int v : t)
            if (v < 0 || std::size_t(v) >= nv)
                throw DataError("OFF: face " + std::to_string(i) + " references missing vertex");
        mesh.triangles.push_back(t);
    }
    return mesh;
}

inline TriangleMesh read_off(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw DataError("cannot open: " + path);
    return read_off(is);
}

} // namespace topstat
