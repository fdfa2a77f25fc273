#pragma once

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "codet/errors.hpp"
#include "codet/sample.hpp"
#include "codet/stats.hpp"

namespace codet {

/// Format with 12 significant digits (locale-free).
inline std::string format_sig12(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::optional<double> parse_double_field(std::string_view field) {
    double out = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last) return std::nullopt;
    return out;
}

inline std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

} // namespace detail

/// Render a trajectory as CSV: header `n,A,B,I`, one row per prefix, the I
/// column left blank for undefined prefixes, 12 significant digits.
inline std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "n,A,B,I\n";
    for (const auto& p : traj.points) {
        out += std::to_string(p.n);
        out += ',';
        out += format_sig12(p.a);
        out += ',';
        out += format_sig12(p.b);
        out += ',';
        if (p.i) out += format_sig12(*p.i);
        out += '\n';
    }
    return out;
}

/// Render a paired sample as the CLI input format (header `x,y`).
inline std::string xy_csv(const PairedSample& sample) {
    std::string out = "x,y\n";
    for (const auto& [x, y] : sample.pairs) {
        out += format_sig12(x);
        out += ',';
        out += format_sig12(y);
        out += '\n';
    }
    return out;
}

/// Parse the CLI input format: mandatory header `x,y`, comma-separated rows
/// of two decimal numbers. Throws ParseError with the offending line number.
inline PairedSample parse_xy_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError("empty input: expected header 'x,y'");
    ++lineno;
    if (detail::strip_cr(line) != "x,y") {
        throw ParseError("line 1: expected header 'x,y'");
    }
    PairedSample sample;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view row = detail::strip_cr(line);
        if (row.empty()) continue;
        const auto comma = row.find(',');
        if (comma == std::string_view::npos) {
            throw ParseError("line " + std::to_string(lineno) +
                             ": expected two comma-separated fields");
        }
        const auto x = detail::parse_double_field(row.substr(0, comma));
        const auto y = detail::parse_double_field(row.substr(comma + 1));
        if (!x || !y) {
            throw ParseError("line " + std::to_string(lineno) +
                             ": malformed number");
        }
        sample.pairs.emplace_back(*x, *y);
    }
    return sample;
}

/// Parse a trajectory CSV produced by trajectory_csv.
inline Trajectory parse_trajectory_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line) || detail::strip_cr(line) != "n,A,B,I") {
        throw ParseError("expected header 'n,A,B,I'");
    }
    ++lineno;
    Trajectory traj;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view row = detail::strip_cr(line);
        if (row.empty()) continue;
        TrajectoryPoint p;
        std::string_view fields[4];
        std::string_view rest = row;
        for (int f = 0; f < 3; ++f) {
            const auto comma = rest.find(',');
            if (comma == std::string_view::npos) {
                throw ParseError("line " + std::to_string(lineno) +
                                 ": expected four fields");
            }
            fields[f] = rest.substr(0, comma);
            rest.remove_prefix(comma + 1);
        }
        fields[3] = rest;
        const auto n = detail::parse_double_field(fields[0]);
        const auto a = detail::parse_double_field(fields[1]);
        const auto b = detail::parse_double_field(fields[2]);
        if (!n || !a || !b) {
            throw ParseError("line " + std::to_string(lineno) +
                             ": malformed number");
        }
        p.n = static_cast<std::size_t>(*n);
        p.a = *a;
        p.b = *b;
        if (!fields[3].empty()) {
            const auto i = detail::parse_double_field(fields[3]);
            if (!i) {
                throw ParseError("line " + std::to_string(lineno) +
                                 ": malformed number");
            }
            p.i = *i;
        }
        traj.points.push_back(p);
    }
    return traj;
}

inline PairedSample read_xy_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    return parse_xy_csv(in);
}

inline Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    return parse_trajectory_csv(in);
}

inline void write_text_file(const std::filesystem::path& path,
                            std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace codet
