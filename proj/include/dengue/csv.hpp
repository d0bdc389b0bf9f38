#pragma once

// Trajectory and sweep tables as comma-separated text with '.' decimals and
// shortest round-trip number formatting.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "dengue/errors.hpp"
#include "dengue/format.hpp"
#include "dengue/integrator.hpp"

namespace dengue {

inline constexpr std::string_view kTrajectoryHeader = "t,S_h,E_h,I_h,R_h,A_m,S_m,E_m,I_m";

inline std::string trajectory_to_csv(const Trajectory& tr)
{
    std::string out(kTrajectoryHeader);
    out += '\n';
    for (std::size_t r = 0; r < tr.times.size(); ++r) {
        const State8& s = tr.states[r];
        out += format_double(tr.times[r]);
        for (std::size_t i = 0; i < 3; ++i) out += ',' + format_double(s.reduced[i]);
        out += ',' + format_double(s.R_h);
        for (std::size_t i = 3; i < kDim; ++i) out += ',' + format_double(s.reduced[i]);
        out += '\n';
    }
    return out;
}

// Reads back what trajectory_to_csv wrote. Step statistics are not stored
// and come back zero.
inline Trajectory trajectory_from_csv(std::string_view text)
{
    Trajectory tr;
    std::size_t line_no = 0, start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(start, nl - start);
        start = nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line_no == 1) {
            if (line != kTrajectoryHeader) throw ConfigError(1, "unexpected trajectory CSV header");
            continue;
        }
        if (line.empty()) continue;
        std::vector<double> fields;
        std::size_t f0 = 0;
        while (true) {
            const std::size_t comma = line.find(',', f0);
            const auto field = line.substr(f0, comma == std::string_view::npos ? std::string_view::npos : comma - f0);
            const auto v = parse_double(field);
            if (!v) throw ConfigError(line_no, "cannot read number '" + std::string(field) + "'");
            fields.push_back(*v);
            if (comma == std::string_view::npos) break;
            f0 = comma + 1;
        }
        if (fields.size() != 9) throw ConfigError(line_no, "expected 9 columns");
        State8 s;
        s.reduced[kSh] = fields[1];
        s.reduced[kEh] = fields[2];
        s.reduced[kIh] = fields[3];
        s.R_h = fields[4];
        for (std::size_t i = 3; i < kDim; ++i) s.reduced[i] = fields[i + 2];
        tr.times.push_back(fields[0]);
        tr.states.push_back(s);
    }
    if (line_no == 0) throw ConfigError(0, "empty trajectory CSV");
    return tr;
}

// Writes to "<path>.tmp" and renames over path so readers never see a
// partial file.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view contents)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace dengue
