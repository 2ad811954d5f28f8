// io.hpp — artifact serialization: CSV traces, width and manifest JSON
//
// Every float is written with 17 significant digits so a reader recovers the
// exact double. Files are written to a temp name and renamed into place.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ringbath/config.hpp"
#include "ringbath/errors.hpp"
#include "ringbath/experiment.hpp"

namespace ringbath {

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw Error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline std::string trace_csv(const std::vector<PurityTrace>& traces) {
    std::string out = "t";
    for (const auto& tr : traces) out += ",mu_" + to_string(tr.profile_id);
    out += "\n";
    const std::size_t rows = traces.front().times.size();
    for (std::size_t i = 0; i < rows; ++i) {
        out += format_g17(traces.front().times[i]);
        for (const auto& tr : traces) {
            out += ',';
            out += format_g17(tr.mu[i]);
        }
        out += '\n';
    }
    return out;
}

inline std::string smooth_csv(const std::vector<SmoothedTrace>& traces) {
    std::string out = "t";
    for (const auto& tr : traces) out += ",mu_" + to_string(tr.profile_id);
    out += "\n";
    const std::size_t rows = traces.front().t.size();
    for (std::size_t i = 0; i < rows; ++i) {
        out += format_g17(traces.front().t[i]);
        for (const auto& tr : traces) {
            out += ',';
            out += format_g17(tr.mu[i]);
        }
        out += '\n';
    }
    return out;
}

// Emitted by hand so number formatting and key order stay fixed; parsing on
// the way back in goes through nlohmann.
inline std::string widths_json(const WidthTable& table) {
    std::string out = "{\n  \"windows\": [";
    for (std::size_t i = 0; i < table.windows.size(); ++i) {
        if (i) out += ", ";
        out += "[" + format_g17(table.windows[i].lo) + ", " + format_g17(table.windows[i].hi) + "]";
    }
    out += "],\n  \"subsets\": {";
    for (std::size_t i = 0; i < table.subsets.size(); ++i) {
        if (i) out += ", ";
        out += "\"" + table.subsets[i].name + "\": [";
        for (std::size_t j = 0; j < table.subsets[i].members.size(); ++j) {
            if (j) out += ", ";
            out += "\"" + to_string(table.subsets[i].members[j]) + "\"";
        }
        out += "]";
    }
    out += "},\n  \"widths\": [\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        out += "    {\"window\": [" + format_g17(r.window.lo) + ", " + format_g17(r.window.hi) +
               "], \"subset\": \"" + r.subset + "\", \"value\": " + format_g17(r.value) + "}";
        out += (i + 1 < table.rows.size()) ? ",\n" : "\n";
    }
    out += "  ]\n}\n";
    return out;
}

struct RunManifest {
    RunConfig config;
    std::vector<BathProfile> profiles;     // realized diagonals, bp5 draw included
    std::vector<std::string> artifacts;
    std::string version;
};

inline std::string manifest_json(const RunManifest& m) {
    const ExperimentConfig& ex = m.config.experiment;
    std::string out = "{\n";
    out += "  \"tool\": \"ringbath\",\n";
    out += "  \"version\": \"" + m.version + "\",\n";
    out += "  \"config\": {\n";
    out += "    \"n\": " + std::to_string(ex.params.n) + ",\n";
    out += "    \"omega\": " + format_g17(ex.params.omega) + ",\n";
    out += "    \"lambda\": " + format_g17(ex.params.lambda) + ",\n";
    out += "    \"case\": \"" + to_string(ex.initial_case) + "\",\n";
    out += "    \"target_r12\": " + format_g17(ex.target_r12) + ",\n";
    out += "    \"profiles\": [";
    for (std::size_t i = 0; i < ex.profiles.size(); ++i) {
        if (i) out += ", ";
        out += "\"" + to_string(ex.profiles[i]) + "\"";
    }
    out += "],\n";
    out += "    \"t_max\": " + format_g17(ex.t_max) + ",\n";
    out += "    \"dt\": " + format_g17(ex.dt) + ",\n";
    out += "    \"windows\": [";
    for (std::size_t i = 0; i < ex.windows.size(); ++i) {
        if (i) out += ", ";
        out += "[" + format_g17(ex.windows[i].lo) + ", " + format_g17(ex.windows[i].hi) + "]";
    }
    out += "],\n";
    out += "    \"seed\": " + std::to_string(ex.seed) + ",\n";
    out += "    \"r12_mode\": \"" + to_string(ex.r12_mode) + "\",\n";
    out += "    \"out_dir\": \"" + m.config.out_dir + "\"\n";
    out += "  },\n";
    out += "  \"grid\": {\"points\": " +
           std::to_string(time_grid(ex.t_max, ex.dt).size()) + "},\n";
    out += "  \"profile_realizations\": [\n";
    for (std::size_t i = 0; i < m.profiles.size(); ++i) {
        const auto& p = m.profiles[i];
        out += "    {\"id\": \"" + to_string(p.id) + "\", \"diag\": [";
        for (Eigen::Index j = 0; j < p.diag.size(); ++j) {
            if (j) out += ", ";
            out += format_g17(p.diag[j]);
        }
        out += "]}";
        out += (i + 1 < m.profiles.size()) ? ",\n" : "\n";
    }
    out += "  ],\n";
    out += "  \"artifacts\": [";
    for (std::size_t i = 0; i < m.artifacts.size(); ++i) {
        if (i) out += ", ";
        out += "\"" + m.artifacts[i] + "\"";
    }
    out += "]\n}\n";
    return out;
}

// CSV trace reader for the widths subcommand and round-trip checks.
inline std::vector<PurityTrace> read_trace_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open csv: " + path);
    std::string header;
    if (!std::getline(in, header)) throw Error("empty csv: " + path);

    std::vector<PurityTrace> traces;
    {
        std::stringstream ss(header);
        std::string col;
        bool first = true;
        while (std::getline(ss, col, ',')) {
            if (first) {
                if (col != "t") throw Error("csv: first column must be t");
                first = false;
                continue;
            }
            if (col.rfind("mu_", 0) != 0) throw Error("csv: expected mu_<profile> column, got " + col);
            PurityTrace tr;
            tr.profile_id = detail::parse_profile_id(col.substr(3), 1);
            traces.push_back(std::move(tr));
        }
    }
    if (traces.empty()) throw Error("csv: no trace columns");

    std::string row;
    int line = 1;
    while (std::getline(in, row)) {
        ++line;
        if (row.empty()) continue;
        std::stringstream ss(row);
        std::string cell;
        if (!std::getline(ss, cell, ',')) throw Error("csv: bad row at line " + std::to_string(line));
        const double t = detail::parse_double(cell, line);
        for (auto& tr : traces) {
            if (!std::getline(ss, cell, ','))
                throw Error("csv: missing column at line " + std::to_string(line));
            tr.times.push_back(t);
            tr.mu.push_back(detail::parse_double(cell, line));
        }
    }
    return traces;
}

} // namespace ringbath
