// runner.hpp — run orchestration: traces, widths, artifact files, reruns
//
// A run writes raw_trace.csv, smooth_trace.csv, widths.json, and
// manifest.json into out_dir. The manifest alone reproduces the run
// bit-identically: it echoes the config and the realized bath diagonals
// (including the bp5 draw), so a rerun never depends on the shuffle again.

#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "ringbath/config.hpp"
#include "ringbath/errors.hpp"
#include "ringbath/experiment.hpp"
#include "ringbath/io.hpp"
#include "ringbath/version.hpp"

namespace ringbath {

struct RunResult {
    RunManifest manifest;
    std::vector<PurityTrace> traces;
    WidthTable widths;
};

namespace detail {

inline RunResult compute_run(const RunConfig& cfg, const std::vector<BathProfile>& profiles) {
    RunResult res;
    res.manifest.config = cfg;
    res.manifest.profiles = profiles;
    res.manifest.version = kVersion;
    for (const auto& p : profiles)
        res.traces.push_back(purity_trace(cfg.experiment, p));
    res.widths = dispersion_width(res.traces, cfg.experiment.windows);
    return res;
}

inline RunManifest write_artifacts(RunResult& res) {
    namespace fs = std::filesystem;
    const fs::path dir = res.manifest.config.out_dir;
    fs::create_directories(dir);

    std::vector<SmoothedTrace> smoothed;
    const int len = static_cast<int>(res.traces.front().times.size());
    const int n_ctrl = std::min(256, len);
    for (const auto& tr : res.traces) smoothed.push_back(bezier_smooth(tr, n_ctrl));

    res.manifest.artifacts = {"raw_trace.csv", "smooth_trace.csv", "widths.json",
                              "manifest.json"};
    std::vector<fs::path> written;
    try {
        write_file_atomic(dir / "raw_trace.csv", trace_csv(res.traces));
        written.push_back(dir / "raw_trace.csv");
        write_file_atomic(dir / "smooth_trace.csv", smooth_csv(smoothed));
        written.push_back(dir / "smooth_trace.csv");
        write_file_atomic(dir / "widths.json", widths_json(res.widths));
        written.push_back(dir / "widths.json");
        write_file_atomic(dir / "manifest.json", manifest_json(res.manifest));
    } catch (...) {
        std::error_code ec;
        for (const auto& p : written) fs::remove(p, ec);
        throw;
    }
    return res.manifest;
}

} // namespace detail

// Full run from a parsed config: realize profiles, trace, widths, artifacts.
inline RunResult run(const RunConfig& cfg) {
    std::vector<BathProfile> profiles;
    for (auto id : cfg.experiment.profiles)
        profiles.push_back(bath_profile(id, cfg.experiment.params.n - 1, cfg.experiment.seed));
    RunResult res = detail::compute_run(cfg, profiles);
    detail::write_artifacts(res);
    return res;
}

inline RunManifest load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open manifest: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("manifest parse failed: " + std::string(e.what()));
    }

    RunManifest m;
    try {
        m.version = j.at("version").get<std::string>();
        const auto& jc = j.at("config");
        ExperimentConfig& ex = m.config.experiment;
        ex.params.n = jc.at("n").get<int>();
        ex.params.omega = jc.at("omega").get<double>();
        ex.params.lambda = jc.at("lambda").get<double>();
        const std::string cs = jc.at("case").get<std::string>();
        if (cs != "A" && cs != "B") throw Error("manifest: bad case " + cs);
        ex.initial_case = cs == "A" ? InitialCase::A : InitialCase::B;
        ex.target_r12 = jc.at("target_r12").get<double>();
        ex.profiles.clear();
        for (const auto& p : jc.at("profiles"))
            ex.profiles.push_back(detail::parse_profile_id(p.get<std::string>(), 0));
        ex.t_max = jc.at("t_max").get<double>();
        ex.dt = jc.at("dt").get<double>();
        ex.windows.clear();
        for (const auto& w : jc.at("windows"))
            ex.windows.push_back({w.at(0).get<double>(), w.at(1).get<double>()});
        ex.seed = jc.at("seed").get<std::uint64_t>();
        const std::string rm = jc.at("r12_mode").get<std::string>();
        if (rm != "paper" && rm != "exact") throw Error("manifest: bad r12_mode " + rm);
        ex.r12_mode = rm == "paper" ? R12Mode::paper : R12Mode::exact;
        m.config.out_dir = jc.at("out_dir").get<std::string>();

        for (const auto& jp : j.at("profile_realizations")) {
            BathProfile p;
            p.id = detail::parse_profile_id(jp.at("id").get<std::string>(), 0);
            p.seed = ex.seed;
            const auto& diag = jp.at("diag");
            p.diag.resize(static_cast<Eigen::Index>(diag.size()));
            for (std::size_t k = 0; k < diag.size(); ++k)
                p.diag[static_cast<Eigen::Index>(k)] = diag[k].get<double>();
            m.profiles.push_back(std::move(p));
        }
        for (const auto& a : j.at("artifacts"))
            m.artifacts.push_back(a.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw Error("manifest is missing fields: " + std::string(e.what()));
    }
    return m;
}

// Re-run from a manifest using the recorded profile realizations. Byte
// identical artifacts for the same tool version.
inline RunResult rerun(const std::string& manifest_path, const std::string& out_dir_override = "") {
    RunManifest m = load_manifest(manifest_path);
    if (!out_dir_override.empty()) m.config.out_dir = out_dir_override;
    if (m.profiles.size() != m.config.experiment.profiles.size())
        throw ValidationError("rerun: manifest profile realizations do not match config");
    for (std::size_t i = 0; i < m.profiles.size(); ++i) {
        if (m.profiles[i].id != m.config.experiment.profiles[i])
            throw ValidationError("rerun: manifest profile order mismatch");
        if (m.profiles[i].diag.size() != m.config.experiment.params.n - 1)
            throw ValidationError("rerun: manifest profile dimension mismatch");
    }
    RunResult res = detail::compute_run(m.config, m.profiles);
    detail::write_artifacts(res);
    return res;
}

// Recompute a width table from a raw trace CSV.
inline WidthTable widths_from_csv(const std::string& csv_path, const std::vector<Window>& windows) {
    return dispersion_width(read_trace_csv(csv_path), windows);
}

} // namespace ringbath
