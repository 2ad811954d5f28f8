// config.hpp — line-oriented key=value run configuration
//
// Keys: n, omega, lambda, case, target_r12, profiles, t_max, dt, windows,
// seed, r12_mode, out_dir. Lines starting with '#' and blank lines are
// ignored. Unknown or duplicate keys are parse errors; invariant violations
// are validation errors.

#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ringbath/errors.hpp"
#include "ringbath/experiment.hpp"

namespace ringbath {

struct RunConfig {
    ExperimentConfig experiment;
    std::string out_dir = "out";
};

inline std::string to_string(InitialCase c) { return c == InitialCase::A ? "A" : "B"; }
inline std::string to_string(R12Mode m) { return m == R12Mode::paper ? "paper" : "exact"; }

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline double parse_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + v + "'", line);
    }
}

inline int parse_int(const std::string& v, int line) {
    int out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw ParseError("expected an integer, got '" + v + "'", line);
    return out;
}

inline std::uint64_t parse_u64(const std::string& v, int line) {
    std::uint64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw ParseError("expected an unsigned integer, got '" + v + "'", line);
    return out;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

inline BathProfileId parse_profile_id(const std::string& s, int line) {
    if (s == "bp1") return BathProfileId::bp1;
    if (s == "bp2") return BathProfileId::bp2;
    if (s == "bp3") return BathProfileId::bp3;
    if (s == "bp4") return BathProfileId::bp4;
    if (s == "bp5") return BathProfileId::bp5;
    throw ParseError("unknown profile '" + s + "' (expected bp1..bp5)", line);
}

} // namespace detail

inline RunConfig parse_config(const std::string& text) {
    using detail::trim;
    static const std::vector<std::string> known = {
        "n",   "omega",   "lambda", "case", "target_r12", "profiles",
        "t_max", "dt", "windows", "seed", "r12_mode", "out_dir"};

    std::map<std::string, std::pair<std::string, int>> kv;   // key -> (value, line)
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", line);
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ParseError("unknown key '" + key + "'", line);
        if (kv.count(key)) throw ParseError("duplicate key '" + key + "'", line);
        if (value.empty()) throw ParseError("empty value for '" + key + "'", line);
        kv[key] = {value, line};
    }

    RunConfig cfg;
    ExperimentConfig& ex = cfg.experiment;
    bool have_case = false, have_target = false;

    if (auto it = kv.find("case"); it != kv.end()) {
        const auto& [v, ln] = it->second;
        if (v == "A") ex.initial_case = InitialCase::A;
        else if (v == "B") ex.initial_case = InitialCase::B;
        else throw ParseError("case must be A or B, got '" + v + "'", ln);
        have_case = true;
    }
    if (auto it = kv.find("target_r12"); it != kv.end()) {
        ex.target_r12 = detail::parse_double(it->second.first, it->second.second);
        have_target = true;
    }
    if (auto it = kv.find("n"); it != kv.end())
        ex.params.n = detail::parse_int(it->second.first, it->second.second);
    if (auto it = kv.find("omega"); it != kv.end())
        ex.params.omega = detail::parse_double(it->second.first, it->second.second);
    if (auto it = kv.find("lambda"); it != kv.end())
        ex.params.lambda = detail::parse_double(it->second.first, it->second.second);
    if (auto it = kv.find("t_max"); it != kv.end())
        ex.t_max = detail::parse_double(it->second.first, it->second.second);
    if (auto it = kv.find("dt"); it != kv.end())
        ex.dt = detail::parse_double(it->second.first, it->second.second);
    if (auto it = kv.find("seed"); it != kv.end())
        ex.seed = detail::parse_u64(it->second.first, it->second.second);
    if (auto it = kv.find("out_dir"); it != kv.end()) cfg.out_dir = it->second.first;
    if (auto it = kv.find("r12_mode"); it != kv.end()) {
        const auto& [v, ln] = it->second;
        if (v == "paper") ex.r12_mode = R12Mode::paper;
        else if (v == "exact") ex.r12_mode = R12Mode::exact;
        else throw ParseError("r12_mode must be paper or exact, got '" + v + "'", ln);
    }
    if (auto it = kv.find("profiles"); it != kv.end()) {
        const auto& [v, ln] = it->second;
        ex.profiles.clear();
        for (const auto& item : detail::split(v, ','))
            ex.profiles.push_back(detail::parse_profile_id(item, ln));
    }
    if (auto it = kv.find("windows"); it != kv.end()) {
        const auto& [v, ln] = it->second;
        ex.windows.clear();
        for (const auto& item : detail::split(v, ';')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos)
                throw ParseError("window must be lo:hi, got '" + item + "'", ln);
            Window w;
            w.lo = detail::parse_double(trim(item.substr(0, colon)), ln);
            w.hi = detail::parse_double(trim(item.substr(colon + 1)), ln);
            ex.windows.push_back(w);
        }
    }

    // case/target consistency comes first so a bad pairing is reported as the
    // violated invariant rather than as a missing unrelated key
    if (!have_case) throw ValidationError("config: 'case' is required");
    if (ex.initial_case == InitialCase::A) {
        if (have_target && ex.target_r12 != 0.0)
            throw ValidationError("config: case A forces target_r12 = 0");
        ex.target_r12 = 0.0;
    } else if (!have_target) {
        ex.target_r12 = 0.325;
    }
    if (ex.target_r12 < 0.0) throw ValidationError("config: target_r12 must be >= 0");

    if (!kv.count("n")) throw ValidationError("config: 'n' is required");
    if (!kv.count("lambda")) throw ValidationError("config: 'lambda' is required");
    if (!kv.count("profiles")) throw ValidationError("config: 'profiles' is required");
    validate(ex.params);

    if (!(ex.dt > 0.0)) throw ValidationError("config: dt must be > 0");
    if (!(ex.t_max >= ex.dt)) throw ValidationError("config: t_max must be >= dt");
    if (ex.windows.empty()) throw ValidationError("config: windows must be nonempty");
    for (const auto& w : ex.windows) {
        if (!(w.lo < w.hi)) throw ValidationError("config: window lo must be < hi");
        if (w.lo < 0.0 || w.hi > ex.t_max + 1e-9)
            throw ValidationError("config: windows must lie within [0, t_max]");
    }
    if (ex.profiles.empty()) throw ValidationError("config: profiles must be nonempty");
    for (std::size_t i = 0; i < ex.profiles.size(); ++i)
        for (std::size_t j = i + 1; j < ex.profiles.size(); ++j)
            if (ex.profiles[i] == ex.profiles[j])
                throw ValidationError("config: duplicate profile " + to_string(ex.profiles[i]));
    const int n1 = ex.params.n - 1;
    if (n1 < 2) throw ValidationError("config: need at least 2 bath oscillators");
    for (auto id : ex.profiles) {
        const bool needs_even = id == BathProfileId::bp3 || id == BathProfileId::bp4 ||
                                id == BathProfileId::bp5;
        if (needs_even && n1 % 2 != 0)
            throw ValidationError("config: " + to_string(id) + " needs an even bath size, n-1 = " +
                                  std::to_string(n1) + " is odd");
    }
    if (cfg.out_dir.empty()) throw ValidationError("config: out_dir must be nonempty");
    return cfg;
}

inline RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace ringbath
