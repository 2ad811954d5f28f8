// experiment.hpp — bath preparations, purity traces, dispersion widths,
// and Bezier smoothing for plot output
//
// The protocol: fix the reduced state of oscillator 0 at t = 0 (case A pure,
// case B mixed with r12 = 0.325), vary the bath diagonal of the initial
// matrix through the preparations bp1..bp5 while keeping its trace, evolve,
// and watch how much the purity trace depends on the preparation. The spread
//
//   w = max_{t in window} max_{i != j} |mu_i(t) - mu_j(t)|
//
// over a profile subset is the dispersion width. Widths are always computed
// on raw traces; the smoothed series exists only for plotting.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ringbath/errors.hpp"
#include "ringbath/gaussian.hpp"
#include "ringbath/model.hpp"
#include "ringbath/parallel.hpp"
#include "ringbath/reduction.hpp"

namespace ringbath {

enum class BathProfileId { bp1, bp2, bp3, bp4, bp5 };
enum class InitialCase { A, B };

inline std::string to_string(BathProfileId id) {
    switch (id) {
        case BathProfileId::bp1: return "bp1";
        case BathProfileId::bp2: return "bp2";
        case BathProfileId::bp3: return "bp3";
        case BathProfileId::bp4: return "bp4";
        case BathProfileId::bp5: return "bp5";
    }
    return "bp?";
}

struct BathProfile {
    BathProfileId id = BathProfileId::bp1;
    Eigen::VectorXd diag;    // bath diagonal, entry p belongs to oscillator p+1
    std::uint64_t seed = 0;  // consumed by bp5 only
};

namespace detail {

// splitmix64: fixed, platform-independent stream for the bp5 shuffle
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

inline void fisher_yates(Eigen::VectorXd& values, std::uint64_t seed) {
    SplitMix64 rng(seed);
    for (Eigen::Index i = values.size() - 1; i > 0; --i) {
        const Eigen::Index j =
            static_cast<Eigen::Index>(rng.next() % static_cast<std::uint64_t>(i + 1));
        std::swap(values[i], values[j]);
    }
}

} // namespace detail

// The five bath diagonals. All preserve sum(diag) = n1. bp3/bp4/bp5 need an
// even bath; the seed matters only for bp5 and the same seed always yields
// the same draw.
inline BathProfile bath_profile(BathProfileId id, int n1, std::uint64_t seed) {
    if (n1 < 2) throw ValidationError("bath_profile: need at least 2 bath oscillators");
    const bool needs_even =
        id == BathProfileId::bp3 || id == BathProfileId::bp4 || id == BathProfileId::bp5;
    if (needs_even && n1 % 2 != 0)
        throw OddBathSize("bath_profile: " + to_string(id) + " needs an even bath, got " +
                          std::to_string(n1));

    BathProfile p;
    p.id = id;
    p.seed = seed;
    p.diag = Eigen::VectorXd::Ones(n1);
    switch (id) {
        case BathProfileId::bp1:
            break;
        case BathProfileId::bp2:
            p.diag[0] = 1.5;   // oscillator 1
            p.diag[1] = 0.5;   // oscillator 2
            break;
        case BathProfileId::bp3:
            p.diag[n1 / 2 - 1] = 1.5;   // oscillator n1/2
            p.diag[n1 / 2] = 0.5;       // oscillator n1/2 + 1
            break;
        case BathProfileId::bp4:
            for (int k = 0; k < n1 / 2; ++k) p.diag[k] = 1.5;
            for (int k = n1 / 2; k < n1; ++k) p.diag[k] = 0.5;
            break;
        case BathProfileId::bp5:
            for (int k = 0; k < n1 / 2; ++k) p.diag[k] = 1.5;
            for (int k = n1 / 2; k < n1; ++k) p.diag[k] = 0.5;
            detail::fisher_yates(p.diag, seed);
            break;
    }
    return p;
}

// With zero bath-bath off-diagonals the t = 0 cross term is
// a = c^2 sum_k 1/(2 d_k), so the uniform coupling that pins r12 is
// c = sqrt(target / sum_k 1/(2 d_k)).
inline double solve_uniform_coupling(double target_r12, const Eigen::VectorXd& bath_diag) {
    if (target_r12 < 0.0) throw ValidationError("solve_uniform_coupling: target must be >= 0");
    if (target_r12 == 0.0) return 0.0;
    const double s = (0.5 / bath_diag.array()).sum();
    return std::sqrt(target_r12 / s);
}

struct Window {
    double lo = 0.0;
    double hi = 0.0;
};

struct ExperimentConfig {
    ModelParams params;
    InitialCase initial_case = InitialCase::A;
    double target_r12 = 0.0;   // 0 for case A, 0.325 for case B
    std::vector<BathProfileId> profiles;
    double t_max = 100.0;
    double dt = 0.02;
    std::vector<Window> windows = {{0, 20}, {20, 40}, {40, 60}, {60, 80}, {80, 100}};
    std::uint64_t seed = 1;
    R12Mode r12_mode = R12Mode::paper;
};

// Initial full-state matrix: Omega_00 = 1, bath diagonal from the profile,
// uniform coupling row, zero elsewhere. Real symmetric by construction.
inline GaussianState build_initial_omega(const ExperimentConfig& config,
                                         const BathProfile& profile) {
    const int n = config.params.n;
    if (profile.diag.size() != n - 1)
        throw DimensionMismatch("build_initial_omega: profile size does not match n");

    const double c = solve_uniform_coupling(config.target_r12, profile.diag);
    Eigen::MatrixXcd omega = Eigen::MatrixXcd::Zero(n, n);
    omega(0, 0) = 1.0;
    for (int k = 1; k < n; ++k) {
        omega(k, k) = profile.diag[k - 1];
        omega(0, k) = c;
        omega(k, 0) = c;
    }
    GaussianState state(std::move(omega));
    Eigen::LLT<Eigen::MatrixXd> llt(state.omega.real());
    if (llt.info() != Eigen::Success)
        throw NonPositiveInitial("build_initial_omega: Re Omega not positive definite");
    return state;
}

struct PurityTrace {
    BathProfileId profile_id = BathProfileId::bp1;
    std::vector<double> times;
    std::vector<double> mu;
};

inline std::vector<double> time_grid(double t_max, double dt) {
    if (!(dt > 0.0)) throw ValidationError("time_grid: dt must be > 0");
    const int n = static_cast<int>(std::floor(t_max / dt + 0.5)) + 1;
    std::vector<double> ts(n);
    for (int i = 0; i < n; ++i) ts[i] = i * dt;
    return ts;
}

// Purity along the grid. Each point is an independent evolve + reduce, so the
// loop is parallel over grid indices; results land in grid order no matter
// the thread count.
inline PurityTrace purity_trace(const ExperimentConfig& config, const BathProfile& profile) {
    validate(config.params);
    const GaussianState initial = build_initial_omega(config, profile);
    const Evolver evolver(initial, config.params);

    PurityTrace trace;
    trace.profile_id = profile.id;
    trace.times = time_grid(config.t_max, config.dt);
    trace.mu.resize(trace.times.size());
    parallel_for(trace.times.size(), [&](std::size_t i) {
        const double t = trace.times[i];
        try {
            trace.mu[i] = purity(reduce(evolver.at(t), config.r12_mode));
        } catch (const Error& e) {
            throw Error("purity_trace at t = " + std::to_string(t) + ": " + e.what());
        }
    });
    return trace;
}

struct WidthRow {
    Window window;
    std::string subset;   // w2, w3, w5, or all
    double value = 0.0;
};

struct SubsetDef {
    std::string name;
    std::vector<BathProfileId> members;
};

struct WidthTable {
    std::vector<Window> windows;
    std::vector<SubsetDef> subsets;
    std::vector<WidthRow> rows;   // ordered subset-major, then by window
};

namespace detail {

inline const std::vector<SubsetDef>& named_subsets() {
    static const std::vector<SubsetDef> defs = {
        {"w2", {BathProfileId::bp1, BathProfileId::bp2}},
        {"w3", {BathProfileId::bp1, BathProfileId::bp3, BathProfileId::bp5}},
        {"w5",
         {BathProfileId::bp1, BathProfileId::bp2, BathProfileId::bp3, BathProfileId::bp4,
          BathProfileId::bp5}},
    };
    return defs;
}

inline double window_spread(const std::vector<const PurityTrace*>& traces, const Window& win) {
    const auto& times = traces.front()->times;
    // tolerance so grid points landing on a shared boundary count for both sides
    const double eps = 1e-9;
    double w = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < win.lo - eps || times[i] > win.hi + eps) continue;
        double lo = traces.front()->mu[i], hi = lo;
        for (const auto* tr : traces) {
            lo = std::min(lo, tr->mu[i]);
            hi = std::max(hi, tr->mu[i]);
        }
        w = std::max(w, hi - lo);
    }
    return w;
}

} // namespace detail

// Width table over the named profile subsets that are fully present, plus an
// "all" subset when the run's profile set is not itself one of the named ones.
// Raw traces only.
inline WidthTable dispersion_width(const std::vector<PurityTrace>& traces,
                                   const std::vector<Window>& windows) {
    if (traces.empty()) throw ValidationError("dispersion_width: no traces");
    for (const auto& tr : traces)
        if (tr.times != traces.front().times)
            throw GridMismatch("dispersion_width: traces use different time grids");

    const auto find = [&](BathProfileId id) -> const PurityTrace* {
        for (const auto& tr : traces)
            if (tr.profile_id == id) return &tr;
        return nullptr;
    };

    WidthTable table;
    table.windows = windows;
    for (const auto& def : detail::named_subsets()) {
        std::vector<const PurityTrace*> members;
        for (auto id : def.members)
            if (const auto* tr = find(id)) members.push_back(tr);
        if (members.size() != def.members.size()) continue;
        table.subsets.push_back(def);
        for (const auto& win : windows)
            table.rows.push_back({win, def.name, detail::window_spread(members, win)});
    }

    const bool covered = std::any_of(
        table.subsets.begin(), table.subsets.end(),
        [&](const SubsetDef& def) { return def.members.size() == traces.size(); });
    if (!covered) {
        SubsetDef all{"all", {}};
        std::vector<const PurityTrace*> members;
        for (const auto& tr : traces) {
            all.members.push_back(tr.profile_id);
            members.push_back(&tr);
        }
        table.subsets.push_back(all);
        for (const auto& win : windows)
            table.rows.push_back({win, all.name, detail::window_spread(members, win)});
    }
    return table;
}

struct SmoothedTrace {
    BathProfileId profile_id = BathProfileId::bp1;
    std::vector<double> t;
    std::vector<double> mu;
};

// Plot smoothing: stride the raw series down to n_ctrl control points and
// evaluate the single Bernstein-Bezier curve through them (de Casteljau) at
// n_out uniform parameter values. Output values stay inside the control
// points' hull. Never feeds the width computation.
inline SmoothedTrace bezier_smooth(const PurityTrace& trace, int n_ctrl = 256, int n_out = 512) {
    if (trace.times.empty()) throw ValidationError("bezier_smooth: empty trace");
    const int len = static_cast<int>(trace.times.size());
    if (n_ctrl > len) throw ValidationError("bezier_smooth: n_ctrl exceeds trace length");
    if (n_ctrl < 2 || n_out < 2) throw ValidationError("bezier_smooth: need at least 2 points");

    std::vector<double> ct(n_ctrl), cm(n_ctrl);
    for (int i = 0; i < n_ctrl; ++i) {
        const int idx = static_cast<int>(
            std::llround(static_cast<double>(i) * (len - 1) / (n_ctrl - 1)));
        ct[i] = trace.times[idx];
        cm[i] = trace.mu[idx];
    }

    SmoothedTrace out;
    out.profile_id = trace.profile_id;
    out.t.resize(n_out);
    out.mu.resize(n_out);
    std::vector<double> bt(n_ctrl), bm(n_ctrl);
    for (int j = 0; j < n_out; ++j) {
        const double u = static_cast<double>(j) / (n_out - 1);
        bt = ct;
        bm = cm;
        for (int r = n_ctrl - 1; r > 0; --r) {
            for (int i = 0; i < r; ++i) {
                bt[i] += u * (bt[i + 1] - bt[i]);
                bm[i] += u * (bm[i + 1] - bm[i]);
            }
        }
        out.t[j] = bt[0];
        out.mu[j] = bm[0];
    }
    return out;
}

} // namespace ringbath
