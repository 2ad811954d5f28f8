// ringbath_cli.cpp — command line front end
//
//   ringbath run <config> [--out-dir DIR]
//   ringbath rerun <manifest.json> [--out-dir DIR]
//   ringbath widths <raw_trace.csv> --windows "0:20;20:40"
//
// plus a hidden oracle-check subcommand used by CI. Thread count comes from
// RINGBATH_THREADS; everything else lives in the config file.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "ringbath/config.hpp"
#include "ringbath/oracle.hpp"
#include "ringbath/runner.hpp"
#include "ringbath/version.hpp"

namespace {

std::vector<ringbath::Window> parse_windows_arg(const std::string& arg) {
    std::vector<ringbath::Window> windows;
    for (const auto& item : ringbath::detail::split(arg, ';')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ringbath::ValidationError("window must be lo:hi, got '" + item + "'");
        ringbath::Window w;
        w.lo = std::stod(item.substr(0, colon));
        w.hi = std::stod(item.substr(colon + 1));
        if (!(w.lo < w.hi)) throw ringbath::ValidationError("window lo must be < hi");
        windows.push_back(w);
    }
    if (windows.empty()) throw ringbath::ValidationError("no windows given");
    return windows;
}

void print_width_summary(const ringbath::WidthTable& table) {
    for (const auto& row : table.rows)
        std::cout << "w[" << row.window.lo << "," << row.window.hi << "] " << row.subset << " = "
                  << ringbath::format_g17(row.value) << "\n";
}

// Small fixed sweep over the validation chain: scalar map vs matrix evolution
// at n = 1-like setups is covered by the unit tests; here we spot-check the
// quadrature against the closed-form and covariance routes on states the CI
// can afford.
int oracle_check() {
    using namespace ringbath;
    int failures = 0;
    const auto check = [&](const std::string& name, double got, double want, double tol) {
        const bool ok = std::abs(got - want) <= tol;
        std::cout << (ok ? "PASS " : "FAIL ") << name << ": got " << got << ", want " << want
                  << " +- " << tol << "\n";
        if (!ok) ++failures;
    };

    Eigen::MatrixXcd m2(2, 2);
    m2 << 1.0, 0.6, 0.6, 1.0;
    const GaussianState s2(m2);
    const QuadratureGrid grid{8.0, 128};
    check("quadrature 2x2 closed form", quadrature_reduce(s2, grid), 0.8, 1e-4);
    check("covariance 2x2 closed form", covariance_purity(s2), 0.8, 1e-12);
    check("reduce 2x2 closed form", purity(reduce(s2, R12Mode::exact)), 0.8, 1e-12);

    ModelParams params{3, 1.0, 0.1};
    ExperimentConfig cfg;
    cfg.params = params;
    cfg.initial_case = InitialCase::B;
    cfg.target_r12 = 0.325;
    const BathProfile bp1 = bath_profile(BathProfileId::bp1, 2, 1);
    const GaussianState evolved = evolve(build_initial_omega(cfg, bp1), params, 1.0);
    const double q = quadrature_reduce(evolved, grid);
    check("evolved n=3 exact vs quadrature", purity(reduce(evolved, R12Mode::exact)), q, 1e-4);
    check("evolved n=3 covariance vs quadrature", covariance_purity(evolved), q, 1e-4);
    const double mu_paper = purity(reduce(evolved, R12Mode::paper));
    std::cout << "info evolved n=3 paper-mode purity: " << mu_paper
              << " (discrepancy vs exact: " << std::abs(mu_paper - q) << ")\n";
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"purity dispersion of one oscillator in a ring under varied bath preparations"};
    app.set_version_flag("--version", std::string("ringbath ") + ringbath::kVersion);
    app.require_subcommand(1);

    std::string config_path, manifest_path, csv_path, out_dir, windows_arg;

    auto* cmd_run = app.add_subcommand("run", "run an experiment from a config file");
    cmd_run->add_option("config", config_path, "key=value config file")->required();
    cmd_run->add_option("--out-dir", out_dir, "override the config's out_dir");

    auto* cmd_rerun = app.add_subcommand("rerun", "reproduce a run from its manifest");
    cmd_rerun->add_option("manifest", manifest_path, "manifest.json of a previous run")->required();
    cmd_rerun->add_option("--out-dir", out_dir, "write artifacts elsewhere");

    auto* cmd_widths = app.add_subcommand("widths", "recompute widths from a raw trace CSV");
    cmd_widths->add_option("csv", csv_path, "raw_trace.csv from a run")->required();
    cmd_widths->add_option("--windows", windows_arg, "semicolon-separated lo:hi windows")
        ->required();

    auto* cmd_oracle = app.add_subcommand("oracle-check", "validation-chain spot checks");
    cmd_oracle->group("");   // hidden

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            ringbath::RunConfig cfg = ringbath::parse_config_file(config_path);
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            const auto res = ringbath::run(cfg);
            std::cout << "wrote " << res.manifest.artifacts.size() << " artifacts to "
                      << res.manifest.config.out_dir << "\n";
            print_width_summary(res.widths);
        } else if (cmd_rerun->parsed()) {
            const auto res = ringbath::rerun(manifest_path, out_dir);
            std::cout << "wrote " << res.manifest.artifacts.size() << " artifacts to "
                      << res.manifest.config.out_dir << "\n";
        } else if (cmd_widths->parsed()) {
            const auto table =
                ringbath::widths_from_csv(csv_path, parse_windows_arg(windows_arg));
            std::cout << ringbath::widths_json(table);
        } else if (cmd_oracle->parsed()) {
            return oracle_check();
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
