#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "ringbath/experiment.hpp"
#include "ringbath/gaussian.hpp"
#include "ringbath/reduction.hpp"

using namespace ringbath;
using cd = std::complex<double>;

namespace {

GaussianState two_by_two(double c) {
    Eigen::MatrixXcd m(2, 2);
    m << 1.0, c, c, 1.0;
    return GaussianState(m);
}

} // namespace

TEST_CASE("reduce closed forms", "[reduction]")
{
    SECTION("2x2 real")
    {
        for (auto mode : {R12Mode::paper, R12Mode::exact}) {
            const auto r = reduce(two_by_two(0.6), mode);
            CHECK(r.r11.real() == Catch::Approx(1.0 - 0.18).margin(1e-14));
            CHECK(r.r11.imag() == Catch::Approx(0.0).margin(1e-15));
            CHECK(r.r12 == Catch::Approx(0.18).margin(1e-14));
        }
    }
    SECTION("decoupled row gives a pure marginal")
    {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
        m(0, 0) = 1.7;
        const auto r = reduce(GaussianState(m), R12Mode::paper);
        CHECK(r.r11 == cd(1.7, 0.0));
        CHECK(r.r12 == 0.0);
        CHECK(purity(r) == 1.0);
    }
    SECTION("paper and exact agree bit-for-bit on real matrices")
    {
        std::mt19937_64 rng(31);
        std::normal_distribution<double> nd;
        for (int rep = 0; rep < 20; ++rep) {
            Eigen::MatrixXd g(6, 6);
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) g(i, j) = nd(rng);
            const Eigen::MatrixXd a =
                0.5 * (g + g.transpose()) + 6.0 * Eigen::MatrixXd::Identity(6, 6);
            const GaussianState s(a.cast<cd>());
            const auto rp = reduce(s, R12Mode::paper);
            const auto re = reduce(s, R12Mode::exact);
            REQUIRE(rp.r12 == re.r12);
            REQUIRE(rp.r11 == re.r11);
        }
    }
    SECTION("bath must be positive definite")
    {
        Eigen::MatrixXcd m(3, 3);
        m << 1.0, 0.1, 0.1,
             0.1, 1.0, 2.0,
             0.1, 2.0, 1.0;
        CHECK_THROWS_AS(reduce(GaussianState(m), R12Mode::paper), NonPositiveBath);
    }
    SECTION("needs a bath")
    {
        CHECK_THROWS_AS(reduce(GaussianState(Eigen::MatrixXcd::Identity(1, 1)), R12Mode::paper),
                        DimensionMismatch);
    }
}

TEST_CASE("purity formula", "[reduction]")
{
    SECTION("pure and near-pure")
    {
        CHECK(purity({cd(1.0, 0.0), 0.0, R12Mode::paper}) == 1.0);
        // round-off slightly past Re r11 clamps to zero
        CHECK(purity({cd(1.0, 0.0), 1.0 + 1e-10, R12Mode::paper}) == 0.0);
        CHECK_THROWS_AS(purity({cd(1.0, 0.0), 1.0 + 1e-8, R12Mode::paper}), NonPositiveReduced);
        CHECK_THROWS_AS(purity({cd(-0.2, 0.0), 0.1, R12Mode::paper}), NonPositiveReduced);
    }
    SECTION("reference mixed value")
    {
        const double mu = purity({cd(0.675, 0.0), 0.325, R12Mode::paper});
        CHECK(mu == Catch::Approx(0.5916079783099616).margin(1e-15));
        CHECK(mu == Catch::Approx(0.592).margin(1e-3));
    }
    SECTION("2x2 family: mu = sqrt(1 - c^2)")
    {
        for (double c : {0.0, 0.3, 0.6, 0.9}) {
            const double mu = purity(reduce(two_by_two(c), R12Mode::exact));
            CHECK(mu == Catch::Approx(std::sqrt(1.0 - c * c)).margin(1e-12));
        }
    }
    SECTION("purity is 1 exactly when r12 vanishes")
    {
        CHECK(purity({cd(0.8, 0.1), 0.0, R12Mode::exact}) == 1.0);
        CHECK(purity({cd(0.8, 0.1), 1e-6, R12Mode::exact}) < 1.0);
    }
}

TEST_CASE("covariance purity oracle", "[reduction]")
{
    SECTION("vacuum")
    {
        CHECK(covariance_purity(GaussianState(Eigen::MatrixXcd::Identity(1, 1))) ==
              Catch::Approx(1.0).margin(1e-14));
    }
    SECTION("matches the 2x2 closed form")
    {
        CHECK(covariance_purity(two_by_two(0.6)) == Catch::Approx(0.8).margin(1e-12));
    }
    SECTION("matches reduce+purity in exact mode along an evolved run")
    {
        const ModelParams p{7, 1.0, 0.3};
        ExperimentConfig cfg;
        cfg.params = p;
        cfg.initial_case = InitialCase::B;
        cfg.target_r12 = 0.325;
        const auto profile = bath_profile(BathProfileId::bp2, p.n - 1, 1);
        const Evolver ev(build_initial_omega(cfg, profile), p);
        for (double t : {0.0, 0.4, 1.7, 6.3, 29.0, 88.8}) {
            const auto s = ev.at(t);
            const double mu_exact = purity(reduce(s, R12Mode::exact));
            REQUIRE(std::abs(mu_exact - covariance_purity(s)) < 1e-8);
        }
    }
    SECTION("exact-mode r12 dominates |a|")
    {
        const ModelParams p{6, 1.0, 0.8};
        ExperimentConfig cfg;
        cfg.params = p;
        cfg.initial_case = InitialCase::B;
        cfg.target_r12 = 0.3;
        const auto profile = bath_profile(BathProfileId::bp4, p.n - 1, 1);
        const Evolver ev(build_initial_omega(cfg, profile), p);
        for (double t : {0.0, 0.9, 3.1, 12.0}) {
            const auto s = ev.at(t);
            const auto rp = reduce(s, R12Mode::paper);   // r12 = |a|
            const auto re = reduce(s, R12Mode::exact);
            REQUIRE(re.r12 >= rp.r12 - 1e-12);
        }
    }
}
