#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "ringbath/gaussian.hpp"
#include "ringbath/oracle.hpp"

using namespace ringbath;
using cd = std::complex<double>;

namespace {

Eigen::MatrixXd random_real_sym_posdef(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = nd(rng);
    Eigen::MatrixXd a = 0.5 * (g + g.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    std::uniform_real_distribution<double> ud(0.4, 2.2);
    Eigen::VectorXd evals(n);
    for (int i = 0; i < n; ++i) evals[i] = ud(rng);
    return es.eigenvectors() * evals.asDiagonal() * es.eigenvectors().transpose();
}

GaussianState random_state(int n, std::mt19937_64& rng, double imag_scale = 0.4) {
    std::uniform_real_distribution<double> ud(-imag_scale, imag_scale);
    Eigen::MatrixXd b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) b(i, j) = b(j, i) = ud(rng);
    Eigen::MatrixXcd omega = random_real_sym_posdef(n, rng).cast<cd>();
    omega += cd(0.0, 1.0) * b.cast<cd>();
    return GaussianState(omega);
}

} // namespace

TEST_CASE("state diagnostics", "[gaussian]")
{
    SECTION("identity is symmetric and positive")
    {
        const auto d = validate_state(GaussianState(Eigen::MatrixXcd::Identity(3, 3)));
        CHECK(d.symmetric);
        CHECK(d.posdef);
        CHECK(d.max_asymmetry == 0.0);
    }
    SECTION("indefinite real part is reported")
    {
        Eigen::MatrixXcd m(2, 2);
        m << 1.0, 2.0, 2.0, 1.0;   // eigenvalues -1 and 3
        const auto d = validate_state(GaussianState(m));
        CHECK(d.symmetric);
        CHECK_FALSE(d.posdef);
        CHECK(d.min_real_eigenvalue == Catch::Approx(-1.0).margin(1e-12));
    }
    SECTION("asymmetry is reported")
    {
        Eigen::MatrixXcd m(2, 2);
        m << 1.0, 0.3, 0.1, 1.0;
        const auto d = validate_state(GaussianState(m));
        CHECK_FALSE(d.symmetric);
        CHECK(d.max_asymmetry == Catch::Approx(0.2).margin(1e-15));
    }
    SECTION("non-square matrix is rejected")
    {
        CHECK_THROWS_AS(GaussianState(Eigen::MatrixXcd::Zero(2, 3)), DimensionMismatch);
    }
}

TEST_CASE("mode basis change", "[gaussian]")
{
    const ModelParams p{5, 1.0, 0.8};
    const auto basis = dft_matrix(p.n);

    SECTION("identity commutes")
    {
        const GaussianState s(cd(2.5, 0.0) * Eigen::MatrixXcd::Identity(5, 5));
        const auto mode = to_mode_basis(s, basis);
        CHECK((mode - s.omega).cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("ground-state matrix diagonalizes to the spectrum")
    {
        const GaussianState s(ground_state_matrix(p).cast<cd>());
        const auto mode = to_mode_basis(s, basis);
        const auto freqs = normal_mode_frequencies(p).freqs;
        for (int j = 0; j < p.n; ++j)
            for (int k = 0; k < p.n; ++k) {
                const cd want = j == k ? cd(freqs[j], 0.0) : cd(0.0, 0.0);
                CHECK(std::abs(mode(j, k) - want) < 1e-10);
            }
    }
    SECTION("round trip and hermiticity for real symmetric input")
    {
        std::mt19937_64 rng(77);
        const GaussianState s(random_real_sym_posdef(5, rng).cast<cd>());
        const auto mode = to_mode_basis(s, basis);
        // real symmetric position form maps to a Hermitian mode form
        CHECK((mode - mode.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
        const auto back = from_mode_basis(mode, basis);
        CHECK((back.omega - s.omega).cwiseAbs().maxCoeff() < 1e-10);
    }
    SECTION("dimension mismatch")
    {
        CHECK_THROWS_AS(to_mode_basis(GaussianState(Eigen::MatrixXcd::Identity(4, 4)), basis),
                        DimensionMismatch);
    }
}

TEST_CASE("evolution basics", "[gaussian]")
{
    SECTION("single mode: stationary, quarter period, identity at t=0")
    {
        Eigen::MatrixXcd w0(1, 1);
        Eigen::VectorXd freq(1);
        freq[0] = 1.0;

        w0(0, 0) = 1.0;   // the mode ground state
        for (double t : {0.0, 0.3, 2.0, 40.0})
            CHECK(std::abs(evolve_mode_omega(w0, freq, t)(0, 0) - cd(1.0, 0.0)) < 1e-12);

        w0(0, 0) = 2.0;
        CHECK(std::abs(evolve_mode_omega(w0, freq, M_PI / 2.0)(0, 0) - cd(0.5, 0.0)) < 1e-12);
        CHECK(std::abs(evolve_mode_omega(w0, freq, 0.0)(0, 0) - cd(2.0, 0.0)) < 1e-14);
    }
    SECTION("t=0 returns the input state")
    {
        std::mt19937_64 rng(5);
        const ModelParams p{7, 1.0, 0.4};
        for (int rep = 0; rep < 5; ++rep) {
            const auto s = random_state(7, rng);
            const auto back = evolve(s, p, 0.0);
            CHECK((back.omega - s.omega).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
    SECTION("ground state is a fixed point")
    {
        for (int n : {3, 11}) {
            const ModelParams p{n, 1.0, 0.6};
            const GaussianState gs(ground_state_matrix(p).cast<cd>());
            const Evolver ev(gs, p);
            for (double t : {0.1, 1.0, 10.0, 100.0}) {
                const auto at = ev.at(t);
                CHECK((at.omega - gs.omega).cwiseAbs().maxCoeff() < 1e-8);
            }
        }
    }
    SECTION("negative time is rejected")
    {
        const ModelParams p{3, 1.0, 0.1};
        CHECK_THROWS_AS(evolve(GaussianState(Eigen::MatrixXcd::Identity(3, 3)), p, -1.0),
                        ValidationError);
    }
    SECTION("invalid pure-phase state trips the singularity guard")
    {
        // purely imaginary quadratic form (not normalizable); at t = pi/4 and
        // flat spectrum the evolution system is exactly singular
        const ModelParams p{2, 1.0, 0.0};
        const GaussianState bad(cd(0.0, 1.0) * Eigen::MatrixXcd::Identity(2, 2));
        CHECK_THROWS_AS(evolve(bad, p, M_PI / 4.0), SingularEvolution);
    }
}

TEST_CASE("evolution properties", "[gaussian]")
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ut(0.05, 30.0);

    SECTION("stable form matches the literal kernel form away from singularities")
    {
        const ModelParams p{6, 1.0, 0.9};
        const auto freqs = normal_mode_frequencies(p).freqs;
        const auto basis = dft_matrix(p.n);
        int checked = 0;
        while (checked < 50) {
            const double t = ut(rng);
            bool near_singular = false;
            for (int k = 0; k < p.n; ++k)
                if (std::abs(std::sin(freqs[k] * t)) <= 0.1) near_singular = true;
            if (near_singular) continue;

            const auto s = random_state(p.n, rng);
            const auto mode0 = to_mode_basis(s, basis);
            const auto stable = evolve_mode_omega(mode0, freqs, t);
            const auto literal = mode_evolution_literal(mode0, propagator_diagonals(p, t));
            REQUIRE((stable - literal).cwiseAbs().maxCoeff() < 1e-8);
            ++checked;
        }
    }
    SECTION("evolution preserves symmetry and normalizability")
    {
        const ModelParams p{8, 1.0, 0.5};
        std::mt19937_64 rng2(99);
        for (int rep = 0; rep < 10; ++rep) {
            const auto s = random_state(8, rng2);
            const auto at = evolve(s, p, ut(rng2));
            CHECK((at.omega - at.omega.transpose()).cwiseAbs().maxCoeff() < 1e-9);
            const auto d = validate_state(at);
            CHECK(d.posdef);
        }
    }
    SECTION("single-mode composition: two steps equal one")
    {
        Eigen::VectorXd freq(1);
        std::uniform_real_distribution<double> uf(0.5, 2.5), ur(0.5, 2.0), ui(-1.0, 1.0);
        for (int rep = 0; rep < 40; ++rep) {
            freq[0] = uf(rng);
            Eigen::MatrixXcd w0(1, 1);
            w0(0, 0) = cd(ur(rng), ui(rng));
            const double t1 = ut(rng), t2 = ut(rng);
            const auto step1 = evolve_mode_omega(w0, freq, t1);
            const auto two = evolve_mode_omega(step1, freq, t2);
            const auto one = evolve_mode_omega(w0, freq, t1 + t2);
            REQUIRE(std::abs(two(0, 0) - one(0, 0)) < 1e-8);
        }
    }
}
