// oracle.hpp — brute-force and closed-form checks for the fast paths
//
// These exist so the test suite can validate evolution and reduction against
// routes that share no code with them: direct numerical marginalization on a
// grid (n = 2 or 3), the scalar Moebius map for a single mode, and the literal
// kernel-diagonal evolution form that is only finite away from propagator
// singularities.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "ringbath/errors.hpp"
#include "ringbath/gaussian.hpp"
#include "ringbath/model.hpp"

namespace ringbath {

struct QuadratureGrid {
    double half_width = 8.0;     // integrate on [-L, L] per axis
    int points_per_axis = 256;   // >= 64
};

namespace detail {

// rho0 accumulated as Psi Psi^dag over bath grid chunks; purity from
// mu = Tr rho0^2 / (Tr rho0)^2, so normalization constants cancel. Every Psi
// entry is exp(-1/2 x^T W x) with Re W positive definite, hence has magnitude
// at most one and cannot overflow. Along the x0 axis consecutive entries
// differ by a factor independent of the bath point, which avoids one complex
// exp per matrix entry.
inline double quadrature_purity_at(const GaussianState& state, double half_width, int m) {
    using cd = std::complex<double>;
    const int n = state.n();
    const int nb = n - 1;
    const double len = 2.0 * half_width;
    const double h = len / (m - 1);

    const cd w00 = state.omega(0, 0);
    const Eigen::VectorXcd v = state.omega.row(0).tail(nb);
    const Eigen::MatrixXcd mblock = state.omega.bottomRightCorner(nb, nb);

    const std::size_t bath_points = (nb == 1) ? static_cast<std::size_t>(m)
                                              : static_cast<std::size_t>(m) * m;
    const std::size_t chunk = 8192;

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(m, m);
    Eigen::MatrixXcd psi(m, chunk);
    Eigen::VectorXcd seed(chunk), ratio(chunk);

    // per-row update factor: psi(i+1,:) = psi(i,:) * ratio_col * step(i)
    Eigen::VectorXcd step(m - 1);
    for (int i = 0; i + 1 < m; ++i) {
        const double x = -half_width + i * h;
        step[i] = std::exp(-0.5 * w00 * h * (2.0 * x + h));
    }

    for (std::size_t c0 = 0; c0 < bath_points; c0 += chunk) {
        const std::size_t cols = std::min(chunk, bath_points - c0);
        for (std::size_t j = 0; j < cols; ++j) {
            const std::size_t idx = c0 + j;
            double xb[2] = {0.0, 0.0};
            if (nb == 1) {
                xb[0] = -half_width + static_cast<double>(idx) * h;
            } else {
                xb[0] = -half_width + static_cast<double>(idx / m) * h;
                xb[1] = -half_width + static_cast<double>(idx % m) * h;
            }
            cd quad = mblock(0, 0) * xb[0] * xb[0];
            cd lin = v[0] * xb[0];
            if (nb == 2) {
                quad += 2.0 * mblock(0, 1) * xb[0] * xb[1] + mblock(1, 1) * xb[1] * xb[1];
                lin += v[1] * xb[1];
            }
            const double x0 = -half_width;
            seed[j] = std::exp(-0.5 * quad - lin * x0 - 0.5 * w00 * x0 * x0);
            ratio[j] = std::exp(-h * lin);
        }
        psi.row(0).head(cols) = seed.head(cols).transpose();
        for (int i = 1; i < m; ++i)
            psi.row(i).head(cols) = psi.row(i - 1).head(cols).cwiseProduct(ratio.head(cols).transpose()) * step[i - 1];
        rho.selfadjointView<Eigen::Lower>().rankUpdate(psi.leftCols(cols));
    }

    double tr = 0.0, tr2 = 0.0;
    for (int i = 0; i < m; ++i) {
        tr += rho(i, i).real();
        tr2 += rho(i, i).real() * rho(i, i).real();
        for (int j = 0; j < i; ++j) tr2 += 2.0 * std::norm(rho(i, j));
    }
    return tr2 / (tr * tr);
}

} // namespace detail

// Purity of the oscillator-0 marginal by direct numerical integration of
// psi psi* over the bath coordinates, then Tr rho0^2 on the grid. Doubling
// the per-axis point count must leave the result unchanged to 1e-4.
inline double quadrature_reduce(const GaussianState& state, const QuadratureGrid& grid) {
    const int n = state.n();
    if (n != 2 && n != 3)
        throw ValidationError("quadrature_reduce: only n = 2 or 3 supported");
    if (grid.points_per_axis < 64)
        throw ValidationError("quadrature_reduce: need at least 64 points per axis");

    // the box must cover the state: L >= 6 max position standard deviation
    Eigen::LLT<Eigen::MatrixXd> llt(state.omega.real());
    if (llt.info() != Eigen::Success)
        throw NonPositiveBath("quadrature_reduce: Re Omega not positive definite");
    const Eigen::MatrixXd cov = 0.5 * llt.solve(Eigen::MatrixXd::Identity(n, n));
    const double sigma_max = std::sqrt(cov.diagonal().maxCoeff());
    if (grid.half_width < 6.0 * sigma_max)
        throw ValidationError("quadrature_reduce: half_width below 6 sigma");

    const double coarse = detail::quadrature_purity_at(state, grid.half_width, grid.points_per_axis);
    const double fine = detail::quadrature_purity_at(state, grid.half_width, 2 * grid.points_per_axis);
    if (std::abs(coarse - fine) > 1e-4)
        throw GridTooCoarse("quadrature_reduce: doubling moved result by " +
                            std::to_string(std::abs(coarse - fine)));
    return coarse;
}

// Single-mode Moebius map, finite at every t.
inline std::complex<double> scalar_evolution(std::complex<double> omega0, double mode_freq,
                                             double t) {
    using cd = std::complex<double>;
    const double s = std::sin(mode_freq * t);
    const double c = std::cos(mode_freq * t);
    return mode_freq * (mode_freq * s - cd(0.0, 1.0) * omega0 * c) /
           (omega0 * s - cd(0.0, 1.0) * mode_freq * c);
}

// Literal kernel-diagonal form g (W0 - i f)^{-1} g - i f. Diverges at
// propagator singularities; retained only to cross-check the stable form.
inline Eigen::MatrixXcd mode_evolution_literal(const Eigen::MatrixXcd& mode_omega0,
                                               const PropagatorDiagonals& diag) {
    using cd = std::complex<double>;
    const Eigen::Index n = mode_omega0.rows();
    if (diag.f.size() != n)
        throw DimensionMismatch("mode_evolution_literal: dimensions differ");
    if (diag.singular)
        throw SingularEvolution("mode_evolution_literal: propagator singular at this t");
    Eigen::MatrixXcd a = mode_omega0;
    a.diagonal() -= cd(0.0, 1.0) * diag.f.cast<cd>();
    Eigen::MatrixXcd gg = a.partialPivLu().solve(
        Eigen::MatrixXcd(diag.g.cast<cd>().asDiagonal()));
    gg = diag.g.cast<cd>().asDiagonal() * gg;
    gg.diagonal() -= cd(0.0, 1.0) * diag.f.cast<cd>();
    return gg;
}

} // namespace ringbath
