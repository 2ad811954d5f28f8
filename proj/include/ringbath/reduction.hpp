// reduction.hpp — partial trace onto oscillator 0 and purity
//
// Writing the full matrix as blocks W = [[W00, v^T], [v, M]], integrating the
// bath coordinates out of psi(x) psi*(x') leaves a two-parameter kernel
//
//   rho0(x, x') ~ exp(-1/2 r11 x^2 - 1/2 r11* x'^2 + r12 x x'),
//
// with r11 = W00 - a and a = v^T K v for K = (M + M*)^{-1}. Two conventions
// for the cross term are kept side by side:
//
//   paper  r12 = |a|
//   exact  r12 = v^T K v*   (what the marginalization integral itself gives;
//                            real and nonnegative, >= |a| by Cauchy-Schwarz)
//
// They coincide whenever v is a common phase times a real vector, so for every
// real initial matrix at t = 0.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "ringbath/errors.hpp"
#include "ringbath/gaussian.hpp"

namespace ringbath {

enum class R12Mode { paper, exact };

struct ReducedState {
    std::complex<double> r11;
    double r12 = 0.0;
    R12Mode mode = R12Mode::paper;
};

inline ReducedState reduce(const GaussianState& state, R12Mode mode) {
    const int n = state.n();
    if (n < 2) throw DimensionMismatch("reduce: need at least one bath oscillator");

    const Eigen::VectorXcd v = state.omega.row(0).tail(n - 1);
    // M + M* is real symmetric; positive definite for any valid state.
    const Eigen::MatrixXd bath = 2.0 * state.omega.bottomRightCorner(n - 1, n - 1).real();
    Eigen::LLT<Eigen::MatrixXd> llt(bath);
    if (llt.info() != Eigen::Success)
        throw NonPositiveBath("reduce: bath block M + M* is not positive definite");

    const Eigen::VectorXd kv_re = llt.solve(v.real());
    const Eigen::VectorXd kv_im = llt.solve(v.imag());
    const std::complex<double> a(v.real().dot(kv_re) - v.imag().dot(kv_im),
                                 v.real().dot(kv_im) + v.imag().dot(kv_re));

    ReducedState r;
    r.mode = mode;
    r.r11 = state.omega(0, 0) - a;
    r.r12 = (mode == R12Mode::paper)
                ? std::abs(a)
                : v.real().dot(kv_re) + v.imag().dot(kv_im);
    if (r.r12 > r.r11.real() + 1e-9)
        throw NonPositiveReduced("reduce: r12 exceeds Re r11");
    return r;
}

// mu = sqrt((Re r11 - r12) / (Re r11 + r12)), in (0, 1]. Round-off slightly
// below zero in the numerator is clamped; anything worse is an error.
inline double purity(const ReducedState& r) {
    const double re = r.r11.real();
    if (!(re > 0.0)) throw NonPositiveReduced("purity: Re r11 must be > 0");
    double num = re - r.r12;
    if (num < -1e-9) throw NonPositiveReduced("purity: r12 exceeds Re r11");
    if (num < 0.0) num = 0.0;
    return std::sqrt(num / (re + r.r12));
}

// Independent purity route through the single-oscillator covariance block.
// For a pure Gaussian state with W = A + iB:
//   <x x^T> = A^{-1}/2,  sym<x p^T> = -A^{-1} B / 2,  <p p^T> = (A + B A^{-1} B)/2,
// and the purity of the oscillator-0 marginal is 1 / (2 sqrt(det sigma0)).
inline double covariance_purity(const GaussianState& state) {
    const Eigen::MatrixXd a = state.omega.real();
    const Eigen::MatrixXd b = state.omega.imag();
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success)
        throw NonPositiveBath("covariance_purity: Re Omega is not positive definite");

    const int n = state.n();
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(n);
    e0[0] = 1.0;
    const Eigen::VectorXd y = llt.solve(e0);      // column 0 of A^{-1}
    const Eigen::VectorXd b0 = b.col(0);
    const Eigen::VectorXd z = llt.solve(b0);

    const double xx = y[0];                      // 2 <x0^2>
    const double xp = -y.dot(b0);                // 2 sym<x0 p0>
    const double pp = a(0, 0) + b0.dot(z);       // 2 <p0^2>
    const double det4 = xx * pp - xp * xp;       // 4 det sigma0
    if (!(det4 > 0.0))
        throw NonPositiveReduced("covariance_purity: covariance block not positive");
    return 1.0 / std::sqrt(det4);
}

} // namespace ringbath
