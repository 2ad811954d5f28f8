// model.hpp — ring lattice of coupled oscillators: normal modes, DFT basis,
// ground-state matrix, and per-mode propagator diagonals
//
// N oscillators on a circle with on-site frequency omega and nearest-neighbor
// coupling lambda. The discrete Fourier transform S diagonalizes the coupling
// matrix; mode k oscillates at
//
//   freq_k = sqrt(omega^2 + 4 lambda sin^2(pi k / N)),   freq_k = freq_{N-k}.
//
// The mirror symmetry of the spectrum is what makes the ground-state matrix
// A = S^dag diag(freq) S real.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>

#include "ringbath/errors.hpp"

namespace ringbath {

struct ModelParams {
    int n = 2;             // oscillator count, >= 2
    double omega = 1.0;    // on-site frequency, > 0 (sets the energy unit)
    double lambda = 0.0;   // nearest-neighbor coupling, >= 0
};

inline void validate(const ModelParams& p) {
    if (p.n < 2) throw ValidationError("model: n must be >= 2");
    if (!(p.omega > 0.0)) throw ValidationError("model: omega must be > 0");
    if (!(p.lambda >= 0.0)) throw ValidationError("model: lambda must be >= 0");
}

struct ModeSpectrum {
    Eigen::VectorXd freqs;   // freqs[k] > 0, freqs[k] == freqs[n-k] bit-exactly
};

// Mode frequencies from the dispersion relation. Entries above n/2 are copied
// from their mirror images so the symmetry holds exactly in floating point.
inline ModeSpectrum normal_mode_frequencies(const ModelParams& p) {
    const int n = p.n;
    Eigen::VectorXd f(n);
    for (int k = 0; k <= n / 2; ++k) {
        const double s = std::sin(M_PI * static_cast<double>(k) / n);
        f[k] = std::sqrt(p.omega * p.omega + 4.0 * p.lambda * s * s);
    }
    for (int k = n / 2 + 1; k < n; ++k) f[k] = f[n - k];
    return {std::move(f)};
}

struct DftBasis {
    Eigen::MatrixXcd s;   // unitary, symmetric; s(j,k) = exp(-2 pi i jk / n) / sqrt(n)
};

// The exponent jk is reduced mod n before evaluating, which keeps entries on
// the unit circle to full precision for any n.
inline DftBasis dft_matrix(int n) {
    if (n < 2) throw ValidationError("dft_matrix: n must be >= 2");
    Eigen::MatrixXcd s(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j) {
        for (int k = j; k < n; ++k) {
            const std::int64_t e = (static_cast<std::int64_t>(j) * k) % n;
            const double phase = -2.0 * M_PI * static_cast<double>(e) / n;
            s(j, k) = std::polar(norm, phase);
            s(k, j) = s(j, k);
        }
    }
    return {std::move(s)};
}

// Ground-state quadratic-form matrix A = S^dag diag(freq) S. Round-off level
// imaginary parts are dropped; anything above 1e-8 means the spectrum mirror
// symmetry is broken and is reported as an internal error.
inline Eigen::MatrixXd ground_state_matrix(const ModelParams& p) {
    validate(p);
    const ModeSpectrum spec = normal_mode_frequencies(p);
    const DftBasis basis = dft_matrix(p.n);
    const Eigen::MatrixXcd a =
        basis.s.adjoint() * spec.freqs.cast<std::complex<double>>().asDiagonal() * basis.s;
    const double max_imag = a.imag().cwiseAbs().maxCoeff();
    if (max_imag > 1e-8)
        throw InternalError("ground_state_matrix: imaginary part " + std::to_string(max_imag));
    return a.real();
}

// Per-mode propagator kernel diagonals at time t:
//   f_k = freq_k cot(freq_k t),   g_k = freq_k / sin(freq_k t).
// Both diverge whenever freq_k t approaches a multiple of pi; `singular` flags
// that. Consumers needing values at arbitrary t must use the singularity-free
// evolution form in gaussian.hpp instead of f and g.
struct PropagatorDiagonals {
    double t = 0.0;
    Eigen::VectorXd f;
    Eigen::VectorXd g;
    bool singular = false;
};

inline PropagatorDiagonals propagator_diagonals(const ModelParams& p, double t) {
    if (t < 0.0) throw ValidationError("propagator_diagonals: t must be >= 0");
    const ModeSpectrum spec = normal_mode_frequencies(p);
    const int n = static_cast<int>(spec.freqs.size());
    PropagatorDiagonals d;
    d.t = t;
    d.f.resize(n);
    d.g.resize(n);
    for (int k = 0; k < n; ++k) {
        const double w = spec.freqs[k];
        const double s = std::sin(w * t);
        const double c = std::cos(w * t);
        if (std::abs(s) < 1e-9) d.singular = true;
        d.f[k] = w * c / s;
        d.g[k] = w / s;
    }
    return d;
}

} // namespace ringbath
