// gaussian.hpp — Gaussian pure states of the full ring and their exact
// time evolution
//
// A state is psi(x) ~ exp(-1/2 x^T W x) for a complex symmetric matrix W with
// positive definite real part. Evolution is exact: in the mode basis each
// diagonal entry of W would follow a scalar Moebius map; for a full matrix the
// map reads
//
//   Wt = F (W0 Sd - i F Cd)^{-1} (F Sd - i W0 Cd)
//
// with F = diag(freq_k), Cd = diag(cos freq_k t), Sd = diag(sin freq_k t).
// This is algebraically identical to the textbook kernel form
// g (W0 - i f)^{-1} g - i f wherever the latter is finite, but it stays
// regular at the propagator singularities sin(freq_k t) = 0, which fall on
// any uniform time grid once n is large.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>

#include "ringbath/errors.hpp"
#include "ringbath/model.hpp"

namespace ringbath {

struct GaussianState {
    Eigen::MatrixXcd omega;   // complex symmetric, Re positive definite

    GaussianState() = default;
    explicit GaussianState(Eigen::MatrixXcd m) : omega(std::move(m)) {
        if (omega.rows() != omega.cols())
            throw DimensionMismatch("GaussianState: matrix must be square");
    }

    int n() const { return static_cast<int>(omega.rows()); }
};

struct StateDiagnostics {
    bool symmetric = false;
    bool posdef = false;
    double max_asymmetry = 0.0;
    double min_real_eigenvalue = 0.0;
};

// Non-throwing invariant report, used to fail fast on bad configurations.
inline StateDiagnostics validate_state(const GaussianState& state) {
    StateDiagnostics d;
    d.max_asymmetry = (state.omega - state.omega.transpose()).cwiseAbs().maxCoeff();
    d.symmetric = d.max_asymmetry <= 1e-10;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(state.omega.real());
    d.min_real_eigenvalue = es.eigenvalues().minCoeff();
    d.posdef = d.min_real_eigenvalue > 0.0;
    return d;
}

// Mode-basis form S W S^dag of the quadratic-form matrix.
inline Eigen::MatrixXcd to_mode_basis(const GaussianState& state, const DftBasis& basis) {
    if (basis.s.rows() != state.omega.rows())
        throw DimensionMismatch("to_mode_basis: basis and state dimensions differ");
    return basis.s * state.omega * basis.s.adjoint();
}

inline GaussianState from_mode_basis(const Eigen::MatrixXcd& mode_omega, const DftBasis& basis) {
    if (basis.s.rows() != mode_omega.rows())
        throw DimensionMismatch("from_mode_basis: basis and matrix dimensions differ");
    return GaussianState(basis.s.adjoint() * mode_omega * basis.s);
}

// One evolution step in the mode basis; regular at every t >= 0.
inline Eigen::MatrixXcd evolve_mode_omega(const Eigen::MatrixXcd& mode_omega0,
                                          const Eigen::VectorXd& freqs, double t) {
    using cd = std::complex<double>;
    const Eigen::Index n = mode_omega0.rows();
    if (freqs.size() != n)
        throw DimensionMismatch("evolve_mode_omega: spectrum and matrix dimensions differ");

    const Eigen::ArrayXd wt = freqs.array() * t;
    const Eigen::VectorXd sd = wt.sin().matrix();
    const Eigen::VectorXd cd_ = wt.cos().matrix();
    const Eigen::VectorXcd wc = (freqs.array() * cd_.array()).matrix().cast<cd>();
    const Eigen::VectorXcd ws = (freqs.array() * sd.array()).matrix().cast<cd>();

    // P = W0 Sd - i F Cd,  Q = F Sd - i W0 Cd  (right-diagonal = column scaling)
    Eigen::MatrixXcd p = mode_omega0 * sd.cast<cd>().asDiagonal();
    p.diagonal() -= cd(0.0, 1.0) * wc;
    Eigen::MatrixXcd q = cd(0.0, -1.0) * (mode_omega0 * cd_.cast<cd>().asDiagonal());
    q.diagonal() += ws;

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(p);
    if (!(lu.rcond() > 1e-12))
        throw SingularEvolution("evolve: mode-basis system is numerically singular");
    Eigen::MatrixXcd res = lu.solve(q);
    res = freqs.cast<cd>().asDiagonal() * res;
    return res;
}

// Caches the basis, spectrum, and the mode-basis initial matrix so one state
// can be mapped to many times cheaply. Immutable after construction; at() is
// const and safe to call concurrently.
class Evolver {
public:
    Evolver(const GaussianState& initial, const ModelParams& params)
        : freqs_(normal_mode_frequencies(params).freqs),
          basis_(dft_matrix(params.n)),
          mode_omega0_(to_mode_basis(initial, basis_)) {
        if (initial.n() != params.n)
            throw DimensionMismatch("Evolver: state and params dimensions differ");
    }

    GaussianState at(double t) const {
        if (t < 0.0) throw ValidationError("evolve: t must be >= 0");
        return from_mode_basis(evolve_mode_omega(mode_omega0_, freqs_, t), basis_);
    }

    const Eigen::VectorXd& freqs() const { return freqs_; }
    const DftBasis& basis() const { return basis_; }
    const Eigen::MatrixXcd& mode_omega0() const { return mode_omega0_; }

private:
    Eigen::VectorXd freqs_;
    DftBasis basis_;
    Eigen::MatrixXcd mode_omega0_;
};

// Single-shot evolution; maps the initial state directly to time t.
inline GaussianState evolve(const GaussianState& state, const ModelParams& params, double t) {
    return Evolver(state, params).at(t);
}

} // namespace ringbath
