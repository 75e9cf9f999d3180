// Product-operator algebra on deviation density matrices.
//
// States live in the 2^(N+1)-dimensional Zeeman product basis. The library
// works with the traceless deviation part throughout; the identity component
// is invisible to every observable and is dropped.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <stdexcept>

#include "hqip/spin_system.hpp"

namespace hqip {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kUnitarityTol = 1e-10;

enum class Pol { I0, I1, Iz, Ix, Iy };

inline Operator polarization_op(Pol kind) {
    Operator m(2, 2);
    const Complex i(0.0, 1.0);
    switch (kind) {
        case Pol::I0: m << 1, 0, 0, 0; break;
        case Pol::I1: m << 0, 0, 0, 1; break;
        case Pol::Iz: m << 0.5, 0, 0, -0.5; break;
        case Pol::Ix: m << 0, 0.5, 0.5, 0; break;
        case Pol::Iy: m << 0, -0.5 * i, 0.5 * i, 0; break;
    }
    return m;
}

// ordered tensor product over spins 0..N; unspecified spins get identity
inline Operator product_operator(const SpinSystem& sys, const std::map<int, Pol>& factors) {
    for (const auto& [spin, kind] : factors)
        if (spin < 0 || spin >= sys.n_spins)
            throw std::invalid_argument("product_operator: spin index out of range");
    Operator out = Operator::Identity(1, 1);
    for (int s = 0; s < sys.n_spins; ++s) {
        auto it = factors.find(s);
        const Operator f = (it == factors.end()) ? Operator::Identity(2, 2)
                                                 : polarization_op(it->second);
        Operator next(out.rows() * 2, out.cols() * 2);
        for (int r = 0; r < out.rows(); ++r)
            for (int c = 0; c < out.cols(); ++c)
                next.block(2 * r, 2 * c, 2, 2) = out(r, c) * f;
        out = next;
    }
    return out;
}

class DensityOperator {
  public:
    explicit DensityOperator(Operator m) : mat_(std::move(m)) {
        if (mat_.rows() != mat_.cols())
            throw std::invalid_argument("density operator must be square");
        if ((mat_.rows() & (mat_.rows() - 1)) != 0)
            throw std::invalid_argument("density operator dimension must be a power of two");
        const double dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
        if (dev > kHermiticityTol)
            throw std::invalid_argument("density operator is not Hermitian");
        mat_ = 0.5 * (mat_ + mat_.adjoint().eval());  // pin hermiticity exactly
    }

    const Operator& mat() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }

  private:
    Operator mat_;
};

// sigma = I_z^O summed over every work configuration, i.e. I_z on the
// observer tensored with identity on the work spins
inline DensityOperator observer_equilibrium(const SpinSystem& sys) {
    return DensityOperator(product_operator(sys, {{sys.observer, Pol::Iz}}));
}

inline bool is_unitary(const Operator& u, double tol = kUnitarityTol) {
    if (u.rows() != u.cols()) return false;
    const Operator residual =
        u.adjoint() * u - Operator::Identity(u.rows(), u.cols());
    return residual.cwiseAbs().maxCoeff() <= tol;
}

inline DensityOperator apply_unitary(const DensityOperator& rho, const Operator& u) {
    if (u.rows() != rho.dim() || u.cols() != rho.dim())
        throw std::invalid_argument("apply_unitary: dimension mismatch");
    if (!is_unitary(u)) throw std::invalid_argument("apply_unitary: operator is not unitary");
    return DensityOperator(u * rho.mat() * u.adjoint());
}

// free evolution propagator exp(-i 2 pi H t); H is diagonal in this basis
inline Operator free_evolution(const SpinSystem& sys, double t_seconds) {
    const Eigen::VectorXd energy = hamiltonian_diagonal(sys);
    Operator u = Operator::Zero(sys.dim(), sys.dim());
    for (int a = 0; a < sys.dim(); ++a)
        u(a, a) = std::polar(1.0, -2.0 * M_PI * energy(a) * t_seconds);
    return u;
}

inline DensityOperator evolve(const DensityOperator& rho, const SpinSystem& sys,
                              double t_seconds) {
    if (t_seconds < 0) throw std::invalid_argument("evolve: negative time");
    if (rho.dim() != sys.dim())
        throw std::invalid_argument("evolve: dimension mismatch");
    const Eigen::VectorXd energy = hamiltonian_diagonal(sys);
    Operator out = rho.mat();
    for (int a = 0; a < out.rows(); ++a)
        for (int b = 0; b < out.cols(); ++b)
            out(a, b) *= std::polar(1.0, -2.0 * M_PI * (energy(a) - energy(b)) * t_seconds);
    return DensityOperator(std::move(out));
}

inline Complex expectation(const DensityOperator& rho, const Operator& obs) {
    if (obs.rows() != rho.dim() || obs.cols() != rho.dim())
        throw std::invalid_argument("expectation: dimension mismatch");
    return (rho.mat() * obs).trace();
}

// sign of the I_z^O component on each observer transition: for
// rho = I_z^O sum_s eps_s P_s this returns eps, one entry per work label
inline std::vector<double> observer_pattern(const DensityOperator& rho, const SpinSystem& sys) {
    std::vector<double> eps(1u << sys.n_work());
    for (unsigned s = 0; s < eps.size(); ++s) {
        const unsigned up = full_index(sys, 0, s);
        const unsigned dn = full_index(sys, 1, s);
        eps[s] = (rho.mat()(up, up) - rho.mat()(dn, dn)).real();
    }
    return eps;
}

}  // namespace hqip
