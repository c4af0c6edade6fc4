#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "compressed.hpp"
#include "dense.hpp"
#include "matchgate.hpp"
#include "model.hpp"
#include "states.hpp"

namespace xyc {

// Dense 2^n reference; density matrices throughout.
struct DenseState {
    CMat rho;

    static DenseState pure(const CVec& psi)
    {
        CVec v = psi.normalized();
        return {v * v.adjoint()};
    }
    int n() const { return ilog2(rho.rows()); }
};

inline CVec basis_vector(int n, long long index)
{
    require_dense(n);
    CVec v = CVec::Zero(1LL << n);
    v(index) = 1.0;
    return v;
}

// Field part -g sum Z_j.
inline CMat hamiltonian_field(int n, double g)
{
    require_dense(n);
    const long long dim = 1LL << n;
    CMat H = CMat::Zero(dim, dim);
    for (long long b = 0; b < dim; ++b) {
        int up = 0;
        for (int q = 0; q < n; ++q)
            up += 1 - 2 * bit(b, q);
        H(b, b) = -g * up;
    }
    return H;
}

// Coupling part -sum (X_j X_j+1 + delta Y_j Y_j+1); the closing bond uses
// X_n = P X_0, Y_n = P Y_0 with P the parity string.
inline CMat hamiltonian_coupling(int n, double delta, bool boundary)
{
    require_dense(n);
    const long long dim = 1LL << n;
    CMat H = CMat::Zero(dim, dim);
    for (int j = 0; j + 1 < n; ++j) {
        H -= pauli_string(pauli_word(n, {{j, 'X'}, {j + 1, 'X'}}));
        if (delta != 0.0)
            H -= delta * pauli_string(pauli_word(n, {{j, 'Y'}, {j + 1, 'Y'}}));
    }
    if (boundary) {
        const CMat P = pauli_string(std::string(n, 'Z'));
        const CMat Xn = P * pauli_string(pauli_word(n, {{0, 'X'}}));
        const CMat Yn = P * pauli_string(pauli_word(n, {{0, 'Y'}}));
        H -= pauli_string(pauli_word(n, {{n - 1, 'X'}})) * Xn;
        if (delta != 0.0)
            H -= delta * pauli_string(pauli_word(n, {{n - 1, 'Y'}})) * Yn;
    }
    return H;
}

inline CMat hamiltonian_spin(const ModelParams& p, bool boundary = true)
{
    return hamiltonian_field(p.n, p.g) + hamiltonian_coupling(p.n, p.delta, boundary);
}

// H[a] = -1/2 sum eps_j Z_j
inline CMat hamiltonian_modes(const Spectrum& spec)
{
    require_dense(spec.n);
    const long long dim = 1LL << spec.n;
    CMat H = CMat::Zero(dim, dim);
    for (long long b = 0; b < dim; ++b) {
        double e = 0.0;
        for (int q = 0; q < spec.n; ++q)
            e += -0.5 * spec.eps[q] * (1 - 2 * bit(b, q));
        H(b, b) = e;
    }
    return H;
}

inline std::vector<double> dense_spectrum(const CMat& H)
{
    Eigen::SelfAdjointEigenSolver<CMat> es(H, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

// e^{-H/T} / Z; T = 0 gives the normalised ground-space projector.
inline DenseState gibbs(const CMat& H, double T, double degeneracy_tol = 1e-9)
{
    if (!(T >= 0.0))
        throw std::invalid_argument("temperature must be non-negative");
    Eigen::SelfAdjointEigenSolver<CMat> es(H);
    const auto& ev = es.eigenvalues();
    const double emin = ev.minCoeff();
    Eigen::VectorXd w(ev.size());
    for (int i = 0; i < ev.size(); ++i) {
        if (T == 0.0)
            w(i) = (ev(i) - emin <= degeneracy_tol) ? 1.0 : 0.0;
        else
            w(i) = std::exp(-(ev(i) - emin) / T);
    }
    w /= w.sum();
    const CMat& V = es.eigenvectors();
    return {V * w.cast<cplx>().asDiagonal() * V.adjoint()};
}

inline double expectation_dense(const DenseState& st, const CMat& A)
{
    if (st.rho.rows() != A.rows())
        throw std::invalid_argument("state and observable dimensions differ");
    const cplx v = st.rho.cwiseProduct(A.transpose()).sum();
    if (std::abs(v.imag()) > 1e-10)
        throw std::runtime_error("expectation value has an imaginary part");
    return v.real();
}

inline DenseState conjugate(const CMat& U, const DenseState& st) { return {U * st.rho * U.adjoint()}; }

// One step e^{-i H_f(g_l) dt} e^{-i H_c dt} per l = 0..L; coupling acts first.
inline DenseState quench_dense(int n, const QuenchSchedule& q, const DenseState& init, bool boundary = false)
{
    require_dense(n);
    const double dt = q.step();
    const CMat Uc = expm_hermitian(hamiltonian_coupling(n, 0.0, boundary), dt);
    CMat rho = init.rho;
    const long long dim = 1LL << n;
    std::vector<double> zsum(dim);
    for (long long b = 0; b < dim; ++b) {
        int up = 0;
        for (int k = 0; k < n; ++k)
            up += 1 - 2 * bit(b, k);
        zsum[b] = up;
    }
    for (long l = 0; l <= q.L; ++l) {
        rho = Uc * rho * Uc.adjoint();
        // field step is diagonal: phase e^{i g dt (z_a - z_b)}
        const double g = q.g(l);
        for (long long a = 0; a < dim; ++a)
            for (long long b = 0; b < dim; ++b)
                rho(a, b) *= std::polar(1.0, g * dt * (zsum[a] - zsum[b]));
    }
    return {rho};
}

inline DenseState evolve_dense(const CMat& H, double t, const DenseState& st) { return conjugate(expm_hermitian(H, t), st); }

// W(t) = prod_j e^{i eps_j t Z_j / 2}
inline CMat w_product(const Spectrum& spec, double t)
{
    require_dense(spec.n);
    CMat W = CMat::Identity(1LL << spec.n, 1LL << spec.n);
    for (int j = 0; j < spec.n; ++j)
        W = expm_hermitian(-0.5 * spec.eps[j] * pauli_string(pauli_word(spec.n, {{j, 'Z'}})), t) * W;
    return W;
}

// Dense operator of a quadratic observable.
inline CMat dense_observable(const QuadraticObservable& obs) { return quadratic_operator(obs.C); }

inline DenseState dense_product_state(const std::vector<Eigen::Matrix2cd>& onebody)
{
    const int n = static_cast<int>(onebody.size());
    require_dense(n);
    CMat rho = CMat::Ones(1, 1);
    for (int q = n - 1; q >= 0; --q) {
        CMat next(rho.rows() * 2, rho.cols() * 2);
        for (int a = 0; a < rho.rows(); ++a)
            for (int b = 0; b < rho.cols(); ++b)
                next.block<2, 2>(2 * a, 2 * b) = rho(a, b) * onebody[q];
        rho = next;
    }
    return {rho};
}

// Eigenstate U W_k |0..0>.
inline DenseState dense_eigenstate(const CMat& U, const Occupation& occ)
{
    const int n = static_cast<int>(occ.size());
    return DenseState::pure(U * excitation_operator(n, occ) * basis_vector(n, 0));
}

} // namespace xyc
