#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "compressed.hpp"
#include "dense.hpp"
#include "model.hpp"

namespace xyc {

// S_rs = tr(-i x_r x_s rho); the compressed input is (alpha I - i S) / 2n.
struct CovarianceState {
    Mat S;
    double alpha = 1.0;

    int n() const { return static_cast<int>(S.rows()) / 2; }

    CMat compressed_density() const
    {
        const int d = static_cast<int>(S.rows());
        return (alpha * CMat::Identity(d, d) - cplx(0.0, 1.0) * S.cast<cplx>()) / static_cast<double>(d);
    }
};

struct QuadraticObservable {
    Mat C; // A = i sum_jk C_jk x_j x_k
    std::string label;

    int n() const { return static_cast<int>(C.rows()) / 2; }
    CMat compressed() const { return cplx(0.0, 2.0) * C.cast<cplx>(); }
};

inline void check_antisymmetric(const Mat& A, const char* what)
{
    if (A.rows() != A.cols() || A.rows() % 2 != 0)
        throw std::invalid_argument(std::string(what) + " must be square with even dimension");
    if ((A + A.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument(std::string(what) + " must be antisymmetric");
}

inline double spectral_norm(const Mat& A)
{
    if (A.size() == 0)
        return 0.0;
    Eigen::JacobiSVD<Mat> svd(A);
    return svd.singularValues()(0);
}

inline CovarianceState make_state(Mat S)
{
    check_antisymmetric(S, "covariance");
    CovarianceState st;
    st.alpha = std::max(1.0, spectral_norm(S));
    st.S = std::move(S);
    return st;
}

inline CovarianceState block_state(const std::vector<double>& blocks)
{
    const int n = static_cast<int>(blocks.size());
    Mat S = Mat::Zero(2 * n, 2 * n);
    for (int l = 0; l < n; ++l) {
        S(2 * l, 2 * l + 1) = blocks[l];
        S(2 * l + 1, 2 * l) = -blocks[l];
    }
    return {S, 1.0};
}

inline CovarianceState thermal_state(const Spectrum& spec, double T)
{
    if (!(T >= 0.0))
        throw std::invalid_argument("temperature must be non-negative");
    std::vector<double> b(spec.n);
    for (int l = 0; l < spec.n; ++l)
        b[l] = thermal_block(spec.eps[l], T);
    return block_state(b);
}

inline CovarianceState vacuum_state(int n) { return block_state(std::vector<double>(n, 1.0)); }

// W_k |0..0> in the mode basis.
inline CovarianceState excited_state(const Occupation& occ)
{
    const int n = static_cast<int>(occ.size());
    CovarianceState st = vacuum_state(n);
    const Mat W = r_excitation(occ).dense(2 * n);
    st.S = W * st.S * W.transpose();
    return st;
}

inline bool is_density_matrix(const Eigen::Matrix2cd& rho, double tol = 1e-10)
{
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
        return false;
    if (std::abs(rho.trace() - cplx(1.0)) > tol)
        return false;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho);
    return es.eigenvalues().minCoeff() >= -tol;
}

inline Eigen::Matrix2cd pauli2(char c)
{
    Eigen::Matrix2cd P;
    switch (c) {
    case 'I': P << 1, 0, 0, 1; break;
    case 'X': P << 0, 1, 1, 0; break;
    case 'Y': P << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'Z': P << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad Pauli letter");
    }
    return P;
}

// Covariance of a product of one-qubit states, qubit q = onebody[q].
inline CovarianceState product_state(const std::vector<Eigen::Matrix2cd>& onebody)
{
    const int n = static_cast<int>(onebody.size());
    for (const auto& r : onebody)
        if (!is_density_matrix(r))
            throw std::invalid_argument("product_state needs valid one-qubit density matrices");
    const Eigen::Matrix2cd X = pauli2('X'), Y = pauli2('Y'), Z = pauli2('Z');
    std::vector<cplx> ez(n);
    std::vector<std::array<cplx, 2>> ep(n), epz(n);
    for (int q = 0; q < n; ++q) {
        ez[q] = (Z * onebody[q]).trace();
        ep[q] = {(X * onebody[q]).trace(), (Y * onebody[q]).trace()};
        epz[q] = {(X * Z * onebody[q]).trace(), (Y * Z * onebody[q]).trace()};
    }
    Mat S = Mat::Zero(2 * n, 2 * n);
    for (int r = 0; r < 2 * n; ++r)
        for (int s = r + 1; s < 2 * n; ++s) {
            const int a = r / 2, b = s / 2;
            double v;
            if (a == b) {
                v = ez[a].real(); // x_2a x_2a+1 = i Z_a
            } else {
                // x_r x_s = (P_r Z)_a Z_{a+1..b-1} (P_s)_b
                cplx e = epz[a][r % 2] * ep[b][s % 2];
                for (int q = a + 1; q < b; ++q)
                    e *= ez[q];
                v = (cplx(0.0, -1.0) * e).real();
            }
            S(r, s) = v;
            S(s, r) = -v;
        }
    return make_state(std::move(S));
}

inline Eigen::Matrix2cd ket_density(cplx a, cplx b)
{
    Eigen::Vector2cd v(a, b);
    v.normalize();
    return v * v.adjoint();
}

// ---- observables --------------------------------------------------------

// M = (1/n) sum_j Z_j
inline QuadraticObservable observable_magnetization(int n)
{
    Mat C = Mat::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        C(2 * j, 2 * j + 1) = -0.5 / n;
        C(2 * j + 1, 2 * j) = 0.5 / n;
    }
    return {C, "M"};
}

// K = 1/(n-1) sum_j X_j X_j+1 over open-chain bonds
inline QuadraticObservable observable_kinks(int n)
{
    if (n < 2)
        throw std::invalid_argument("kink observable needs n >= 2");
    Mat C = Mat::Zero(2 * n, 2 * n);
    const double w = -0.5 / (n - 1);
    for (int j = 0; j + 1 < n; ++j) {
        C(2 * j + 1, 2 * j + 2) = w;
        C(2 * j + 2, 2 * j + 1) = -w;
    }
    return {C, "K"};
}

// C_jk = X_j Z..Z X_k, j < k
inline QuadraticObservable observable_correlation(int j, int k, int n)
{
    if (j < 0 || k >= n || j >= k)
        throw std::invalid_argument("correlation needs 0 <= j < k < n");
    Mat C = Mat::Zero(2 * n, 2 * n);
    C(2 * j + 1, 2 * k) = -0.5;
    C(2 * k, 2 * j + 1) = 0.5;
    return {C, "C_" + std::to_string(j) + "," + std::to_string(k)};
}

inline QuadraticObservable observable_generic(Mat C, std::string label = "A")
{
    check_antisymmetric(C, "observable");
    return {std::move(C), std::move(label)};
}

// ---- expectation ----------------------------------------------------------

// <A> = tr(C R S R^T) with R mapping mode Majoranas to spin Majoranas.
inline double expectation_of_covariance(const Mat& S, const QuadraticObservable& obs)
{
    if (S.rows() != obs.C.rows())
        throw std::invalid_argument("state and observable dimensions differ");
    return -(obs.C.cwiseProduct(S)).sum();
}

inline double expectation(const Mat& R, const CovarianceState& st, const QuadraticObservable& obs)
{
    if (R.rows() != st.S.rows() || R.cols() != st.S.cols())
        throw std::invalid_argument("gate and state dimensions differ");
    const Mat Sp = R * st.S * R.transpose();
    return expectation_of_covariance(Sp, obs);
}

inline double expectation(const OrthogonalGate& R, const CovarianceState& st, const QuadraticObservable& obs)
{
    return expectation(R.R, st, obs);
}

// Same quantity in the complex form n tr(R rho R^T A).
inline double expectation_compressed_form(const Mat& R, const CovarianceState& st, const QuadraticObservable& obs)
{
    const CMat Rc = R.cast<cplx>();
    const cplx v = static_cast<double>(st.n()) * (Rc * st.compressed_density() * Rc.transpose() * obs.compressed()).trace();
    return v.real();
}

} // namespace xyc
