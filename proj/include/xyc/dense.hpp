#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bits.hpp"

namespace xyc {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Dense operators are indexed little-endian: qubit q is bit q of the
// basis index.
inline constexpr int kMaxDenseQubits = 8;

inline void require_dense(int n)
{
    if (n > kMaxDenseQubits)
        throw std::invalid_argument("dense operators are limited to n <= 8, got " + std::to_string(n));
}

// Pauli string given as one character per qubit from {I,X,Y,Z}.
inline CMat pauli_string(const std::string& ops)
{
    const int n = static_cast<int>(ops.size());
    require_dense(n);
    const long long dim = 1LL << n;
    long long xmask = 0;
    for (int q = 0; q < n; ++q)
        if (ops[q] == 'X' || ops[q] == 'Y')
            xmask |= 1LL << q;
    CMat P = CMat::Zero(dim, dim);
    for (long long col = 0; col < dim; ++col) {
        cplx ph = 1.0;
        for (int q = 0; q < n; ++q) {
            const int b = bit(col, q);
            switch (ops[q]) {
            case 'Z': if (b) ph = -ph; break;
            case 'Y': ph *= b ? cplx(0, -1) : cplx(0, 1); break;
            case 'I': case 'X': break;
            default: throw std::invalid_argument("bad Pauli letter");
            }
        }
        P(col ^ xmask, col) = ph;
    }
    return P;
}

inline std::string pauli_word(int n, std::initializer_list<std::pair<int, char>> ops)
{
    std::string w(n, 'I');
    for (auto [q, c] : ops)
        w[q] = c;
    return w;
}

// Jordan-Wigner Majorana: x_2k = Z..Z X_k, x_2k+1 = Z..Z Y_k.
inline CMat majorana(int n, int j)
{
    const int k = j / 2;
    std::string w(n, 'I');
    for (int q = 0; q < k; ++q)
        w[q] = 'Z';
    w[k] = (j % 2 == 0) ? 'X' : 'Y';
    return pauli_string(w);
}

inline std::vector<CMat> majoranas(int n)
{
    std::vector<CMat> xs;
    xs.reserve(2 * n);
    for (int j = 0; j < 2 * n; ++j)
        xs.push_back(majorana(n, j));
    return xs;
}

// Embed a 4x4 gate on qubits (p, p+1); the gate's basis index is 2 i_p + i_{p+1}.
inline CMat embed_two_qubit(int n, const Eigen::Matrix4cd& G, int p)
{
    require_dense(n);
    const long long dim = 1LL << n;
    CMat U = CMat::Zero(dim, dim);
    const long long clear = ~((1LL << p) | (1LL << (p + 1)));
    for (long long col = 0; col < dim; ++col) {
        const int c = 2 * bit(col, p) + bit(col, p + 1);
        for (int r = 0; r < 4; ++r) {
            if (G(r, c) == cplx(0.0))
                continue;
            const long long row = (col & clear) | (static_cast<long long>(r >> 1) << p)
                | (static_cast<long long>(r & 1) << (p + 1));
            U(row, col) += G(r, c);
        }
    }
    return U;
}

// e^{-i H t} for Hermitian H.
inline CMat expm_hermitian(const CMat& H, double t)
{
    Eigen::SelfAdjointEigenSolver<CMat> es(H);
    CVec ph(es.eigenvalues().size());
    for (int i = 0; i < ph.size(); ++i)
        ph(i) = std::exp(cplx(0.0, -es.eigenvalues()(i) * t));
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

// Pauli string with one nonzero per column: column c maps to row[c] with val[c].
struct Monomial {
    std::vector<long long> row;
    std::vector<cplx> val;

    Monomial operator*(const Monomial& b) const
    {
        Monomial out;
        out.row.resize(b.row.size());
        out.val.resize(b.row.size());
        for (std::size_t c = 0; c < b.row.size(); ++c) {
            out.row[c] = row[b.row[c]];
            out.val[c] = val[b.row[c]] * b.val[c];
        }
        return out;
    }

    // M <- this * M
    CMat apply_left(const CMat& M) const
    {
        CMat out(M.rows(), M.cols());
        for (long long c = 0; c < M.rows(); ++c)
            out.row(row[c]) = val[c] * M.row(c);
        return out;
    }
};

inline Monomial majorana_monomial(int n, int j)
{
    require_dense(n);
    const int k = j / 2;
    const long long dim = 1LL << n;
    Monomial m;
    m.row.resize(dim);
    m.val.resize(dim);
    for (long long c = 0; c < dim; ++c) {
        int par = 0;
        for (int q = 0; q < k; ++q)
            par ^= bit(c, q);
        cplx ph = par ? -1.0 : 1.0;
        if (j % 2 == 1)
            ph *= bit(c, k) ? cplx(0, -1) : cplx(0, 1);
        m.row[c] = c ^ (1LL << k);
        m.val[c] = ph;
    }
    return m;
}

// A = i sum_jk C_jk x_j x_k for real antisymmetric C.
inline CMat quadratic_operator(const Mat& C)
{
    const int n = static_cast<int>(C.rows()) / 2;
    std::vector<Monomial> xs;
    for (int j = 0; j < 2 * n; ++j)
        xs.push_back(majorana_monomial(n, j));
    const long long dim = 1LL << n;
    CMat A = CMat::Zero(dim, dim);
    for (int j = 0; j < 2 * n; ++j)
        for (int k = 0; k < 2 * n; ++k)
            if (C(j, k) != 0.0) {
                const Monomial p = xs[j] * xs[k];
                for (long long c = 0; c < dim; ++c)
                    A(p.row[c], c) += cplx(0.0, C(j, k)) * p.val[c];
            }
    return A;
}

// R_jk = tr(U^dag x_j U x_k) / 2^n, so that U^dag x_j U = sum_k R_jk x_k.
inline Mat orthogonal_from_unitary(const CMat& U)
{
    const int n = ilog2(U.rows());
    std::vector<Monomial> xs;
    for (int j = 0; j < 2 * n; ++j)
        xs.push_back(majorana_monomial(n, j));
    const double dim = static_cast<double>(U.rows());
    const CMat Ud = U.adjoint();
    Mat R(2 * n, 2 * n);
    for (int j = 0; j < 2 * n; ++j) {
        const CMat A = Ud * xs[j].apply_left(U);
        // tr(A x_k) = sum_c A(c, row_k[c]) val_k[c]
        for (int k = 0; k < 2 * n; ++k) {
            cplx t = 0.0;
            for (long long c = 0; c < U.rows(); ++c)
                t += A(c, xs[k].row[c]) * xs[k].val[c];
            R(j, k) = t.real() / dim;
        }
    }
    return R;
}

// S_rs = tr(-i x_r x_s rho), zero diagonal.
inline Mat covariance_dense(const CMat& rho)
{
    const int n = ilog2(rho.rows());
    std::vector<Monomial> xs;
    for (int j = 0; j < 2 * n; ++j)
        xs.push_back(majorana_monomial(n, j));
    Mat S = Mat::Zero(2 * n, 2 * n);
    for (int r = 0; r < 2 * n; ++r)
        for (int s = 0; s < 2 * n; ++s) {
            if (r == s)
                continue;
            const Monomial p = xs[r] * xs[s];
            cplx t = 0.0;
            for (long long c = 0; c < rho.rows(); ++c)
                t += rho(c, p.row[c]) * p.val[c];
            S(r, s) = (cplx(0, -1) * t).real();
        }
    return S;
}

} // namespace xyc
