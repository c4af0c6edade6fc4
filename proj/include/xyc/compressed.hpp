#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "dense.hpp"
#include "matchgate.hpp"
#include "model.hpp"

namespace xyc {

// R acts on Majoranas by U^dag x_j U = sum_k R_jk x_k; a circuit U2 U1 has
// R = R2 R1 and a covariance matrix evolves as S -> R S R^T.
struct OrthogonalGate {
    Mat R;
    std::string label;

    int det_sign() const { return R.fullPivLu().determinant() > 0.0 ? 1 : -1; }
    double orthogonality_error() const
    {
        return (R.transpose() * R - Mat::Identity(R.rows(), R.cols())).cwiseAbs().maxCoeff();
    }
};

// One structured factor of a compressed circuit.
struct Factor {
    enum class Kind { permutation, blocks, signs, rotations };
    struct Rotation {
        int a, b;
        double c, s; // rows a,b -> (c r_a - s r_b, s r_a + c r_b)
    };

    Kind kind = Kind::permutation;
    std::string label;
    std::vector<int> src;                               // permutation: mode at p comes from src[p]
    std::vector<std::pair<int, Eigen::Matrix4d>> blocks; // 4x4 blocks at row offsets
    std::vector<double> d;                              // signs
    std::vector<Rotation> rot;                          // disjoint plane rotations

    // M <- F M
    void apply_left(Mat& M) const
    {
        switch (kind) {
        case Kind::permutation: {
            Mat out(M.rows(), M.cols());
            for (std::size_t p = 0; p < src.size(); ++p) {
                out.row(2 * p) = M.row(2 * src[p]);
                out.row(2 * p + 1) = M.row(2 * src[p] + 1);
            }
            M.swap(out);
            break;
        }
        case Kind::blocks:
            for (const auto& [off, B] : blocks) {
                Mat rows = B * M.middleRows(off, 4);
                M.middleRows(off, 4) = rows;
            }
            break;
        case Kind::signs:
            for (int r = 0; r < M.rows(); ++r)
                if (d[r] < 0.0)
                    M.row(r) *= -1.0;
            break;
        case Kind::rotations:
            for (const auto& q : rot) {
                Eigen::RowVectorXd ra = M.row(q.a), rb = M.row(q.b);
                M.row(q.a) = q.c * ra - q.s * rb;
                M.row(q.b) = q.s * ra + q.c * rb;
            }
            break;
        }
    }

    Mat dense(int dim) const
    {
        Mat M = Mat::Identity(dim, dim);
        apply_left(M);
        return M;
    }

    OrthogonalGate gate(int dim) const { return {dense(dim), label}; }
};

inline Factor identity_permutation(int n, std::string label)
{
    Factor f;
    f.kind = Factor::Kind::permutation;
    f.label = std::move(label);
    f.src.resize(n);
    for (int p = 0; p < n; ++p)
        f.src[p] = p;
    return f;
}

// Composition: result applies `first` then `second`.
inline Factor compose_permutations(const Factor& second, const Factor& first, std::string label)
{
    Factor f = identity_permutation(static_cast<int>(first.src.size()), std::move(label));
    for (std::size_t p = 0; p < f.src.size(); ++p)
        f.src[p] = first.src[second.src[p]];
    return f;
}

// Apply a factor sequence (first applied first) to the identity.
inline Mat product_of(const std::vector<Factor>& seq, int dim)
{
    Mat M = Mat::Identity(dim, dim);
    for (const auto& f : seq)
        f.apply_left(M);
    return M;
}

// ---- generic exponential -----------------------------------------------

inline OrthogonalGate r_from_quadratic(const Mat& h, double alpha)
{
    if ((h + h.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("coefficient matrix must be antisymmetric");
    Mat A = 4.0 * alpha * h;
    return {A.exp(), "exp(4 alpha h)"};
}

// Coefficient matrix of the Bogoliubov generator of mode l (l >= 1).
inline Mat h_bogoliubov(const Spectrum& spec, int l)
{
    const int n = spec.n;
    const int b = 4 * r_l(n, l);
    Mat h = Mat::Zero(2 * n, 2 * n);
    const double c = -spec.theta[l] / 8.0;
    h(b, b + 3) = c;
    h(b + 3, b) = -c;
    h(b + 1, b + 2) = c;
    h(b + 2, b + 1) = -c;
    return h;
}

// ---- Bogoliubov ---------------------------------------------------------

inline Eigen::Matrix4d bogoliubov_block(double theta)
{
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    Eigen::Matrix4d B;
    B << c, 0, 0, -s,
         0, c, -s, 0,
         0, s, c, 0,
         s, 0, 0, c;
    return B;
}

// diag(1,-1,1,1,-1,...): B_0 = X_0 Z_1 commutes with x_0, x_2, x_3 only.
inline Factor r_bogoliubov_zero(int n)
{
    Factor f;
    f.kind = Factor::Kind::signs;
    f.label = "R_B0";
    f.d.assign(2 * n, -1.0);
    f.d[0] = f.d[2] = f.d[3] = 1.0;
    return f;
}

inline Factor r_bogoliubov_blocks(const Spectrum& spec)
{
    Factor f;
    f.kind = Factor::Kind::blocks;
    f.label = "R_B";
    for (int l = 1; l < spec.n / 2; ++l)
        f.blocks.emplace_back(4 * r_l(spec.n, l), bogoliubov_block(spec.theta[l]));
    return f;
}

// Factors of the Bogoliubov stage, first applied first.
inline std::vector<Factor> r_bogoliubov_factors(const Spectrum& spec, const ModelParams& p)
{
    std::vector<Factor> out;
    if (!p.above_critical())
        out.push_back(r_bogoliubov_zero(p.n));
    out.push_back(r_bogoliubov_blocks(spec));
    return out;
}

inline OrthogonalGate r_bogoliubov(const Spectrum& spec, const ModelParams& p)
{
    return {product_of(r_bogoliubov_factors(spec, p), 2 * p.n), "R_B"};
}

// Same gate through the diagonal factorisation V^dag D V.
inline CMat r_bogoliubov_factored(const Spectrum& spec, const ModelParams& p)
{
    const int n = p.n;
    const double h = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    Eigen::Matrix4cd V;
    V << 1, 0, 0, -i,
         0, 1, -i, 0,
         0, 1, i, 0,
         1, 0, 0, i;
    V *= h;
    CMat VB = CMat::Zero(2 * n, 2 * n), DB = CMat::Identity(2 * n, 2 * n);
    for (int q = 0; q < n / 2; ++q)
        VB.block<4, 4>(4 * q, 4 * q) = V;
    for (int l = 1; l < n / 2; ++l) {
        const int b = 4 * r_l(n, l);
        const cplx lo = std::polar(1.0, -spec.theta[l] / 2.0), hi = std::polar(1.0, spec.theta[l] / 2.0);
        DB(b, b) = DB(b + 1, b + 1) = lo;
        DB(b + 2, b + 2) = DB(b + 3, b + 3) = hi;
    }
    CMat R = VB.adjoint() * DB * VB;
    if (!p.above_critical())
        R = R * r_bogoliubov_zero(n).dense(2 * n).cast<cplx>();
    return R;
}

// ---- Fourier ----------------------------------------------------------

inline Eigen::Matrix4d fourier_block(double phi)
{
    const double h = 1.0 / std::sqrt(2.0);
    Eigen::Matrix4d RGt;
    RGt << 1, 0, -1, 0,
           0, 1, 0, -1,
           1, 0, 1, 0,
           0, 1, 0, 1;
    RGt *= h;
    const double a = std::numbers::pi * (1.0 + phi);
    Eigen::Matrix4d D = Eigen::Matrix4d::Identity();
    D(2, 2) = std::cos(a);
    D(2, 3) = -std::sin(a);
    D(3, 2) = std::sin(a);
    D(3, 3) = std::cos(a);
    return RGt * D;
}

inline Factor r_fourier_stage(int n, int s)
{
    const int m = ilog2(n);
    if (s < 0 || s >= m)
        throw std::out_of_range("Fourier stage out of range");
    Factor f;
    f.kind = Factor::Kind::blocks;
    f.label = "R_F^(" + std::to_string(s) + ")";
    for (int l = 0; l < n / 2; ++l)
        f.blocks.emplace_back(4 * l, fourier_block(fourier_phase(l, s, m)));
    return f;
}

// R_G^T V^dag D V with D = diag(1, 1, e^{i pi(1+phi)}, e^{-i pi(1+phi)}).
inline CMat r_fourier_factored(int n, int s)
{
    const int m = ilog2(n);
    const double h = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    Eigen::Matrix4d RGt;
    RGt << 1, 0, -1, 0,
           0, 1, 0, -1,
           1, 0, 1, 0,
           0, 1, 0, 1;
    RGt *= h;
    Eigen::Matrix4cd V = Eigen::Matrix4cd::Identity();
    V(2, 2) = h;
    V(2, 3) = i * h;
    V(3, 2) = h;
    V(3, 3) = -i * h;
    CMat R = CMat::Zero(2 * n, 2 * n);
    for (int l = 0; l < n / 2; ++l) {
        const double a = std::numbers::pi * (1.0 + fourier_phase(l, s, m));
        Eigen::Matrix4cd D = Eigen::Matrix4cd::Identity();
        D(2, 2) = std::polar(1.0, a);
        D(3, 3) = std::polar(1.0, -a);
        R.block<4, 4>(4 * l, 4 * l) = RGt.cast<cplx>() * V.adjoint() * D * V;
    }
    return R;
}

// ---- reorderings ------------------------------------------------------

inline Factor r_swap(int n, int j, int k)
{
    if (j == k || j < 0 || k < 0 || j >= n || k >= n)
        throw std::invalid_argument("r_swap needs distinct mode indices in range");
    Factor f = identity_permutation(n, "R_S_" + std::to_string(j) + "," + std::to_string(k));
    std::swap(f.src[j], f.src[k]);
    return f;
}

// Product of r_swap over a swap network.
inline Factor r_reorder_naive(const SwapNetwork& net, int n)
{
    Factor acc = identity_permutation(n, "R_" + net.label);
    for (auto [j, k] : net.swaps)
        acc = compose_permutations(r_swap(n, j, k), acc, acc.label);
    return acc;
}

// Swap of compressed qubits qa, qb (qubit i is bit m-1-i of the mode index).
inline Factor r_qubit_swap(int n, int qa, int qb, std::string label)
{
    const int m = ilog2(n);
    const int ba = m - 1 - qa, bb = m - 1 - qb;
    Factor f = identity_permutation(n, std::move(label));
    for (int p = 0; p < n; ++p)
        if (bit(p, ba) != bit(p, bb))
            f.src[p] = p ^ (1 << ba) ^ (1 << bb);
    return f;
}

inline Factor r_reorder(Reorder which, int n, int s = 0)
{
    const int m = ilog2(n);
    switch (which) {
    case Reorder::stage:
        if (s < 1 || s > m - 1)
            throw std::out_of_range("stage reordering needs 1 <= s <= m-1");
        return r_qubit_swap(n, s - 1, m - 1, "R_S^(" + std::to_string(s) + ")");
    case Reorder::first: {
        // R_S^(1) ... R_S^(m-1): R_S^(m-1) acts first
        Factor acc = identity_permutation(n, "R_S^(0)");
        for (int t = m - 1; t >= 1; --t)
            acc = compose_permutations(r_reorder(Reorder::stage, n, t), acc, acc.label);
        return acc;
    }
    case Reorder::last: {
        Factor acc = identity_permutation(n, "R_S^(m)");
        for (int t = 0; t < m / 2; ++t)
            acc = compose_permutations(r_qubit_swap(n, t, m - 1 - t, "R_T"), acc, acc.label);
        return acc;
    }
    case Reorder::bog: {
        // Controlled on compressed qubits 0 and m-1: |10> <- |01> with the
        // middle register complemented, |01> <- |10> with complement then +1.
        Factor f = identity_permutation(n, "R_S_Bog");
        const int top = m - 1;
        const int mid_mask = (n / 4) - 1;
        for (int p = 0; p < n; ++p) {
            const int hi = bit(p, top), lo = bit(p, 0);
            if (hi == lo)
                continue;
            const int mid = (p >> 1) & mid_mask;
            int src_mid = (~mid) & mid_mask;
            if (hi == 0)
                src_mid = (src_mid + 1) & mid_mask;
            f.src[p] = ((1 - hi) << top) | (src_mid << 1) | (1 - lo);
        }
        return f;
    }
    }
    throw std::logic_error("unknown reordering");
}

inline Factor transpose_permutation(const Factor& f, std::string label)
{
    Factor t = identity_permutation(static_cast<int>(f.src.size()), std::move(label));
    for (std::size_t p = 0; p < f.src.size(); ++p)
        t.src[f.src[p]] = static_cast<int>(p);
    return t;
}

// ---- full circuit ------------------------------------------------------

// All factors of R in application order.
inline std::vector<Factor> factors_r(const ModelParams& p)
{
    const Spectrum spec = dispersion(p);
    const int n = p.n, m = p.m;
    std::vector<Factor> seq;
    const Factor sb = r_reorder(Reorder::bog, n);
    seq.push_back(sb);
    for (auto& f : r_bogoliubov_factors(spec, p))
        seq.push_back(f);
    seq.push_back(transpose_permutation(sb, "R_S_Bog^T"));
    seq.push_back(r_reorder(Reorder::first, n));
    for (int s = 0; s < m; ++s) {
        seq.push_back(r_fourier_stage(n, s));
        if (s < m - 1)
            seq.push_back(r_reorder(Reorder::stage, n, s + 1));
    }
    seq.push_back(r_reorder(Reorder::last, n));
    return seq;
}

inline constexpr int kMaxCompressedN = 1 << 14;

inline OrthogonalGate assemble_r(const ModelParams& p)
{
    if (p.n > kMaxCompressedN)
        throw std::invalid_argument("n too large for dense compressed assembly");
    return {product_of(factors_r(p), 2 * p.n), "R"};
}

// Reference assembly by multiplying dense factor matrices.
inline OrthogonalGate assemble_r_dense(const ModelParams& p)
{
    Mat R = Mat::Identity(2 * p.n, 2 * p.n);
    for (const auto& f : factors_r(p))
        R = f.dense(2 * p.n) * R;
    return {R, "R (dense product)"};
}

// ---- excitations, quench, time evolution ------------------------------

// X_j flips the sign of every x_r with r > 2j.
inline Factor r_excitation(const Occupation& occ)
{
    const int n = static_cast<int>(occ.size());
    Factor f;
    f.kind = Factor::Kind::signs;
    f.label = "R_W";
    f.d.assign(2 * n, 1.0);
    for (int j = 0; j < n; ++j)
        if (occ[j])
            for (int r = 2 * j + 1; r < 2 * n; ++r)
                f.d[r] = -f.d[r];
    return f;
}

struct QuenchSchedule {
    double gmax = 10.0;
    double t = 1.0;
    long L = 100;

    static QuenchSchedule make(double gmax, double t, long L)
    {
        if (!(t > 0.0))
            throw std::invalid_argument("quench time must be positive");
        if (L < 1)
            throw std::invalid_argument("need at least one Trotter step");
        return {gmax, t, L};
    }
    // L = round(100 t), at least one step
    static QuenchSchedule standard(double gmax, double t, double steps_per_time = 100.0)
    {
        return make(gmax, t, std::max(1L, std::lround(steps_per_time * t)));
    }
    double step() const { return t / static_cast<double>(L + 1); }
    double g(long l) const { return gmax * (1.0 - static_cast<double>(l) / static_cast<double>(L)); }
};

// Field rotation R_0(t,l) on pairs (2j, 2j+1).
inline Factor r_quench_field(int n, double g, double dt)
{
    Factor f;
    f.kind = Factor::Kind::rotations;
    f.label = "R_0";
    const double c = std::cos(2.0 * g * dt), s = std::sin(2.0 * g * dt);
    for (int j = 0; j < n; ++j)
        f.rot.push_back({2 * j, 2 * j + 1, c, s});
    return f;
}

// Coupling rotation R_1(t) on the open-chain bonds (2j+1, 2j+2).
inline Factor r_quench_coupling(int n, double dt)
{
    Factor f;
    f.kind = Factor::Kind::rotations;
    f.label = "R_1";
    const double c = std::cos(2.0 * dt), s = std::sin(2.0 * dt);
    for (int j = 0; j + 1 < n; ++j)
        f.rot.push_back({2 * j + 1, 2 * j + 2, c, s});
    return f;
}

// Dense R_Q; step l applies R_1 then R_0(l), for l = 0..L.
inline OrthogonalGate r_quench(int n, const QuenchSchedule& q)
{
    Mat R = Mat::Identity(2 * n, 2 * n);
    const double dt = q.step();
    const Factor c = r_quench_coupling(n, dt);
    for (long l = 0; l <= q.L; ++l) {
        c.apply_left(R);
        r_quench_field(n, q.g(l), dt).apply_left(R);
    }
    return {R, "R_Q"};
}

inline OrthogonalGate r_time_evolution(const Spectrum& spec, double t)
{
    const int n = spec.n;
    Mat R = Mat::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        const double c = std::cos(spec.eps[j] * t), s = std::sin(spec.eps[j] * t);
        R(2 * j, 2 * j) = c;
        R(2 * j, 2 * j + 1) = s;
        R(2 * j + 1, 2 * j) = -s;
        R(2 * j + 1, 2 * j + 1) = c;
    }
    return {R, "R_W(t)"};
}

// ---- gate counting ------------------------------------------------------

// Elementary cost of a single-qubit gate with c controls (linear
// decomposition with one ancilla-free chain).
inline long controlled_cost(int c)
{
    if (c <= 1)
        return 1;
    return 8L * (c - 1) - 2; // 6 for two controls, 8 more per extra control
}

struct GateCostReport {
    int n = 0, m = 0;
    long s_bog = 0;      // each of R_S_Bog and its transpose
    long bogoliubov = 0; // V_B, D_B, V_B^dag and R_B0
    long s0 = 0, sm = 0;
    std::vector<long> stage;   // R_S^(s), s = 1..m-1
    std::vector<long> fourier; // R_F^(s), s = 0..m-1
    long total = 0;

    long fourier_part() const
    {
        long f = s0 + sm;
        for (long x : stage)
            f += x;
        for (long x : fourier)
            f += x;
        return f;
    }
};

inline GateCostReport gate_cost(const ModelParams& p)
{
    GateCostReport r;
    r.n = p.n;
    r.m = p.m;
    const int m = p.m;
    const int q = m - 2; // middle register of the S_Bog permutation
    // complement: q CNOT-type gates controlled on the |10> / |01> projector;
    // increment: one X with k controls for k = 0..q-1, plus the two control qubits
    long sb = 2; // basis change on qubits 0, m-1
    sb += 2L * q * controlled_cost(2);
    for (int k = 0; k < q; ++k)
        sb += controlled_cost(k + 2);
    r.s_bog = sb;
    r.bogoliubov = 2 + static_cast<long>(p.n / 2 - 1) * controlled_cost(m - 1) + (p.above_critical() ? 0 : 1);
    for (int s = 1; s <= m - 1; ++s)
        r.stage.push_back(1);
    r.s0 = m - 1;
    r.sm = m / 2;
    for (int s = 0; s < m; ++s)
        r.fourier.push_back(3 + 2L * s * controlled_cost(2));
    r.total = 2 * r.s_bog + r.bogoliubov + r.fourier_part();
    return r;
}

} // namespace xyc
