#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "dense.hpp"
#include "model.hpp"

namespace xyc {

struct TwoQubitGate {
    Eigen::Matrix4cd G;
    int p = 0; // acts on qubits (p, p+1)
    std::string label;
    bool non_matchgate = false;
};

// Nonzero pattern of A (+) B with det A = det B.
inline bool is_matchgate(const Eigen::Matrix4cd& G, double tol = 1e-12)
{
    static constexpr int zeros[8][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}};
    for (auto& z : zeros)
        if (std::abs(G(z[0], z[1])) > tol)
            return false;
    const cplx detA = G(0, 0) * G(3, 3) - G(0, 3) * G(3, 0);
    const cplx detB = G(1, 1) * G(2, 2) - G(1, 2) * G(2, 1);
    return std::abs(detA - detB) <= tol;
}

inline bool is_unitary(const Eigen::Matrix4cd& G, double tol = 1e-12)
{
    return (G.adjoint() * G - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() <= tol;
}

// Mixes modes l and n-l; placed on qubits (2 r_l, 2 r_l + 1).
inline TwoQubitGate bogoliubov_gate(const Spectrum& spec, int l)
{
    if (l < 1 || l >= spec.n / 2)
        throw std::out_of_range("Bogoliubov mode index must lie in [1, n/2)");
    const double u = spec.u[l], v = spec.v[l];
    const cplx iv(0.0, -v);
    Eigen::Matrix4cd G;
    G << u, 0, 0, iv,
         0, 1, 0, 0,
         0, 0, 1, 0,
         iv, 0, 0, u;
    return {G, 2 * r_l(spec.n, l), "B_" + std::to_string(l), false};
}

inline TwoQubitGate bogoliubov_zero_gate(const ModelParams& p)
{
    if (p.above_critical())
        return {Eigen::Matrix4cd::Identity(), 0, "B_0", false};
    // X on qubit 0, Z on qubit 1
    Eigen::Matrix4cd G = Eigen::Matrix4cd::Zero();
    G(2, 0) = 1.0;
    G(3, 1) = -1.0;
    G(0, 2) = 1.0;
    G(1, 3) = -1.0;
    return {G, 0, "B_0", true};
}

inline TwoQubitGate fourier_gate(int l, int s, int m)
{
    if (l < 0 || l >= (1 << (m - 1)) || s < 0 || s >= m)
        throw std::out_of_range("Fourier gate index out of range");
    const cplx a = std::polar(1.0, std::numbers::pi * fourier_phase(l, s, m));
    const double h = 1.0 / std::sqrt(2.0);
    Eigen::Matrix4cd G;
    G << 1, 0, 0, 0,
         0, -a * h, h, 0,
         0, a * h, h, 0,
         0, 0, 0, -a;
    return {G, 2 * l, "F_" + std::to_string(l) + "^(" + std::to_string(s) + ")", false};
}

inline TwoQubitGate fermionic_swap(int p)
{
    Eigen::Matrix4cd G;
    G << 1, 0, 0, 0,
         0, 0, 1, 0,
         0, 1, 0, 0,
         0, 0, 0, -1;
    return {G, p, "fswap_" + std::to_string(p), false};
}

// ---- reordering networks ------------------------------------------------

enum class Reorder { bog, stage, first, last };

// Transpositions of qubit positions in application order.
struct SwapNetwork {
    std::string label;
    std::vector<std::pair<int, int>> swaps;
};

// Pairs exchanged by S^(s), 1 <= s <= m-1: bits 0 and m-s of the position.
inline std::vector<std::pair<int, int>> omega_stage(int n, int s)
{
    const int m = ilog2(n);
    std::vector<std::pair<int, int>> out;
    for (int p = 0; p < n; ++p)
        if (bit(p, 0) == 1 && bit(p, m - s) == 0)
            out.emplace_back(p, p ^ 1 ^ (1 << (m - s)));
    return out;
}

// Pairs exchanged by T^(t): bits t and m-1-t.
inline std::vector<std::pair<int, int>> omega_t(int n, int t)
{
    const int m = ilog2(n);
    std::vector<std::pair<int, int>> out;
    for (int p = 0; p < n; ++p)
        if (bit(p, t) == 1 && bit(p, m - 1 - t) == 0)
            out.emplace_back(p, p ^ (1 << t) ^ (1 << (m - 1 - t)));
    return out;
}

inline SwapNetwork reorder_circuit(Reorder which, int n, int s = 0)
{
    const int m = ilog2(n);
    SwapNetwork net;
    switch (which) {
    case Reorder::bog:
        net.label = "S_Bog";
        for (int j = n / 2 - 1; j >= 1; --j)
            net.swaps.emplace_back(sigma(n, 0), sigma(n, j));
        break;
    case Reorder::stage:
        if (s < 1 || s > m - 1)
            throw std::out_of_range("stage reordering needs 1 <= s <= m-1");
        net.label = "S^(" + std::to_string(s) + ")";
        net.swaps = omega_stage(n, s);
        break;
    case Reorder::first:
        net.label = "S^(0)";
        for (int t = m - 1; t >= 1; --t)
            for (auto pr : omega_stage(n, t))
                net.swaps.push_back(pr);
        break;
    case Reorder::last:
        net.label = "S^(m)";
        for (int t = 0; t < m / 2; ++t)
            for (auto pr : omega_t(n, t))
                net.swaps.push_back(pr);
        break;
    }
    return net;
}

// Index vector after applying the network: position p holds mode mu[p].
inline std::vector<int> apply_network(const SwapNetwork& net, std::vector<int> mu)
{
    for (auto [j, k] : net.swaps)
        std::swap(mu[j], mu[k]);
    return mu;
}

inline std::vector<int> lambda_bog(int n)
{
    std::vector<int> lam(n);
    lam[0] = 0;
    lam[1] = n / 2;
    for (int l = 1; l < n / 2; ++l) {
        lam[2 * r_l(n, l)] = l;
        lam[2 * r_l(n, l) + 1] = n - l;
    }
    return lam;
}

// Ordering before Fourier stage s: pair l holds (r_ls, r_ls + 2^(m-s-1)).
inline std::vector<int> lambda_stage(int n, int s)
{
    const int m = ilog2(n);
    const int b = m - s - 1;
    std::vector<int> lam(n);
    for (int l = 0; l < n / 2; ++l) {
        const int r = ((l >> b) << (b + 1)) | (l & ((1 << b) - 1));
        lam[2 * l] = r;
        lam[2 * l + 1] = r + (1 << b);
    }
    return lam;
}

inline std::vector<int> bit_reversal(int n)
{
    const int m = ilog2(n);
    std::vector<int> out(n);
    for (int p = 0; p < n; ++p) {
        int r = 0;
        for (int b = 0; b < m; ++b)
            r |= bit(p, b) << (m - 1 - b);
        out[p] = r;
    }
    return out;
}

// Transposition of positions j < k as adjacent fermionic swaps.
inline std::vector<int> adjacent_swaps(int j, int k)
{
    if (j > k)
        std::swap(j, k);
    std::vector<int> seq;
    for (int p = j; p < k; ++p)
        seq.push_back(p);
    for (int p = k - 2; p >= j; --p)
        seq.push_back(p);
    return seq;
}

// ---- dense assembly ----------------------------------------------------

// U <- G U for a gate on qubits (p, p+1).
inline void apply_gate_left(CMat& U, const TwoQubitGate& g)
{
    const long long dim = U.rows();
    const long long bp = 1LL << g.p, bq = 1LL << (g.p + 1);
    for (long long base = 0; base < dim; ++base) {
        if (base & (bp | bq))
            continue;
        const long long idx[4] = {base, base | bq, base | bp, base | bp | bq};
        for (long long c = 0; c < U.cols(); ++c) {
            cplx in[4], out[4];
            for (int r = 0; r < 4; ++r)
                in[r] = U(idx[r], c);
            for (int r = 0; r < 4; ++r)
                out[r] = g.G(r, 0) * in[0] + g.G(r, 1) * in[1] + g.G(r, 2) * in[2] + g.G(r, 3) * in[3];
            for (int r = 0; r < 4; ++r)
                U(idx[r], c) = out[r];
        }
    }
}

inline std::vector<TwoQubitGate> network_gates(const SwapNetwork& net)
{
    std::vector<TwoQubitGate> out;
    for (auto [j, k] : net.swaps)
        for (int p : adjacent_swaps(j, k))
            out.push_back(fermionic_swap(p));
    for (auto& g : out)
        g.label = net.label + ":" + g.label;
    return out;
}

inline std::vector<TwoQubitGate> inverse_gates(std::vector<TwoQubitGate> gates)
{
    std::reverse(gates.begin(), gates.end());
    for (auto& g : gates) {
        g.G = g.G.adjoint().eval();
        g.label += "^dag";
    }
    return gates;
}

// Every gate of U in application order (first applied first).
inline std::vector<TwoQubitGate> circuit_u(const ModelParams& p)
{
    const Spectrum spec = dispersion(p);
    const int n = p.n, m = p.m;
    std::vector<TwoQubitGate> seq;
    auto append = [&seq](const std::vector<TwoQubitGate>& gs) { seq.insert(seq.end(), gs.begin(), gs.end()); };

    const auto sbog = network_gates(reorder_circuit(Reorder::bog, n));
    append(sbog);
    seq.push_back(bogoliubov_zero_gate(p));
    for (int l = 1; l < n / 2; ++l)
        seq.push_back(bogoliubov_gate(spec, l));
    append(inverse_gates(sbog));
    append(network_gates(reorder_circuit(Reorder::first, n)));
    for (int s = 0; s < m; ++s) {
        for (int l = 0; l < n / 2; ++l)
            seq.push_back(fourier_gate(l, s, m));
        if (s < m - 1)
            append(network_gates(reorder_circuit(Reorder::stage, n, s + 1)));
    }
    append(network_gates(reorder_circuit(Reorder::last, n)));
    return seq;
}

inline CMat assemble_gates(int n, const std::vector<TwoQubitGate>& gates)
{
    require_dense(n);
    CMat U = CMat::Identity(1LL << n, 1LL << n);
    for (const auto& g : gates)
        apply_gate_left(U, g);
    return U;
}

inline CMat assemble_u(const ModelParams& p)
{
    require_dense(p.n);
    return assemble_gates(p.n, circuit_u(p));
}

inline CMat network_unitary(int n, const SwapNetwork& net) { return assemble_gates(n, network_gates(net)); }

// Product of X_l over excited modes; maps |0..0> to the occupation basis state.
inline CMat excitation_operator(int n, const Occupation& occ)
{
    std::string w(n, 'I');
    for (int l = 0; l < n; ++l)
        if (occ[l])
            w[l] = 'X';
    return pauli_string(w);
}

inline CMat excitation_operator(int n, std::uint64_t k) { return excitation_operator(n, occupation_from_index(k, n)); }

} // namespace xyc
