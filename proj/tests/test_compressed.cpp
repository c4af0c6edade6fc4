#include <cmath>

#include <gtest/gtest.h>

#include "xyc/compressed.hpp"
#include "xyc/oracle.hpp"

using namespace xyc;

namespace {
double maxabs(const Mat& a) { return a.cwiseAbs().maxCoeff(); }
} // namespace

TEST(Quadratic, ZeroGivesIdentity)
{
    const Mat h = Mat::Zero(8, 8);
    EXPECT_LT(maxabs(r_from_quadratic(h, 0.3).R - Mat::Identity(8, 8)), 1e-15);
}

TEST(Quadratic, GivensGenerator)
{
    Mat h = Mat::Zero(6, 6);
    h(1, 4) = 0.7;
    h(4, 1) = -0.7;
    const auto R = r_from_quadratic(h, 0.25).R;
    const double a = 4.0 * 0.25 * 0.7;
    EXPECT_NEAR(R(1, 1), std::cos(a), 1e-14);
    EXPECT_NEAR(R(1, 4), std::sin(a), 1e-14);
    EXPECT_NEAR(R(4, 1), -std::sin(a), 1e-14);
    EXPECT_NEAR(R(0, 0), 1.0, 1e-15);
}

TEST(Quadratic, RejectsSymmetric)
{
    Mat h = Mat::Zero(4, 4);
    h(0, 1) = h(1, 0) = 1.0;
    EXPECT_THROW(r_from_quadratic(h, 1.0), std::invalid_argument);
}

TEST(Quadratic, MatchesDenseExponential)
{
    // e^{-i alpha H} with H = i sum h x x conjugates Majoranas by e^{4 alpha h}
    Mat h = Mat::Zero(8, 8);
    h(0, 3) = 0.4;
    h(2, 5) = -0.3;
    h(1, 6) = 0.25;
    h = (h - h.transpose()).eval();
    const double alpha = 0.7;
    const CMat U = expm_hermitian(quadratic_operator(h), alpha);
    EXPECT_LT(maxabs(orthogonal_from_unitary(U) - r_from_quadratic(h, alpha).R), 1e-12);
}

TEST(Bogoliubov, BlockEqualsExponential)
{
    const auto s = dispersion(ModelParams::make(8, 0.7, 0.3));
    for (int l = 1; l < 4; ++l) {
        Factor f;
        f.kind = Factor::Kind::blocks;
        f.blocks.emplace_back(4 * r_l(8, l), bogoliubov_block(s.theta[l]));
        EXPECT_LT(maxabs(r_from_quadratic(h_bogoliubov(s, l), 1.0).R - f.dense(16)), 1e-12);
    }
}

TEST(Bogoliubov, DiagonalFactorisation)
{
    for (double g : {0.5, 1.5})
        for (int n : {4, 8, 16}) {
            const auto p = ModelParams::make(n, g, 0.2);
            const auto s = dispersion(p);
            const CMat f = r_bogoliubov_factored(s, p);
            EXPECT_LT(f.imag().cwiseAbs().maxCoeff(), 1e-14);
            EXPECT_LT(maxabs(f.real() - r_bogoliubov(s, p).R), 1e-14);
        }
}

TEST(Bogoliubov, DeterminantSign)
{
    for (double g : {0.5, 1.0, 1.2, 2.0}) {
        const auto p = ModelParams::make(8, g, 0.2);
        const auto R = r_bogoliubov(dispersion(p), p);
        EXPECT_EQ(R.det_sign(), p.above_critical() ? 1 : -1);
        EXPECT_LT(R.orthogonality_error(), 1e-14);
    }
}

TEST(Bogoliubov, ZeroAnglesGiveIdentity)
{
    Spectrum s;
    s.n = 8;
    s.theta.assign(8, 0.0);
    EXPECT_LT(maxabs(r_bogoliubov_blocks(s).dense(16) - Mat::Identity(16, 16)), 1e-15);
}

TEST(Fourier, DiagonalFactorisation)
{
    for (int n : {4, 8, 16})
        for (int s = 0; s < ilog2(n); ++s) {
            const CMat f = r_fourier_factored(n, s);
            EXPECT_LT(f.imag().cwiseAbs().maxCoeff(), 1e-14);
            EXPECT_LT(maxabs(f.real() - r_fourier_stage(n, s).dense(2 * n)), 1e-14);
            EXPECT_LT(r_fourier_stage(n, s).gate(2 * n).orthogonality_error(), 1e-12);
        }
    EXPECT_THROW(r_fourier_stage(8, 3), std::out_of_range);
}

TEST(Swap, Properties)
{
    const auto s = r_swap(8, 2, 5).dense(16);
    EXPECT_LT(maxabs(s * s - Mat::Identity(16, 16)), 1e-15);
    EXPECT_NEAR(s.determinant(), 1.0, 1e-12);
    EXPECT_THROW(r_swap(8, 3, 3), std::invalid_argument);
}

TEST(Swap, EqualsAdjacentProduct)
{
    // (2,5) as the palindrome 2,3,4,3,2 of adjacent exchanges
    Factor acc = identity_permutation(8, "acc");
    for (int p : adjacent_swaps(2, 5))
        acc = compose_permutations(r_swap(8, p, p + 1), acc, "acc");
    EXPECT_LT(maxabs(acc.dense(16) - r_swap(8, 2, 5).dense(16)), 1e-15);
}

TEST(Swap, MatchesDenseNetwork)
{
    for (auto [j, k] : {std::pair{0, 3}, std::pair{1, 2}, std::pair{0, 1}}) {
        const CMat U = network_unitary(4, SwapNetwork{"s", {{j, k}}});
        EXPECT_LT(maxabs(orthogonal_from_unitary(U) - r_swap(4, j, k).dense(8)), 1e-14);
    }
}

class Compaction : public ::testing::TestWithParam<int> {};

TEST_P(Compaction, CompactEqualsNaive)
{
    const int n = GetParam();
    const int m = ilog2(n);
    for (auto w : {Reorder::bog, Reorder::first, Reorder::last})
        EXPECT_LE(maxabs(r_reorder(w, n).dense(2 * n) - r_reorder_naive(reorder_circuit(w, n), n).dense(2 * n)), 1e-12);
    for (int s = 1; s < m; ++s)
        EXPECT_LE(maxabs(r_reorder(Reorder::stage, n, s).dense(2 * n) -
                         r_reorder_naive(reorder_circuit(Reorder::stage, n, s), n).dense(2 * n)),
                  1e-12);
}

INSTANTIATE_TEST_SUITE_P(Sizes, Compaction, ::testing::Values(4, 8, 16, 32, 64));

TEST(Reorder, LastIsProductOfQubitSwaps)
{
    const int n = 32, m = 5;
    Factor acc = identity_permutation(n, "acc");
    for (int t = 0; t < m / 2; ++t)
        acc = compose_permutations(r_qubit_swap(n, t, m - 1 - t, "T"), acc, "acc");
    EXPECT_EQ(acc.src, r_reorder(Reorder::last, n).src);
}

class Compression : public ::testing::TestWithParam<std::tuple<int, double, double>> {};

TEST_P(Compression, MajoranaConjugation)
{
    const auto [n, g, d] = GetParam();
    const auto p = ModelParams::make(n, g, d);
    const auto R = assemble_r(p);
    EXPECT_LT(maxabs(orthogonal_from_unitary(assemble_u(p)) - R.R), 1e-9);
    EXPECT_EQ(R.det_sign(), p.above_critical() ? 1 : -1);
    EXPECT_LT(maxabs(assemble_r_dense(p).R - R.R), 1e-13);
}

INSTANTIATE_TEST_SUITE_P(Grid, Compression,
                         ::testing::Combine(::testing::Values(4, 8), ::testing::Values(0.5, 1.2, 2.0),
                                            ::testing::Values(0.0, 0.2, 1.0)));

TEST(Compression, HamiltonianCoefficients)
{
    // R h_a R^T = h_c with h_a the mode-basis and h_c the spin-basis coefficients
    const int n = 16;
    const auto p = ModelParams::make(n, 0.9, 0.4);
    const auto s = dispersion(p);
    Mat ha = Mat::Zero(2 * n, 2 * n), hc = Mat::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        ha(2 * j, 2 * j + 1) = s.eps[j] / 4.0;
        ha(2 * j + 1, 2 * j) = -s.eps[j] / 4.0;
    }
    auto add = [&](int a, int b, double c) {
        hc(a, b) += c / 2.0;
        hc(b, a) -= c / 2.0;
    };
    for (int j = 0; j < n; ++j) {
        add(2 * j, 2 * j + 1, p.g);
        add(2 * j + 1, (2 * j + 2) % (2 * n), 1.0);
        add(2 * j, (2 * j + 3) % (2 * n), -p.delta);
    }
    const Mat R = assemble_r(p).R;
    EXPECT_LT(maxabs(R * ha * R.transpose() - hc), 1e-12);
}

TEST(Assembly, OrthogonalAtScale)
{
    for (int n : {16, 64, 256})
        EXPECT_LT(assemble_r(ModelParams::make(n, 0.8, 0.3)).orthogonality_error(), 1e-10);
}

TEST(Excitation, MatchesDenseConjugation)
{
    for (std::uint64_t k = 0; k < 16; ++k) {
        const auto occ = occupation_from_index(k, 4);
        const Mat W = r_excitation(occ).dense(8);
        EXPECT_LT(maxabs(orthogonal_from_unitary(excitation_operator(4, occ)) - W), 1e-14);
        EXPECT_LT(maxabs(W * W - Mat::Identity(8, 8)), 1e-15);
    }
    EXPECT_LT(maxabs(r_excitation(occupation_from_index(0, 4)).dense(8) - Mat::Identity(8, 8)), 1e-15);
}

TEST(Excitation, HighestModeFlipsTail)
{
    // X_{n-1} anticommutes only with x_{2n-1}
    const auto d = r_excitation(occupation_from_index(0b1000, 4)).d;
    for (int r = 0; r < 7; ++r)
        EXPECT_EQ(d[r], 1.0);
    EXPECT_EQ(d[7], -1.0);
    const auto d0 = r_excitation(occupation_from_index(0b0001, 4)).d;
    EXPECT_EQ(d0[0], 1.0);
    for (int r = 1; r < 8; ++r)
        EXPECT_EQ(d0[r], -1.0);
}

TEST(Quench, Schedule)
{
    const auto q = QuenchSchedule::standard(10.0, 3.0);
    EXPECT_EQ(q.L, 300);
    EXPECT_DOUBLE_EQ(q.step(), 3.0 / 301.0);
    EXPECT_DOUBLE_EQ(q.g(0), 10.0);
    EXPECT_DOUBLE_EQ(q.g(q.L), 0.0);
    EXPECT_THROW(QuenchSchedule::make(1.0, 0.0, 10), std::invalid_argument);
    EXPECT_THROW(QuenchSchedule::make(1.0, 1.0, 0), std::invalid_argument);
}

TEST(Quench, FactorsAreRotations)
{
    const auto f0 = r_quench_field(8, 2.0, 0.1).gate(16);
    const auto f1 = r_quench_coupling(8, 0.1).gate(16);
    EXPECT_LT(f0.orthogonality_error(), 1e-14);
    EXPECT_LT(f1.orthogonality_error(), 1e-14);
    EXPECT_NEAR(f1.R(0, 0), 1.0, 1e-15); // x_0 and x_15 are untouched on the open chain
    EXPECT_NEAR(f1.R(15, 15), 1.0, 1e-15);
}

TEST(Quench, ShortTimeNearIdentity)
{
    const auto q = QuenchSchedule::make(1.0, 1e-6, 10);
    EXPECT_LT(maxabs(r_quench(8, q).R - Mat::Identity(16, 16)), 1e-4);
}

TEST(TimeEvolution, Blocks)
{
    const auto s = dispersion(ModelParams::make(8, 0.8, 0.2));
    EXPECT_LT(maxabs(r_time_evolution(s, 0.0).R - Mat::Identity(16, 16)), 1e-15);
    const double period = 2.0 * std::numbers::pi / s.eps[3];
    const Mat a = r_time_evolution(s, 0.4).R, b = r_time_evolution(s, 0.4 + period).R;
    EXPECT_LT((a.block<2, 2>(6, 6) - b.block<2, 2>(6, 6)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(TimeEvolution, MatchesDenseConjugation)
{
    const auto p = ModelParams::make(4, 0.8, 0.2);
    const auto s = dispersion(p);
    const Mat R = assemble_r(p).R;
    const CMat H = hamiltonian_spin(p);
    for (double t : {0.1, 1.0, 5.0}) {
        const Mat Rt = R * r_time_evolution(s, t).R * R.transpose();
        EXPECT_LT(maxabs(orthogonal_from_unitary(expm_hermitian(H, t)) - Rt), 1e-8);
    }
}

TEST(TimeEvolution, ProductFormMatchesModeHamiltonian)
{
    const auto s = dispersion(ModelParams::make(4, 0.8, 0.2));
    EXPECT_LT((w_product(s, 0.7) - expm_hermitian(hamiltonian_modes(s), 0.7)).norm(), 1e-12);
    EXPECT_LT(maxabs(orthogonal_from_unitary(w_product(s, 0.7)) - r_time_evolution(s, 0.7).R), 1e-12);
}

TEST(GateCost, ReorderingCountsAndScaling)
{
    double prev = 0.0;
    for (int n = 16; n <= 1024; n *= 2) {
        const auto r = gate_cost(ModelParams::make(n, 0.8, 0.2));
        EXPECT_EQ(r.s0, r.m - 1);
        EXPECT_EQ(r.sm, r.m / 2);
        EXPECT_EQ(r.total, 2 * r.s_bog + r.bogoliubov + r.fourier_part());
        const double ratio = double(r.total) / (double(n) * r.m);
        EXPECT_LT(ratio, 8.0);
        prev = ratio;
    }
    EXPECT_GT(prev, 0.0);
}

TEST(GateCost, FourierPartIsPolylog)
{
    // Fourier stages and reorderings alone grow like m^2
    for (int n = 16; n <= 1024; n *= 2) {
        const auto r = gate_cost(ModelParams::make(n, 0.8, 0.2));
        EXPECT_LE(r.fourier_part(), 8L * r.m * r.m);
    }
}
