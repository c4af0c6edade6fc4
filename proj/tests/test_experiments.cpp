#include <cmath>

#include <gtest/gtest.h>

#include "xyc/experiments.hpp"
#include "xyc/oracle.hpp"
#include "xyc/verify.hpp"

using namespace xyc;

TEST(Grids, Spacing)
{
    const auto t = default_quench_times();
    ASSERT_EQ(t.size(), 12u);
    EXPECT_EQ(t.front(), 1.0);
    EXPECT_EQ(t.back(), 300.0);
    EXPECT_NEAR(t[1] / t[0], t[6] / t[5], 1e-12);
    const auto T = default_temperatures();
    ASSERT_EQ(T.size(), 10u);
    EXPECT_NEAR(T[9], 0.9, 1e-15);
}

TEST(Magnetization, SweepShapeAndLimits)
{
    const auto t = magnetization_sweep(8, 0.2, {0.5, 1.0, 1000.0}, {0.0, 0.5});
    EXPECT_EQ(t.rows.size(), 6u);
    EXPECT_EQ(t.columns, (std::vector<std::string>{"n", "delta", "g", "T", "magnetization"}));
    EXPECT_NEAR(t.rows[4][4], 1.0, 1e-3);
}

TEST(Magnetization, JumpAtCriticalPoint)
{
    const auto gs = linspace(1.1, 1.3, 21);
    const auto t = magnetization_sweep(8, 0.2, gs, {0.0, 0.5});
    double cold = 0.0, warm = 0.0;
    for (std::size_t i = 1; i < gs.size(); ++i) {
        cold = std::max(cold, std::abs(t.rows[2 * i][4] - t.rows[2 * i - 2][4]));
        warm = std::max(warm, std::abs(t.rows[2 * i + 1][4] - t.rows[2 * i - 1][4]));
    }
    EXPECT_GT(cold, 0.1);
    EXPECT_LT(warm, 0.5 * cold);
}

TEST(Excited, GroundTraceEqualsZeroTemperature)
{
    const std::vector<double> gs{0.4, 0.7, 1.6, 2.5};
    const auto e = excited_magnetization(4, 0.2, gs, {0, 5});
    const auto m = magnetization_sweep(4, 0.2, gs, {0.0});
    EXPECT_EQ(e.rows.size(), 8u);
    for (std::size_t i = 0; i < gs.size(); ++i) {
        EXPECT_NEAR(e.rows[2 * i][5], m.rows[i][4], 1e-12);
        EXPECT_DOUBLE_EQ(e.rows[2 * i][3], 1.0 / gs[i]);
    }
}

TEST(Excited, AllTracesForEightSpins)
{
    std::vector<std::uint64_t> ks(256);
    for (int k = 0; k < 256; ++k)
        ks[k] = k;
    const auto e = excited_magnetization(8, 0.2, {0.5, 2.0}, ks);
    EXPECT_EQ(e.rows.size(), 512u);
}

TEST(Excited, MatchesDenseEigenstates)
{
    const auto p = ModelParams::make(4, 0.7, 0.2);
    const CMat U = assemble_u(p);
    const auto e = excited_magnetization(4, 0.2, {0.7}, {1, 6, 11});
    const CMat M = dense_observable(observable_magnetization(4));
    for (std::size_t i = 0; i < 3; ++i) {
        const auto k = static_cast<std::uint64_t>(e.rows[i][4]);
        EXPECT_NEAR(e.rows[i][5], expectation_dense(dense_eigenstate(U, occupation_from_index(k, 4)), M), 1e-12);
    }
}

TEST(Quench, KinkDensityMatchesDenseMatrixPath)
{
    const int n = 8;
    const double t = 0.7;
    const QuenchOptions o{4.0, 100.0, 0};
    const auto init = quench_thermal(n, o.gmax, 0.3);
    const auto r = quench_propagate(n, t, {init}, o);
    const auto q = QuenchSchedule::standard(o.gmax, t);
    const auto p = ModelParams::make(n, o.gmax, 0.0);
    const Mat R = r_quench(n, q).R * assemble_r(p).R;
    const double K = expectation(R, thermal_state(dispersion(p), 0.3), observable_kinks(n));
    EXPECT_NEAR(r.nu[0], 0.5 * (1.0 - K), 1e-12);
}

TEST(Quench, MatchesDenseOracle)
{
    const int n = 4;
    const QuenchOptions o{3.0, 100.0, 0};
    const auto r = quench_propagate(n, 1.0, {quench_thermal(n, 3.0, 0.0)}, o);
    const auto dq = quench_dense(n, QuenchSchedule::standard(3.0, 1.0), gibbs(hamiltonian_spin(ModelParams::make(n, 3.0, 0.0)), 0.0));
    EXPECT_NEAR(r.nu[0], 0.5 * (1.0 - expectation_dense(dq, dense_observable(observable_kinks(n)))), 1e-8);
}

TEST(Quench, TraceStartsAtInitialState)
{
    const int n = 16;
    const QuenchOptions o{10.0, 100.0, 11};
    const auto init = quench_thermal(n, 10.0, 0.0);
    const auto r = quench_propagate(n, 0.5, {init}, o);
    ASSERT_EQ(r.trace_g.size(), 11u);
    EXPECT_DOUBLE_EQ(r.trace_g.front(), 10.0);
    EXPECT_DOUBLE_EQ(r.trace_g.back(), 0.0);
    EXPECT_DOUBLE_EQ(r.trace[0].back(), r.nu[0]);
    // the strong-field ground state has almost no X correlations
    const auto p = ModelParams::make(n, 10.0, 0.0);
    const double K0 = expectation(assemble_r(p), thermal_state(dispersion(p), 0.0), observable_kinks(n));
    EXPECT_NEAR(0.5 * (1.0 - K0), 0.5, 0.05);
}

TEST(Quench, SlowerQuenchesLeaveFewerKinks)
{
    const auto run = quench_run(32, {1.0, 4.0, 16.0}, {quench_thermal(32, 10.0, 0.0)});
    const auto nu = endpoints(run, 0);
    EXPECT_GT(nu[0], nu[1]);
    EXPECT_GT(nu[1], nu[2]);
}

TEST(Quench, Deterministic)
{
    const auto a = quench_run(16, {1.0, 2.0}, {quench_thermal(16, 10.0, 0.5)});
    const auto b = quench_run(16, {1.0, 2.0}, {quench_thermal(16, 10.0, 0.5)});
    EXPECT_TRUE(a == b);
}

TEST(Quench, OccupationField)
{
    // at g = 0 every mode has energy 2
    const auto q = quench_thermal(16, 10.0, 2.0, 0.0);
    for (double b : q.blocks)
        EXPECT_NEAR(b, std::tanh(0.5), 1e-14);
    const auto lit = quench_thermal(16, 10.0, 2.0);
    for (double b : lit.blocks)
        EXPECT_GT(b, 0.99);
}

TEST(Fit, ExactPowerLaw)
{
    const auto ts = default_quench_times();
    std::vector<double> nu;
    for (double t : ts)
        nu.push_back(0.3 * std::pow(t, -0.5));
    const auto f = kz_fit(ts, nu);
    EXPECT_NEAR(f.p, 0.5, 1e-12);
    EXPECT_NEAR(f.intercept, std::log(0.3), 1e-12);
    EXPECT_EQ(f.count, 5);
    EXPECT_EQ(f.t_min, ts[6]);
    EXPECT_EQ(f.t_max, ts[10]);
    EXPECT_LT(f.rms, 1e-12);
}

TEST(Fit, ScaleInvariance)
{
    const std::vector<double> ts{1, 2, 3, 5, 8, 13};
    std::vector<double> nu{0.3, 0.25, 0.2, 0.18, 0.15, 0.1}, scaled;
    for (double v : nu)
        scaled.push_back(7.0 * v);
    const FitWindow w{1, 6};
    EXPECT_NEAR(kz_fit(ts, nu, w).p, kz_fit(ts, scaled, w).p, 1e-12);
}

TEST(Fit, RejectsShortWindow)
{
    const std::vector<double> ts{1, 2, 3, 4};
    const std::vector<double> nu{0.4, 0.3, 0.2, 0.1};
    EXPECT_THROW(kz_fit(ts, nu, FitWindow{2, 4}), std::invalid_argument);
    EXPECT_THROW(kz_fit(ts, {0.4, 0.3}, FitWindow{0, 2}), std::invalid_argument);
}

TEST(Fit, DefaultWindow)
{
    const auto w = default_window(12);
    EXPECT_EQ(w.lo, 6u);
    EXPECT_EQ(w.hi, 11u);
    const auto s = default_window(4);
    EXPECT_EQ(s.hi - s.lo, 3u);
}

TEST(Correlations, DecayAndTemperature)
{
    const auto t = correlation_profile(32, 0.0, {0.8}, {0.0, 0.5});
    EXPECT_EQ(t.rows.size(), 2u * 31u);
    // nearest neighbour is the strongest correlation
    double nearest = 0.0, far = 0.0;
    for (std::size_t i = 0; i < 31; ++i) {
        if (t.rows[i][5] == 1.0)
            nearest = std::max(nearest, t.rows[i][6]);
        else
            far = std::max(far, std::abs(t.rows[i][6]));
    }
    EXPECT_GT(nearest, far);
    for (std::size_t i = 0; i < 31; ++i)
        EXPECT_GE(t.rows[i][6] + 1e-14, t.rows[31 + i][6]);
}

TEST(Correlations, MatchesDenseOracle)
{
    const auto t = correlation_profile(4, 0.3, {0.8}, {0.0, 0.5}, 1);
    const auto p = ModelParams::make(4, 0.8, 0.3);
    const CMat H = hamiltonian_spin(p);
    for (const auto& r : t.rows) {
        const int j = static_cast<int>(r[4]);
        const CMat C = dense_observable(observable_correlation(std::min(j, 1), std::max(j, 1), 4));
        EXPECT_NEAR(r[6], expectation_dense(gibbs(H, r[3]), C), 1e-10);
    }
}

TEST(TimeTrace, StaticAndStationary)
{
    const auto p = ModelParams::make(4, 0.8, 0.2);
    const auto M = observable_magnetization(4);
    const auto tr = time_trace(p, {InitialKind::excited, 3, 0}, M, {0.0, 0.5, 4.0});
    // an eigenstate does not evolve
    EXPECT_NEAR(tr.rows[1][1], tr.rows[0][1], 1e-12);
    EXPECT_NEAR(tr.rows[2][1], tr.rows[0][1], 1e-12);
    const auto v = time_trace(p, {InitialKind::vacuum, 0, 0}, M, {0.0, 1.0});
    EXPECT_EQ(v.rows[0][1], 1.0);
    EXPECT_NE(v.rows[1][1], 1.0);
}

TEST(TimeTrace, MatchesDenseOracle)
{
    for (const auto& c : check_time_evolution(4))
        EXPECT_TRUE(c.pass) << c.name << " error " << c.error;
}
