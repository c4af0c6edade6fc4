#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "compressed.hpp"
#include "io/table.hpp"
#include "model.hpp"
#include "states.hpp"

namespace xyc {

inline std::vector<double> linspace(double a, double b, int count)
{
    if (count < 1)
        throw std::invalid_argument("linspace needs at least one point");
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i)
        v[i] = count == 1 ? a : a + (b - a) * i / (count - 1);
    return v;
}

inline std::vector<double> logspace(double a, double b, int count)
{
    if (!(a > 0.0 && b > 0.0))
        throw std::invalid_argument("logspace needs positive bounds");
    auto e = linspace(std::log(a), std::log(b), count);
    for (auto& x : e)
        x = std::exp(x);
    if (count > 1) {
        e.front() = a;
        e.back() = b;
    }
    return e;
}

inline std::vector<double> default_quench_times() { return logspace(1.0, 300.0, 12); }

// Equally spaced T in [0, 0.9].
inline std::vector<double> default_temperatures() { return linspace(0.0, 0.9, 10); }

// ---- magnetization ------------------------------------------------------

// Columns n,delta,g,T,magnetization
inline SweepTable magnetization_sweep(int n, double delta, const std::vector<double>& gs, const std::vector<double>& Ts)
{
    if (gs.empty() || Ts.empty())
        throw std::invalid_argument("magnetization sweep needs a g grid and a T list");
    SweepTable t({"n", "delta", "g", "T", "magnetization"});
    const auto M = observable_magnetization(n);
    for (double g : gs) {
        const auto p = ModelParams::make(n, g, delta);
        const auto spec = dispersion(p);
        const Mat R = assemble_r(p).R;
        for (double T : Ts)
            t.add({double(n), delta, g, T, expectation(R, thermal_state(spec, T), M)});
    }
    t.meta = {{"n", n}, {"delta", delta}};
    return t;
}

// Columns n,delta,g,inv_g,k,magnetization; bit l of k excites mode l.
inline SweepTable excited_magnetization(int n, double delta, const std::vector<double>& gs,
                                        const std::vector<std::uint64_t>& ks)
{
    if (gs.empty() || ks.empty())
        throw std::invalid_argument("excited sweep needs a g grid and a k list");
    SweepTable t({"n", "delta", "g", "inv_g", "k", "magnetization"});
    const auto M = observable_magnetization(n);
    std::vector<CovarianceState> states;
    for (auto k : ks)
        states.push_back(excited_state(occupation_from_index(k, n)));
    for (double g : gs) {
        if (!(g > 0.0))
            throw std::invalid_argument("excited sweep is indexed by 1/g and needs g > 0");
        const auto p = ModelParams::make(n, g, delta);
        const Mat R = assemble_r(p).R;
        for (std::size_t i = 0; i < ks.size(); ++i)
            t.add({double(n), delta, g, 1.0 / g, double(ks[i]), expectation(R, states[i], M)});
    }
    t.meta = {{"n", n}, {"delta", delta}};
    return t;
}

// ---- quench -------------------------------------------------------------

// Block values of the initial state in the mode basis of H(g_max).
struct QuenchInitial {
    std::string label;
    std::vector<double> blocks;
};

// Thermal occupations at temperature T. The energies come from the
// spectrum at occupation_g (default: g_max, i.e. the Gibbs state of the
// initial Hamiltonian).
inline QuenchInitial quench_thermal(int n, double gmax, double T, std::optional<double> occupation_g = std::nullopt)
{
    const auto spec = dispersion(ModelParams::make(n, occupation_g.value_or(gmax), 0.0));
    QuenchInitial q{"T=" + format_number(T), std::vector<double>(n)};
    for (int l = 0; l < n; ++l)
        q.blocks[l] = thermal_block(spec.eps[l], T);
    return q;
}

// Eigenstate with the given occupation at T = 0.
inline QuenchInitial quench_excited(const Occupation& occ, std::string label)
{
    QuenchInitial q{std::move(label), std::vector<double>(occ.size())};
    for (std::size_t l = 0; l < occ.size(); ++l)
        q.blocks[l] = occ[l] ? -1.0 : 1.0;
    return q;
}

struct QuenchOptions {
    double gmax = 10.0;
    double steps_per_time = 100.0;
    int trace_samples = 0; // nu(g) samples along the ramp, 0 = endpoint only
};

// nu = (1 - <K>) / 2 for S = M diag(blocks) M^T, with Mt = M^T.
inline double kink_density(const Mat& Mt, const std::vector<double>& blocks)
{
    const int n = static_cast<int>(blocks.size());
    double k = 0.0;
    for (int j = 0; j + 1 < n; ++j) {
        const auto a = Mt.col(2 * j + 1), b = Mt.col(2 * j + 2);
        double s = 0.0;
        for (int l = 0; l < n; ++l)
            s += blocks[l] * (a(2 * l) * b(2 * l + 1) - a(2 * l + 1) * b(2 * l));
        k += s;
    }
    k /= (n - 1);
    return 0.5 * (1.0 - k);
}

inline void rotate_columns(Mat& Mt, int a, int b, double c, double s)
{
    for (int r = 0; r < Mt.rows(); ++r) {
        const double x = Mt(r, a), y = Mt(r, b);
        Mt(r, a) = c * x - s * y;
        Mt(r, b) = s * x + c * y;
    }
}

struct QuenchResult {
    double t = 0.0;
    long L = 0;
    std::vector<double> nu;                  // endpoint per initial state
    std::vector<double> trace_g;             // sampled fields
    std::vector<std::vector<double>> trace;  // [state][sample]
};

// Propagates M = R_Q(t) R(g_max) once and evaluates every initial state.
inline QuenchResult quench_propagate(int n, double t, const std::vector<QuenchInitial>& inits, const QuenchOptions& o)
{
    const auto q = QuenchSchedule::standard(o.gmax, t, o.steps_per_time);
    const auto p = ModelParams::make(n, o.gmax, 0.0);
    Mat Mt = assemble_r(p).R.transpose();
    const double dt = q.step();
    const double c1 = std::cos(2.0 * dt), s1 = std::sin(2.0 * dt);
    QuenchResult res;
    res.t = t;
    res.L = q.L;
    res.trace.resize(inits.size());
    std::vector<long> sample_at;
    for (int i = 0; i < o.trace_samples; ++i)
        sample_at.push_back(o.trace_samples == 1 ? q.L : std::lround(double(i) * q.L / (o.trace_samples - 1)));
    std::size_t next = 0;
    for (long l = 0; l <= q.L; ++l) {
        for (int j = 0; j + 1 < n; ++j)
            rotate_columns(Mt, 2 * j + 1, 2 * j + 2, c1, s1);
        const double g = q.g(l);
        const double c0 = std::cos(2.0 * g * dt), s0 = std::sin(2.0 * g * dt);
        for (int j = 0; j < n; ++j)
            rotate_columns(Mt, 2 * j, 2 * j + 1, c0, s0);
        while (next < sample_at.size() && sample_at[next] == l) {
            res.trace_g.push_back(g);
            for (std::size_t i = 0; i < inits.size(); ++i)
                res.trace[i].push_back(kink_density(Mt, inits[i].blocks));
            ++next;
        }
    }
    for (const auto& init : inits)
        res.nu.push_back(kink_density(Mt, init.blocks));
    return res;
}

// Columns t,L,state,nu (state indexes `inits`).
inline SweepTable quench_run(int n, const std::vector<double>& ts, const std::vector<QuenchInitial>& inits,
                             const QuenchOptions& o = {}, SweepTable* trace = nullptr)
{
    if (ts.empty() || inits.empty())
        throw std::invalid_argument("quench run needs times and initial states");
    SweepTable t({"t", "L", "state", "nu"});
    if (trace)
        *trace = SweepTable({"t", "state", "g", "nu"});
    for (double time : ts) {
        const auto r = quench_propagate(n, time, inits, o);
        for (std::size_t i = 0; i < inits.size(); ++i) {
            t.add({time, double(r.L), double(i), r.nu[i]});
            if (trace)
                for (std::size_t s = 0; s < r.trace_g.size(); ++s)
                    trace->add({time, double(i), r.trace_g[s], r.trace[i][s]});
        }
    }
    nlohmann::json labels = nlohmann::json::array();
    for (const auto& i : inits)
        labels.push_back(i.label);
    t.meta = {{"n", n}, {"gmax", o.gmax}, {"steps_per_time", o.steps_per_time}, {"states", labels}};
    return t;
}

// ---- power-law fit --------------------------------------------------------

struct FitResult {
    double p = 0.0;
    double intercept = 0.0;
    double t_min = 0.0, t_max = 0.0;
    double rms = 0.0;
    int count = 0;
};

struct FitWindow {
    std::size_t lo = 0, hi = 0; // index range [lo, hi)
};

// Upper half of the t list without its top decile.
inline FitWindow default_window(std::size_t count)
{
    FitWindow w{count / 2, count - count / 10};
    if (w.hi - w.lo < 3 && count >= 3)
        w = {count - 3, count};
    return w;
}

// Least squares of ln nu against ln(1/t) over the window.
inline FitResult kz_fit(const std::vector<double>& ts, const std::vector<double>& nus, FitWindow w)
{
    if (ts.size() != nus.size())
        throw std::invalid_argument("t and nu lists differ in length");
    if (w.hi > ts.size() || w.lo >= w.hi || w.hi - w.lo < 3)
        throw std::invalid_argument("fit window needs at least three points");
    const int k = static_cast<int>(w.hi - w.lo);
    Eigen::MatrixXd A(k, 2);
    Eigen::VectorXd y(k);
    for (int i = 0; i < k; ++i) {
        const double t = ts[w.lo + i], nu = nus[w.lo + i];
        if (!(t > 0.0 && nu > 0.0))
            throw std::domain_error("fit needs positive t and nu");
        A(i, 0) = std::log(1.0 / t);
        A(i, 1) = 1.0;
        y(i) = std::log(nu);
    }
    const Eigen::Vector2d c = A.colPivHouseholderQr().solve(y);
    FitResult f;
    f.p = c(0);
    f.intercept = c(1);
    f.count = k;
    f.t_min = ts[w.lo];
    f.t_max = ts[w.hi - 1];
    f.rms = std::sqrt((A * c - y).squaredNorm() / k);
    return f;
}

inline FitResult kz_fit(const std::vector<double>& ts, const std::vector<double>& nus)
{
    return kz_fit(ts, nus, default_window(ts.size()));
}

inline SweepTable fit_table(const std::vector<FitResult>& fits, const std::vector<double>& keys, const std::string& key)
{
    SweepTable t({key, "p", "intercept", "t_min", "t_max", "rms", "count"});
    for (std::size_t i = 0; i < fits.size(); ++i) {
        const auto& f = fits[i];
        t.add({keys[i], f.p, f.intercept, f.t_min, f.t_max, f.rms, double(f.count)});
    }
    return t;
}

// Endpoint nu series of one initial state out of a quench_run table.
inline std::vector<double> endpoints(const SweepTable& run, int state)
{
    std::vector<double> out;
    const int cs = run.column("state"), cn = run.column("nu");
    for (const auto& r : run.rows)
        if (static_cast<int>(r[cs]) == state)
            out.push_back(r[cn]);
    return out;
}

// p(T) from one propagation per t shared by every temperature.
inline std::vector<FitResult> temperature_exponent_sweep(int n, const std::vector<double>& Ts,
                                                         const std::vector<double>& ts, const QuenchOptions& o = {},
                                                         std::optional<double> occupation_g = std::nullopt,
                                                         std::optional<FitWindow> w = std::nullopt)
{
    std::vector<QuenchInitial> inits;
    for (double T : Ts)
        inits.push_back(quench_thermal(n, o.gmax, T, occupation_g));
    const auto run = quench_run(n, ts, inits, o);
    std::vector<FitResult> fits;
    for (std::size_t i = 0; i < Ts.size(); ++i)
        fits.push_back(kz_fit(ts, endpoints(run, static_cast<int>(i)), w.value_or(default_window(ts.size()))));
    return fits;
}

// Excited state k: bit j excites mode n-1-j.
inline std::vector<FitResult> excited_quench(int n, const std::vector<std::uint64_t>& ks, const std::vector<double>& ts,
                                             const QuenchOptions& o = {}, std::optional<FitWindow> w = std::nullopt)
{
    std::vector<QuenchInitial> inits;
    for (auto k : ks)
        inits.push_back(quench_excited(occupation_from_label(k, n), "k=" + std::to_string(k)));
    const auto run = quench_run(n, ts, inits, o);
    std::vector<FitResult> fits;
    for (std::size_t i = 0; i < ks.size(); ++i)
        fits.push_back(kz_fit(ts, endpoints(run, static_cast<int>(i)), w.value_or(default_window(ts.size()))));
    return fits;
}

// ---- correlations ---------------------------------------------------------

// <C_{min(j,a),max(j,a)}> for every j != anchor. Columns n,delta,g,T,j,distance,correlation
inline SweepTable correlation_profile(int n, double delta, const std::vector<double>& gs, const std::vector<double>& Ts,
                                      int anchor = -1)
{
    if (anchor < 0)
        anchor = n / 2;
    if (anchor >= n)
        throw std::invalid_argument("anchor outside the chain");
    SweepTable t({"n", "delta", "g", "T", "j", "distance", "correlation"});
    for (double g : gs) {
        const auto p = ModelParams::make(n, g, delta);
        const auto spec = dispersion(p);
        const Mat R = assemble_r(p).R;
        for (double T : Ts) {
            const auto st = thermal_state(spec, T);
            const Mat Sp = R * st.S * R.transpose();
            for (int j = 0; j < n; ++j) {
                if (j == anchor)
                    continue;
                const int a = std::min(j, anchor), b = std::max(j, anchor);
                // C_ab = -i x_2a+1 x_2b: <C> = S'_{2a+1,2b}
                t.add({double(n), delta, g, T, double(j), double(b - a), Sp(2 * a + 1, 2 * b)});
            }
        }
    }
    t.meta = {{"n", n}, {"delta", delta}, {"anchor", anchor}};
    return t;
}

// ---- time evolution -------------------------------------------------------

enum class InitialKind { vacuum, excited, plus };

struct InitialDescriptor {
    InitialKind kind = InitialKind::vacuum;
    std::uint64_t k = 0; // excited: bit l excites mode l
    int qubit = 0;       // plus: this qubit in |+>, the rest in |0>

    std::string label() const
    {
        switch (kind) {
        case InitialKind::vacuum: return "vacuum";
        case InitialKind::excited: return "excited_" + std::to_string(k);
        case InitialKind::plus: return "plus_" + std::to_string(qubit);
        }
        return "";
    }
};

// Spin-basis covariance of the initial state.
inline CovarianceState initial_covariance(const ModelParams& p, const Mat& R, const InitialDescriptor& d)
{
    switch (d.kind) {
    case InitialKind::vacuum:
        return vacuum_state(p.n);
    case InitialKind::excited: {
        auto st = excited_state(occupation_from_index(d.k, p.n));
        st.S = R * st.S * R.transpose();
        return st;
    }
    case InitialKind::plus: {
        if (d.qubit < 0 || d.qubit >= p.n)
            throw std::invalid_argument("plus-state qubit outside the chain");
        std::vector<Eigen::Matrix2cd> ob(p.n, ket_density(1.0, 0.0));
        ob[d.qubit] = ket_density(1.0, 1.0);
        return product_state(ob);
    }
    }
    throw std::logic_error("unknown initial state");
}

// Orthogonal matrix of e^{-i H t}: R R_W(t) R^T.
inline Mat evolution_r(const Mat& R, const Spectrum& spec, double t)
{
    return R * r_time_evolution(spec, t).R * R.transpose();
}

// Columns t,value
inline SweepTable time_trace(const ModelParams& p, const InitialDescriptor& init, const QuadraticObservable& obs,
                             const std::vector<double>& ts)
{
    if (ts.empty())
        throw std::invalid_argument("time trace needs a t grid");
    const auto spec = dispersion(p);
    const Mat R = assemble_r(p).R;
    const auto st = initial_covariance(p, R, init);
    SweepTable t({"t", "value"});
    for (double time : ts) {
        const double v = time == 0.0 ? expectation_of_covariance(st.S, obs) : expectation(evolution_r(R, spec, time), st, obs);
        t.add({time, v});
    }
    t.meta = {{"n", p.n}, {"g", p.g}, {"delta", p.delta}, {"initial", init.label()}, {"observable", obs.label}};
    return t;
}

} // namespace xyc
