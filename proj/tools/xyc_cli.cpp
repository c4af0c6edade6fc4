#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xyc/experiments.hpp"
#include "xyc/io/table.hpp"
#include "xyc/verify.hpp"

namespace fs = std::filesystem;
using namespace xyc;

namespace {

struct GridSpec {
    double lo = 0.0, hi = 2.0;
    int count = 201;
    std::vector<double> values() const { return linspace(lo, hi, count); }
};

void add_grid(CLI::App* c, GridSpec& g, const std::string& name)
{
    c->add_option("--" + name + "-min", g.lo, "first " + name + " value")->capture_default_str();
    c->add_option("--" + name + "-max", g.hi, "last " + name + " value")->capture_default_str();
    c->add_option("--" + name + "-count", g.count, "number of " + name + " points")->capture_default_str()->check(CLI::PositiveNumber);
}

fs::path resolve_out(const std::string& out, const std::string& fallback)
{
    if (!out.empty())
        return out;
    return default_output_dir() / fallback;
}

void emit(const SweepTable& t, const fs::path& path, const std::string& command, nlohmann::json config,
          std::chrono::steady_clock::time_point start)
{
    write_csv(t, path);
    if (!t.meta.empty())
        config["table"] = t.meta;
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_sidecar(path, command, config, wall);
    std::cout << "wrote " << path.string() << " (" << t.rows.size() << " rows)\n";
}

std::vector<double> times_or_default(const std::vector<double>& ts)
{
    return ts.empty() ? default_quench_times() : ts;
}

std::optional<FitWindow> window_from(int lo, int hi, std::size_t count)
{
    if (lo < 0 && hi < 0)
        return std::nullopt;
    FitWindow w = default_window(count);
    if (lo >= 0)
        w.lo = lo;
    if (hi >= 0)
        w.hi = hi;
    return w;
}

nlohmann::json window_json(const FitResult& f)
{
    return {{"p", f.p}, {"intercept", f.intercept}, {"t_min", f.t_min}, {"t_max", f.t_max}, {"rms", f.rms}, {"count", f.count}};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Compressed simulation of the XY spin chain"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    std::string out;
    int n = 8;
    double g = 1.0, delta = 0.0;

    auto common = [&](CLI::App* c) {
        c->add_option("--n", n, "number of spins (power of two)")->capture_default_str();
        c->add_option("--out", out, "output CSV path");
    };

    // spectrum
    auto* c_spec = app.add_subcommand("spectrum", "mode energies and Bogoliubov angles");
    common(c_spec);
    c_spec->add_option("--g", g)->capture_default_str();
    c_spec->add_option("--delta", delta)->capture_default_str();

    // magnetization
    GridSpec mgrid;
    std::vector<double> Ts;
    auto* c_mag = app.add_subcommand("magnetization", "thermal magnetization sweep over g");
    common(c_mag);
    c_mag->add_option("--delta", delta)->capture_default_str();
    add_grid(c_mag, mgrid, "g");
    c_mag->add_option("--T", Ts, "temperatures (default 10 values in [0, 0.9])");

    // excited
    GridSpec egrid{0.1, 3.0, 200};
    std::vector<std::uint64_t> ks;
    bool all_k = false;
    auto* c_exc = app.add_subcommand("excited", "eigenstate magnetization over 1/g");
    common(c_exc);
    c_exc->add_option("--delta", delta)->capture_default_str();
    add_grid(c_exc, egrid, "g");
    c_exc->add_option("--k", ks, "basis indices, bit l excites mode l");
    c_exc->add_flag("--all-k", all_k, "every k in [0, 2^n)");

    // quench
    double gmax = 10.0, steps_per_time = 100.0, T = 0.0;
    std::optional<double> occ_g;
    std::vector<double> ts;
    int samples = 101;
    auto* c_q = app.add_subcommand("quench", "kink density during and after a field ramp");
    common(c_q);
    c_q->add_option("--gmax", gmax)->capture_default_str();
    c_q->add_option("--T", T, "initial temperature")->capture_default_str();
    c_q->add_option("--occupation-g", occ_g, "field whose spectrum sets the thermal occupations (default gmax)");
    c_q->add_option("--t", ts, "quench times (default 12 log-spaced in [1, 300])");
    c_q->add_option("--steps-per-time", steps_per_time)->capture_default_str();
    c_q->add_option("--samples", samples, "nu(g) samples per quench")->capture_default_str();
    std::string trace_out;
    c_q->add_option("--trace-out", trace_out, "CSV for the nu(g) traces");

    // kz
    int win_lo = -1, win_hi = -1;
    std::vector<std::uint64_t> kz_k;
    auto* c_kz = app.add_subcommand("kz", "power-law fit of the final kink density");
    common(c_kz);
    c_kz->add_option("--gmax", gmax)->capture_default_str();
    c_kz->add_option("--T", T)->capture_default_str();
    c_kz->add_option("--occupation-g", occ_g, "field whose spectrum sets the thermal occupations (default gmax)");
    c_kz->add_option("--k", kz_k, "excited-state labels instead of a thermal state (bit j excites mode n-1-j)");
    c_kz->add_option("--t", ts);
    c_kz->add_option("--steps-per-time", steps_per_time)->capture_default_str();
    c_kz->add_option("--window-lo", win_lo, "first t index of the fit window");
    c_kz->add_option("--window-hi", win_hi, "one past the last t index of the fit window");

    // kz-temp
    auto* c_kzt = app.add_subcommand("kz-temp", "fitted exponent as a function of temperature");
    common(c_kzt);
    c_kzt->add_option("--gmax", gmax)->capture_default_str();
    c_kzt->add_option("--T", Ts, "temperatures (default 0, 0.1, ..., 2)");
    c_kzt->add_option("--occupation-g", occ_g, "field whose spectrum sets the thermal occupations (default gmax)");
    c_kzt->add_option("--t", ts);
    c_kzt->add_option("--steps-per-time", steps_per_time)->capture_default_str();
    c_kzt->add_option("--window-lo", win_lo);
    c_kzt->add_option("--window-hi", win_hi);

    // correlations
    std::vector<double> gs;
    int anchor = -1;
    auto* c_cor = app.add_subcommand("correlations", "string correlations against a fixed qubit");
    common(c_cor);
    c_cor->add_option("--delta", delta)->capture_default_str();
    c_cor->add_option("--g", gs, "fields (default 0.8)");
    c_cor->add_option("--T", Ts, "temperatures (default 10 values in [0, 0.9])");
    c_cor->add_option("--anchor", anchor, "reference qubit (default n/2)");

    // evolve
    std::string init = "vacuum";
    std::uint64_t init_k = 0;
    int plus_qubit = 0;
    std::string observable = "M";
    GridSpec tgrid{0.0, 5.0, 101};
    auto* c_ev = app.add_subcommand("evolve", "exact time evolution of an observable");
    common(c_ev);
    c_ev->add_option("--g", g)->capture_default_str();
    c_ev->add_option("--delta", delta)->capture_default_str();
    c_ev->add_option("--init", init, "vacuum, excited or plus")->check(CLI::IsMember({"vacuum", "excited", "plus"}))->capture_default_str();
    c_ev->add_option("--k", init_k, "excited state index")->capture_default_str();
    c_ev->add_option("--qubit", plus_qubit, "qubit prepared in |+>")->capture_default_str();
    c_ev->add_option("--observable", observable, "M, K or C:j,k")->capture_default_str();
    add_grid(c_ev, tgrid, "t");

    // gatecost
    int n_min = 16, n_max = 1024;
    auto* c_gc = app.add_subcommand("gatecost", "elementary gate counts of the compressed circuit");
    c_gc->add_option("--n-min", n_min)->capture_default_str();
    c_gc->add_option("--n-max", n_max)->capture_default_str();
    c_gc->add_option("--g", g)->capture_default_str();
    c_gc->add_option("--delta", delta)->capture_default_str();
    c_gc->add_option("--out", out, "output CSV path");

    // verify
    auto* c_ver = app.add_subcommand("verify", "compare the compressed pipeline with the dense oracle");
    c_ver->add_option("--n", n, "4 or 8")->capture_default_str()->check(CLI::IsMember({4, 8}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        std::cout << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        if (*c_spec) {
            const auto p = ModelParams::make(n, g, delta);
            const auto s = dispersion(p);
            SweepTable t({"j", "alpha", "beta", "theta", "eps", "u", "v"});
            for (int j = 0; j < n; ++j)
                t.add({double(j), s.alpha[j], s.beta[j], s.theta[j], s.eps[j], s.u[j], s.v[j]});
            t.meta = {{"e0", s.e0}};
            emit(t, resolve_out(out, "spectrum.csv"), "spectrum", {{"n", n}, {"g", g}, {"delta", delta}}, start);
        } else if (*c_mag) {
            if (Ts.empty())
                Ts = default_temperatures();
            const auto t = magnetization_sweep(n, delta, mgrid.values(), Ts);
            emit(t, resolve_out(out, "magnetization.csv"), "magnetization",
                 {{"n", n}, {"delta", delta}, {"g_min", mgrid.lo}, {"g_max", mgrid.hi}, {"g_count", mgrid.count}, {"T", Ts}},
                 start);
        } else if (*c_exc) {
            if (all_k) {
                if (n > 16)
                    throw std::invalid_argument("--all-k is limited to n <= 16");
                ks.clear();
                for (std::uint64_t k = 0; k < (1ULL << n); ++k)
                    ks.push_back(k);
            }
            if (ks.empty())
                ks = {0};
            const auto t = excited_magnetization(n, delta, egrid.values(), ks);
            emit(t, resolve_out(out, "excited.csv"), "excited",
                 {{"n", n}, {"delta", delta}, {"g_min", egrid.lo}, {"g_max", egrid.hi}, {"g_count", egrid.count}, {"k", ks}},
                 start);
        } else if (*c_q) {
            ts = times_or_default(ts);
            QuenchOptions o{gmax, steps_per_time, samples};
            SweepTable trace;
            const auto t = quench_run(n, ts, {quench_thermal(n, gmax, T, occ_g)}, o, &trace);
            nlohmann::json cfg = {{"n", n}, {"gmax", gmax}, {"T", T}, {"t", ts}, {"steps_per_time", steps_per_time},
                                  {"samples", samples}};
            if (occ_g)
                cfg["occupation_g"] = *occ_g;
            const auto path = resolve_out(out, "quench.csv");
            emit(t, path, "quench", cfg, start);
            fs::path tp = trace_out.empty() ? fs::path(path).replace_filename(path.stem().string() + "_trace.csv") : fs::path(trace_out);
            emit(trace, tp, "quench", cfg, start);
        } else if (*c_kz) {
            ts = times_or_default(ts);
            QuenchOptions o{gmax, steps_per_time, 0};
            std::vector<QuenchInitial> inits;
            if (kz_k.empty())
                inits.push_back(quench_thermal(n, gmax, T, occ_g));
            for (auto k : kz_k)
                inits.push_back(quench_excited(occupation_from_label(k, n), "k=" + std::to_string(k)));
            const auto run = quench_run(n, ts, inits, o);
            const auto w = window_from(win_lo, win_hi, ts.size()).value_or(default_window(ts.size()));
            const std::string key = kz_k.empty() ? "T" : "k";
            SweepTable t({key, "t", "L", "nu", "in_window"});
            std::vector<FitResult> fits;
            std::vector<double> keys;
            for (std::size_t i = 0; i < inits.size(); ++i) {
                const auto nus = endpoints(run, static_cast<int>(i));
                keys.push_back(kz_k.empty() ? T : double(kz_k[i]));
                for (std::size_t r = 0; r < ts.size(); ++r)
                    t.add({keys.back(), ts[r], double(QuenchSchedule::standard(gmax, ts[r], steps_per_time).L), nus[r],
                           (r >= w.lo && r < w.hi) ? 1.0 : 0.0});
                fits.push_back(kz_fit(ts, nus, w));
                std::cout << inits[i].label << ": p = " << fits.back().p << " over t in [" << fits.back().t_min << ", "
                          << fits.back().t_max << "]\n";
            }
            nlohmann::json cfg = {{"n", n}, {"gmax", gmax}, {"T", T}, {"t", ts}, {"steps_per_time", steps_per_time},
                                  {"window", {w.lo, w.hi}}, {"k", kz_k}};
            if (occ_g)
                cfg["occupation_g"] = *occ_g;
            const auto path = resolve_out(out, "kz.csv");
            emit(t, path, "kz", cfg, start);
            emit(fit_table(fits, keys, key),
                 fs::path(path).replace_filename(path.stem().string() + "_fit.csv"), "kz", cfg, start);
        } else if (*c_kzt) {
            ts = times_or_default(ts);
            if (Ts.empty())
                Ts = linspace(0.0, 2.0, 21);
            QuenchOptions o{gmax, steps_per_time, 0};
            const auto fits = temperature_exponent_sweep(n, Ts, ts, o, occ_g, window_from(win_lo, win_hi, ts.size()));
            nlohmann::json cfg = {{"n", n}, {"gmax", gmax}, {"T", Ts}, {"t", ts}, {"steps_per_time", steps_per_time}};
            if (occ_g)
                cfg["occupation_g"] = *occ_g;
            emit(fit_table(fits, Ts, "T"), resolve_out(out, "kz_temp.csv"), "kz-temp", cfg, start);
        } else if (*c_cor) {
            if (gs.empty())
                gs = {0.8};
            if (Ts.empty())
                Ts = default_temperatures();
            const auto t = correlation_profile(n, delta, gs, Ts, anchor);
            emit(t, resolve_out(out, "correlations.csv"), "correlations",
                 {{"n", n}, {"delta", delta}, {"g", gs}, {"T", Ts}, {"anchor", anchor < 0 ? n / 2 : anchor}}, start);
        } else if (*c_ev) {
            const auto p = ModelParams::make(n, g, delta);
            InitialDescriptor d;
            d.kind = init == "vacuum" ? InitialKind::vacuum : init == "excited" ? InitialKind::excited : InitialKind::plus;
            d.k = init_k;
            d.qubit = plus_qubit;
            QuadraticObservable obs;
            if (observable == "M")
                obs = observable_magnetization(n);
            else if (observable == "K")
                obs = observable_kinks(n);
            else if (observable.rfind("C:", 0) == 0) {
                const auto comma = observable.find(',');
                if (comma == std::string::npos)
                    throw std::invalid_argument("correlation observable is written C:j,k");
                obs = observable_correlation(std::stoi(observable.substr(2, comma - 2)), std::stoi(observable.substr(comma + 1)), n);
            } else
                throw std::invalid_argument("unknown observable " + observable);
            const auto t = time_trace(p, d, obs, tgrid.values());
            emit(t, resolve_out(out, "evolve.csv"), "evolve",
                 {{"n", n}, {"g", g}, {"delta", delta}, {"init", d.label()}, {"observable", obs.label},
                  {"t_min", tgrid.lo}, {"t_max", tgrid.hi}, {"t_count", tgrid.count}},
                 start);
        } else if (*c_gc) {
            SweepTable t({"n", "m", "s_bog", "bogoliubov", "s0", "sm", "stages", "fourier", "total", "total_over_nm"});
            for (int k = n_min; k <= n_max; k *= 2) {
                const auto r = gate_cost(ModelParams::make(k, g, delta));
                long st = 0, fo = 0;
                for (long x : r.stage)
                    st += x;
                for (long x : r.fourier)
                    fo += x;
                t.add({double(k), double(r.m), double(r.s_bog), double(r.bogoliubov), double(r.s0), double(r.sm), double(st),
                       double(fo), double(r.total), double(r.total) / (double(k) * r.m)});
            }
            emit(t, resolve_out(out, "gatecost.csv"), "gatecost", {{"n_min", n_min}, {"n_max", n_max}, {"g", g}, {"delta", delta}},
                 start);
        } else if (*c_ver) {
            bool ok = true;
            for (const auto& c : verify_suite(n)) {
                std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  error " << c.error << "  tol " << c.tol << "\n";
                ok = ok && c.pass;
            }
            if (!ok) {
                std::cerr << "verification failed\n";
                return 1;
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
