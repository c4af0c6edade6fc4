#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "compressed.hpp"
#include "experiments.hpp"
#include "matchgate.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "states.hpp"

namespace xyc {

struct CheckResult {
    std::string name;
    double error = 0.0;
    double tol = 0.0;
    bool pass = false;
};

inline CheckResult make_check(std::string name, double err, double tol) { return {std::move(name), err, tol, err < tol}; }

inline const std::vector<double>& verify_g_grid()
{
    static const std::vector<double> g{0.5, 1.0, 1.2, 2.0};
    return g;
}
inline const std::vector<double>& verify_delta_grid()
{
    static const std::vector<double> d{0.0, 0.2, 1.0};
    return d;
}
inline const std::vector<double>& verify_t_grid()
{
    static const std::vector<double> t{0.0, 0.5, 2.0};
    return t;
}

inline double equivalence_tolerance(int n) { return n <= 4 ? 1e-9 : 1e-8; }

// Thermal and eigenstate expectations of M, K, C_02 against the dense oracle.
inline CheckResult check_oracle_equivalence(int n, int max_k = 16)
{
    const double tol = equivalence_tolerance(n);
    const std::vector<QuadraticObservable> obs{observable_magnetization(n), observable_kinks(n),
                                               observable_correlation(0, 2, n)};
    std::vector<CMat> dense_obs;
    for (const auto& o : obs)
        dense_obs.push_back(dense_observable(o));
    double worst = 0.0;
    auto cmp = [&](const Mat& R, const CovarianceState& st, const DenseState& ds) {
        for (std::size_t i = 0; i < obs.size(); ++i)
            worst = std::max(worst, std::abs(expectation(R, st, obs[i]) - expectation_dense(ds, dense_obs[i])));
    };
    for (double g : verify_g_grid())
        for (double d : verify_delta_grid()) {
            const auto p = ModelParams::make(n, g, d);
            const auto spec = dispersion(p);
            const Mat R = assemble_r(p).R;
            const CMat H = hamiltonian_spin(p);
            for (double T : verify_t_grid())
                cmp(R, thermal_state(spec, T), gibbs(H, T));
            const CMat U = assemble_u(p);
            const int kmax = std::min<long long>(max_k, 1LL << n);
            for (int k = 0; k < kmax; ++k) {
                const auto occ = occupation_from_index(k, n);
                cmp(R, excited_state(occ), dense_eigenstate(U, occ));
            }
        }
    // product states need no circuit
    const Mat I = Mat::Identity(2 * n, 2 * n);
    cmp(I, vacuum_state(n), DenseState::pure(basis_vector(n, 0)));
    for (int q = 0; q < n; ++q) {
        std::vector<Eigen::Matrix2cd> ob(n, ket_density(1.0, 0.0));
        ob[q] = ket_density(1.0, 1.0);
        cmp(I, product_state(ob), dense_product_state(ob));
    }
    return make_check("oracle equivalence n=" + std::to_string(n), worst, tol);
}

inline CheckResult check_diagonalization(int n)
{
    double worst = 0.0;
    for (double g : verify_g_grid())
        for (double d : verify_delta_grid()) {
            const auto p = ModelParams::make(n, g, d);
            const CMat U = assemble_u(p);
            worst = std::max(worst, (U * hamiltonian_modes(dispersion(p)) * U.adjoint() - hamiltonian_spin(p)).norm());
        }
    return make_check("diagonalization identity n=" + std::to_string(n), worst, 1e-9);
}

inline CheckResult check_compression(int n)
{
    double worst = 0.0;
    for (double g : verify_g_grid())
        for (double d : verify_delta_grid()) {
            const auto p = ModelParams::make(n, g, d);
            worst = std::max(worst, (orthogonal_from_unitary(assemble_u(p)) - assemble_r(p).R).cwiseAbs().maxCoeff());
        }
    return make_check("compression identity n=" + std::to_string(n), worst, 1e-9);
}

// Three initial states, t in {0.1, 1, 5}; t = 0 must equal the static value exactly.
inline std::vector<CheckResult> check_time_evolution(int n, double g = 0.8, double delta = 0.2)
{
    const auto p = ModelParams::make(n, g, delta);
    const auto spec = dispersion(p);
    const Mat R = assemble_r(p).R;
    const CMat U = assemble_u(p);
    const CMat H = hamiltonian_spin(p);
    const auto M = observable_magnetization(n);
    const CMat Md = dense_observable(M);
    const std::vector<InitialDescriptor> inits{{InitialKind::vacuum, 0, 0}, {InitialKind::excited, 3, 0},
                                               {InitialKind::plus, 0, 0}};
    std::vector<CheckResult> out;
    for (const auto& init : inits) {
        DenseState d0;
        switch (init.kind) {
        case InitialKind::vacuum: d0 = DenseState::pure(basis_vector(n, 0)); break;
        case InitialKind::excited: d0 = dense_eigenstate(U, occupation_from_index(init.k, n)); break;
        case InitialKind::plus: {
            std::vector<Eigen::Matrix2cd> ob(n, ket_density(1.0, 0.0));
            ob[init.qubit] = ket_density(1.0, 1.0);
            d0 = dense_product_state(ob);
            break;
        }
        }
        const auto trace = time_trace(p, init, M, {0.0, 0.1, 1.0, 5.0});
        const auto st = initial_covariance(p, R, init);
        // t = 0 is compared bitwise
        double worst = trace.rows[0][1] == expectation_of_covariance(st.S, M) ? 0.0 : 1.0;
        for (std::size_t i = 1; i < trace.rows.size(); ++i)
            worst = std::max(worst, std::abs(trace.rows[i][1] - expectation_dense(evolve_dense(H, trace.rows[i][0], d0), Md)));
        out.push_back(make_check("time evolution n=" + std::to_string(n) + " " + init.label(), worst, 1e-8));
    }
    return out;
}

inline CheckResult check_quench(int n, double gmax = 3.0, double t = 1.0)
{
    const auto q = QuenchSchedule::standard(gmax, t);
    const auto K = observable_kinks(n);
    double worst = 0.0;
    for (double T : {0.0, 0.5}) {
        const auto p = ModelParams::make(n, gmax, 0.0);
        const Mat R = r_quench(n, q).R * assemble_r(p).R;
        const double compressed = expectation(R, thermal_state(dispersion(p), T), K);
        const auto dq = quench_dense(n, q, gibbs(hamiltonian_spin(p), T));
        worst = std::max(worst, std::abs(compressed - expectation_dense(dq, dense_observable(K))));
    }
    return make_check("quench kinks n=" + std::to_string(n), worst, 1e-8);
}

inline std::vector<CheckResult> verify_suite(int n)
{
    std::vector<CheckResult> out;
    out.push_back(check_oracle_equivalence(n));
    out.push_back(check_diagonalization(n));
    out.push_back(check_compression(n));
    for (auto& c : check_time_evolution(n))
        out.push_back(c);
    out.push_back(check_quench(n));
    return out;
}

} // namespace xyc
