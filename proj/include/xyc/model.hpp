#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "bits.hpp"

namespace xyc {

struct ModelParams {
    int n = 4;
    int m = 2;
    double g = 1.0;
    double delta = 0.0;

    static ModelParams make(int n, double g, double delta)
    {
        if (!is_pow2(n) || n < 4)
            throw std::invalid_argument("n must be a power of two >= 4, got " + std::to_string(n));
        if (delta < 0.0 || delta > 1.0)
            throw std::invalid_argument("delta must lie in [0,1]");
        if (g < 0.0)
            throw std::invalid_argument("g must be non-negative");
        return ModelParams{n, ilog2(n), g, delta};
    }

    // g >= 1 + delta: paramagnetic side, B_0 is the identity.
    bool above_critical() const { return g >= 1.0 + delta; }
};

struct Spectrum {
    int n = 0;
    std::vector<double> alpha, beta, theta, eps, u, v;
    double e0 = 0.0;
};

inline Spectrum dispersion(const ModelParams& p)
{
    const double pi = std::numbers::pi;
    Spectrum s;
    s.n = p.n;
    s.alpha.resize(p.n);
    s.beta.resize(p.n);
    s.theta.resize(p.n);
    s.eps.resize(p.n);
    s.u.resize(p.n);
    s.v.resize(p.n);
    for (int j = 0; j < p.n; ++j) {
        const double k = 2.0 * pi * j / p.n;
        const double a = std::cos(k) * (1.0 + p.delta) - p.g;
        const double b = std::sin(k) * (1.0 - p.delta);
        double th = std::atan2(b, a);
        double e = -2.0 * (a * std::cos(th) + b * std::sin(th));
        if (e < 0.0 || (e == 0.0 && std::cos(th) < 0.0))
            th += pi;
        // fold into (-pi, pi]
        th = std::remainder(th, 2.0 * pi);
        if (th <= -pi)
            th += 2.0 * pi;
        s.alpha[j] = a;
        s.beta[j] = b;
        s.theta[j] = th;
        s.eps[j] = 2.0 * std::hypot(a, b);
        s.u[j] = std::cos(th / 2.0);
        s.v[j] = std::sin(th / 2.0);
    }
    // mode 0 sits exactly on the branch cut; pin it
    s.theta[0] = p.above_critical() ? 0.0 : pi;
    s.u[0] = std::cos(s.theta[0] / 2.0);
    s.v[0] = std::sin(s.theta[0] / 2.0);
    double sum = 0.0;
    for (double e : s.eps)
        sum += e;
    s.e0 = -0.5 * sum;
    return s;
}

inline double eigenenergy(const Spectrum& s, const Occupation& occ)
{
    if (static_cast<int>(occ.size()) != s.n)
        throw std::invalid_argument("occupation length does not match n");
    double e = s.e0;
    for (int l = 0; l < s.n; ++l)
        if (occ[l])
            e += s.eps[l];
    return e;
}

inline double eigenenergy(const Spectrum& s, std::uint64_t k)
{
    if (s.n < 64 && (k >> s.n) != 0)
        throw std::out_of_range("basis index out of range");
    return eigenenergy(s, occupation_from_index(k, s.n));
}

struct ThermalWeights {
    double T = 0.0;
    std::vector<double> a, b;
};

inline ThermalWeights thermal_weights(const Spectrum& s, double T)
{
    if (!(T >= 0.0))
        throw std::invalid_argument("temperature must be non-negative");
    ThermalWeights w;
    w.T = T;
    w.a.resize(s.n);
    w.b.resize(s.n);
    for (int k = 0; k < s.n; ++k) {
        double a;
        if (T == 0.0)
            a = s.eps[k] > 0.0 ? 1.0 : 0.5;
        else
            a = 1.0 / (1.0 + std::exp(-s.eps[k] / T));
        w.a[k] = a;
        w.b[k] = 1.0 - a;
    }
    return w;
}

// Covariance block value <-i x_2l x_2l+1> of a thermal mode.
inline double thermal_block(double eps, double T)
{
    if (T == 0.0)
        return eps > 0.0 ? 1.0 : 0.0;
    return std::tanh(eps / (2.0 * T));
}

} // namespace xyc
