#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace xyc {

// Mode occupation pattern; entry l is 1 when mode l is excited.
using Occupation = std::vector<std::uint8_t>;

inline bool is_pow2(long long n) { return n > 0 && (n & (n - 1)) == 0; }

inline int ilog2(long long n)
{
    int m = 0;
    while ((1LL << m) < n)
        ++m;
    return m;
}

inline int bit(long long x, int b) { return static_cast<int>((x >> b) & 1); }

// Qubit pair (2 r_l, 2 r_l + 1) hosting the Bogoliubov gate of mode l.
inline int r_l(int n, int l) { return (l % 2 == 0) ? l / 2 : (n - 1 - l) / 2; }

// sigma_j = n/2 + (-1)^j j
inline int sigma(int n, int j) { return n / 2 + ((j % 2 == 0) ? j : -j); }

// Fourier phase (in units of pi) of pair l at stage s.
inline double fourier_phase(int l, int s, int m)
{
    double phi = 0.0;
    for (int j = 0; j < s; ++j) {
        int b = m - 2 - j;
        if (b >= 0 && bit(l, b))
            phi += 1.0 / static_cast<double>(1LL << (s - j));
    }
    return phi;
}

// Bit l of k excites mode l.
inline Occupation occupation_from_index(std::uint64_t k, int n)
{
    if (n < 64 && (k >> n) != 0)
        throw std::out_of_range("basis index " + std::to_string(k) + " needs more than n bits");
    Occupation occ(n, 0);
    for (int l = 0; l < n && l < 64; ++l)
        occ[l] = static_cast<std::uint8_t>((k >> l) & 1);
    return occ;
}

// Bit j of k excites mode n-1-j. This is the labelling of excited states
// used for the quench experiments.
inline Occupation occupation_from_label(std::uint64_t k, int n)
{
    Occupation occ = occupation_from_index(k, n);
    return Occupation(occ.rbegin(), occ.rend());
}

} // namespace xyc
