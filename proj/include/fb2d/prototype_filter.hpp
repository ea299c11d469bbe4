#pragma once

#include "fb2d/complex_matrix.hpp"
#include "fb2d/fft.hpp"

#include <vector>

namespace fb2d {

/**
 * Unit-energy prototype filter for an N-subcarrier bank. Tap count is
 * overlap * n_fft; the overlap factor fixes the number of N/2 segments
 * used by the Toeplitz synthesis matrix.
 */
struct PrototypeFilter {
    RVec taps;
    double overlap = 1.5;
    int n_fft = 0;

    int n_segments() const { return static_cast<int>(std::lround(2.0 * overlap)); }
};

namespace detail {

// Haas-Belfiore coefficient set, Hermite orders 0,4,8,12,16,20.
inline const std::vector<std::pair<int, double>>& hermite_coeffs() {
    static const std::vector<std::pair<int, double>> c = {
        {0, 1.412692577}, {4, -3.0145e-3},  {8, -8.8041e-6},
        {12, -2.2611e-9}, {16, -4.4570e-15}, {20, 1.8633e-16}};
    return c;
}

// Physicists' Hermite polynomial H_n(x) by recurrence.
inline double hermite_poly(int n, double x) {
    double h0 = 1.0, h1 = 2.0 * x;
    if (n == 0) return h0;
    if (n == 1) return h1;
    for (int k = 2; k <= n; ++k) {
        const double h2 = 2.0 * x * h1 - 2.0 * (k - 1) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

} // namespace detail

/**
 * Hermite pulse: Haas-Belfiore combination of Hermite functions
 * h_n(t) e^{-pi t^2} on t in [-1, 1) symbol periods, sampled on a
 * half-sample-centered grid of 2*n_fft points, centrally truncated to
 * 1.5*n_fft taps and renormalized to unit energy.
 */
inline PrototypeFilter build_hermite(int n_fft) {
    if (n_fft < 4 || (n_fft % 4) != 0)  // N/4 must be integral for a centered cut
        throw std::invalid_argument("build_hermite: n_fft must be a multiple of 4 and >= 4");
    const int full = 2 * n_fft;
    RVec g(full);
    for (int i = 0; i < full; ++i) {
        const double t = (i + 0.5 - n_fft) / static_cast<double>(n_fft);
        const double x = std::sqrt(2.0 * M_PI) * t;
        double acc = 0.0;
        for (const auto& [ord, coef] : detail::hermite_coeffs())
            acc += coef * detail::hermite_poly(ord, x);
        g(i) = std::exp(-M_PI * t * t) * acc;
    }
    const int len = (3 * n_fft) / 2;
    const int start = n_fft / 4;
    PrototypeFilter f;
    f.n_fft = n_fft;
    f.overlap = 1.5;
    f.taps = g.segment(start, len);
    f.taps /= f.taps.norm();
    return f;
}

/**
 * PHYDYAS frequency-sampling pulse for overlap 4 (PSD baseline):
 * p[m] = 1 - 2 H1 cos(2 pi m / (4N)) + 2 H2 cos(4 pi m / (4N)) - 2 H3 cos(6 pi m / (4N)).
 */
inline PrototypeFilter build_phydyas(int n_fft, int overlap) {
    if (overlap != 4) throw std::invalid_argument("build_phydyas: only overlap 4 is supported");
    if (n_fft < 4) throw std::invalid_argument("build_phydyas: n_fft must be >= 4");
    const double h1 = 0.971960;
    const double h2 = std::sqrt(2.0) / 2.0;
    const double h3 = 0.235147;
    const int len = overlap * n_fft;
    PrototypeFilter f;
    f.n_fft = n_fft;
    f.overlap = static_cast<double>(overlap);
    f.taps.resize(len);
    for (int m = 0; m < len; ++m) {
        const double u = 2.0 * M_PI * m / static_cast<double>(len);
        f.taps(m) = 1.0 - 2.0 * h1 * std::cos(u) + 2.0 * h2 * std::cos(2.0 * u) -
                    2.0 * h3 * std::cos(3.0 * u);
    }
    f.taps /= f.taps.norm();
    return f;
}

// Segments g_o = taps[o*N/2 ... o*N/2 + N/2 - 1], o = 0 .. 2*overlap-1.
inline std::vector<RVec> filter_segments(const PrototypeFilter& f) {
    const int half = f.n_fft / 2;
    const int nseg = f.n_segments();
    std::vector<RVec> segs(nseg);
    for (int o = 0; o < nseg; ++o) segs[o] = f.taps.segment(o * half, half);
    return segs;
}

} // namespace fb2d
