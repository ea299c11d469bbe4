#pragma once

#include "fb2d/complex_matrix.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace fb2d {

// SplitMix64; used everywhere a derived deterministic seed is needed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/**
 * Tapped-delay-line profile of a doubly-selective Rayleigh channel.
 * Sample rate is the multicarrier rate N*F.
 */
struct ChannelProfile {
    std::vector<double> tap_delays_s;
    std::vector<double> tap_powers_db;
    double velocity_mps = 0.0;
    double carrier_hz = 2.5e9;
    double sample_rate_hz = 3.84e6;

    static constexpr double speed_of_light = 299792458.0;

    double max_doppler_hz() const { return velocity_mps * carrier_hz / speed_of_light; }

    // ITU-R M.1225 Vehicular A power-delay profile.
    static ChannelProfile itu_vehicular_a(double velocity_kmh, double carrier_hz,
                                          double sample_rate_hz) {
        ChannelProfile p;
        p.tap_delays_s = {0.0, 310e-9, 710e-9, 1090e-9, 1730e-9, 2510e-9};
        p.tap_powers_db = {0.0, -1.0, -9.0, -10.0, -15.0, -20.0};
        p.velocity_mps = velocity_kmh / 3.6;
        p.carrier_hz = carrier_hz;
        p.sample_rate_hz = sample_rate_hz;
        return p;
    }

    static ChannelProfile single_tap(double velocity_kmh, double carrier_hz,
                                     double sample_rate_hz) {
        ChannelProfile p;
        p.tap_delays_s = {0.0};
        p.tap_powers_db = {0.0};
        p.velocity_mps = velocity_kmh / 3.6;
        p.carrier_hz = carrier_hz;
        p.sample_rate_hz = sample_rate_hz;
        return p;
    }
};

/**
 * One fading realization: per-lag complex gain time series h[m, lag].
 * Lags are in samples (delays rounded to the sample grid, powers of
 * coinciding delays merged); total mean power is one.
 */
struct ChannelRealization {
    CMat taps;              // m_samples x n_lags
    std::vector<int> lags;  // nondecreasing, lags[0] == 0
    std::uint64_t seed = 0;

    int time_extent() const { return static_cast<int>(taps.rows()); }
    int max_lag() const { return lags.empty() ? 0 : lags.back(); }
};

// Sum-of-sinusoids Jakes fading: each lag is an independent complex process
// (1/sqrt(Ns)) sum_n exp(j(2 pi fd cos(alpha_n) t + phi_n)) scaled by the
// lag's linear power; alpha_n, phi_n i.i.d. uniform. Matches the J0(2 pi fd tau)
// autocorrelation and is deterministic in the seed.
inline ChannelRealization generate_channel(const ChannelProfile& p, int m_samples,
                                           std::uint64_t seed, int n_sinusoids = 64) {
    if (p.sample_rate_hz <= 0.0) throw std::invalid_argument("generate_channel: bad sample rate");
    if (m_samples < 1) throw std::invalid_argument("generate_channel: m_samples must be >= 1");
    const double fd = p.max_doppler_hz();
    if (fd >= p.sample_rate_hz / 2.0)
        throw std::invalid_argument("generate_channel: Doppler exceeds Nyquist");

    // merge delays that round to the same lag
    std::vector<int> lags;
    std::vector<double> powers;
    {
        double total = 0.0;
        for (double pw : p.tap_powers_db) total += std::pow(10.0, pw / 10.0);
        for (std::size_t t = 0; t < p.tap_delays_s.size(); ++t) {
            const int lag = static_cast<int>(std::lround(p.tap_delays_s[t] * p.sample_rate_hz));
            const double pl = std::pow(10.0, p.tap_powers_db[t] / 10.0) / total;
            auto it = std::find(lags.begin(), lags.end(), lag);
            if (it == lags.end()) {
                lags.push_back(lag);
                powers.push_back(pl);
            } else {
                powers[static_cast<std::size_t>(it - lags.begin())] += pl;
            }
        }
    }

    ChannelRealization ch;
    ch.seed = seed;
    ch.lags = lags;
    ch.taps.resize(m_samples, static_cast<Eigen::Index>(lags.size()));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double step_scale = 2.0 * M_PI * fd / p.sample_rate_hz;
    for (std::size_t j = 0; j < lags.size(); ++j) {
        const double amp = std::sqrt(powers[j] / n_sinusoids);
        std::vector<cplx> phasor(static_cast<std::size_t>(n_sinusoids));
        std::vector<cplx> rot(static_cast<std::size_t>(n_sinusoids));
        for (int n = 0; n < n_sinusoids; ++n) {
            const double alpha = 2.0 * M_PI * uni(rng);
            const double phi0 = 2.0 * M_PI * uni(rng);
            const double w = step_scale * std::cos(alpha);
            phasor[static_cast<std::size_t>(n)] = cplx(std::cos(phi0), std::sin(phi0));
            rot[static_cast<std::size_t>(n)] = cplx(std::cos(w), std::sin(w));
        }
        for (int m = 0; m < m_samples; ++m) {
            cplx acc(0.0, 0.0);
            for (int n = 0; n < n_sinusoids; ++n) {
                acc += phasor[static_cast<std::size_t>(n)];
                phasor[static_cast<std::size_t>(n)] *= rot[static_cast<std::size_t>(n)];
            }
            ch.taps(m, static_cast<Eigen::Index>(j)) = amp * acc;
            if ((m & 0xFFF) == 0xFFF)  // keep the recursions on the unit circle
                for (auto& ph : phasor) ph /= std::abs(ph);
        }
    }
    return ch;
}

// r[m] = sum_l h[m, l] s[m - lag_l], linear (non-cyclic) convolution.
inline CVec apply_channel(const CVec& s, const ChannelRealization& ch) {
    if (s.size() != ch.time_extent())
        throw std::invalid_argument("apply_channel: length mismatch");
    CVec r = CVec::Zero(s.size());
    for (std::size_t j = 0; j < ch.lags.size(); ++j) {
        const int lag = ch.lags[j];
        for (Eigen::Index m = lag; m < s.size(); ++m)
            r(m) += ch.taps(m, static_cast<Eigen::Index>(j)) * s(m - lag);
    }
    return r;
}

// Banded apply restricted to input support [first, first+count): output on
// [first, min(M, first+count+max_lag)). Used by the per-column equalizer builders.
inline void apply_channel_windowed(const CVec& s, const ChannelRealization& ch, int first,
                                   int count, CVec& out) {
    const int m_total = ch.time_extent();
    const int last = std::min(m_total, first + count + ch.max_lag());
    for (int m = first; m < last; ++m) out(m) = cplx(0.0, 0.0);
    for (std::size_t j = 0; j < ch.lags.size(); ++j) {
        const int lag = ch.lags[j];
        const int lo = std::max(first + lag, lag);
        const int hi = std::min(m_total, first + count + lag);
        for (int m = lo; m < hi; ++m)
            out(m) += ch.taps(m, static_cast<Eigen::Index>(j)) * s(m - lag);
    }
}

// Dense lower-banded convolution matrix, [H]_{m, m-lag} = h[m, lag].
inline CMat dense_matrix(const ChannelRealization& ch, int m) {
    if (m != ch.time_extent()) throw std::invalid_argument("dense_matrix: extent mismatch");
    CMat h = CMat::Zero(m, m);
    for (std::size_t j = 0; j < ch.lags.size(); ++j) {
        const int lag = ch.lags[j];
        for (int row = lag; row < m; ++row)
            h(row, row - lag) = ch.taps(row, static_cast<Eigen::Index>(j));
    }
    return h;
}

// Circular complex Gaussian noise, variance sigma2 per sample (Box-Muller,
// deterministic in the seed).
inline CVec add_awgn(const CVec& x, double sigma2, std::uint64_t seed) {
    if (sigma2 < 0.0) throw std::invalid_argument("add_awgn: negative noise power");
    if (sigma2 == 0.0) return x;
    CVec out = x;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double s = std::sqrt(sigma2 / 2.0);
    for (Eigen::Index m = 0; m < out.size(); ++m) {
        double u1 = uni(rng);
        while (u1 <= 0.0) u1 = uni(rng);
        const double u2 = uni(rng);
        const double mag = std::sqrt(-2.0 * std::log(u1));
        out(m) += s * cplx(mag * std::cos(2.0 * M_PI * u2), mag * std::sin(2.0 * M_PI * u2));
    }
    return out;
}

} // namespace fb2d
