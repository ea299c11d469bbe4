#pragma once

#include "fb2d/complex_matrix.hpp"
#include "fb2d/fft.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace fb2d {

inline double papr_db(const CVec& frame) {
    double peak = 0.0, mean = 0.0;
    for (Eigen::Index i = 0; i < frame.size(); ++i) {
        const double p = std::norm(frame(i));
        peak = std::max(peak, p);
        mean += p;
    }
    mean /= static_cast<double>(frame.size());
    return 10.0 * std::log10(peak / mean);
}

struct CcdfCurve {
    std::vector<double> thresholds_db;
    std::vector<double> probabilities;
    std::size_t sample_count = 0;
};

inline CcdfCurve papr_ccdf_from_values(std::vector<double> paprs,
                                       const std::vector<double>& thresholds_db) {
    if (paprs.empty()) throw std::invalid_argument("papr_ccdf: no frames");
    std::sort(paprs.begin(), paprs.end());
    CcdfCurve c;
    c.thresholds_db = thresholds_db;
    c.sample_count = paprs.size();
    for (double th : thresholds_db) {
        const auto it = std::upper_bound(paprs.begin(), paprs.end(), th);
        c.probabilities.push_back(static_cast<double>(paprs.end() - it) /
                                  static_cast<double>(paprs.size()));
    }
    return c;
}

inline CcdfCurve papr_ccdf(const std::vector<CVec>& frames,
                           const std::vector<double>& thresholds_db) {
    std::vector<double> v;
    v.reserve(frames.size());
    for (const auto& f : frames) v.push_back(papr_db(f));
    return papr_ccdf_from_values(std::move(v), thresholds_db);
}

// PAPR value at a CCDF level (empirical quantile of the sorted PAPRs).
inline double papr_at_ccdf(std::vector<double> paprs, double ccdf) {
    std::sort(paprs.begin(), paprs.end());
    const auto n = static_cast<double>(paprs.size());
    auto idx = static_cast<std::size_t>(std::min(n - 1.0, std::floor(n * (1.0 - ccdf))));
    return paprs[idx];
}

struct PsdCurve {
    std::vector<double> freqs_hz;   // centered (fftshift order)
    std::vector<double> power_db;   // peak-normalized, max == 0 dB
};

/**
 * Welch periodogram accumulator: Hann window, configurable segment length
 * and overlap, averaged across add() calls (frames), peak-normalized and
 * fftshifted on finalize().
 */
class PsdAccumulator {
public:
    PsdAccumulator(int segment_len, double overlap_frac, double fs)
        : seg_(segment_len), step_(std::max(1, static_cast<int>(segment_len * (1.0 - overlap_frac)))),
          fs_(fs), acc_(static_cast<std::size_t>(segment_len), 0.0) {
        if (!is_pow2(static_cast<std::size_t>(segment_len)))
            throw std::invalid_argument("PsdAccumulator: segment must be a power of two");
        win_.resize(static_cast<std::size_t>(segment_len));
        for (int i = 0; i < segment_len; ++i)
            win_[static_cast<std::size_t>(i)] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / segment_len);
    }

    void add(const CVec& s) {
        if (s.size() < seg_) throw std::invalid_argument("psd: segment longer than signal");
        std::vector<cplx> buf(static_cast<std::size_t>(seg_));
        for (Eigen::Index start = 0; start + seg_ <= s.size(); start += step_) {
            for (int i = 0; i < seg_; ++i)
                buf[static_cast<std::size_t>(i)] = s(start + i) * win_[static_cast<std::size_t>(i)];
            fft_raw(buf.data(), buf.size(), -1);
            for (int i = 0; i < seg_; ++i) acc_[static_cast<std::size_t>(i)] += std::norm(buf[static_cast<std::size_t>(i)]);
            ++count_;
        }
    }

    // Mean time-domain power implied by the accumulated periodograms
    // (window-gain compensated); used for the Parseval check.
    double mean_power() const {
        double wp = 0.0;
        for (double w : win_) wp += w * w;
        double tot = 0.0;
        for (double a : acc_) tot += a;
        return tot / (static_cast<double>(count_) * wp * seg_);
    }

    PsdCurve finalize() const {
        if (count_ == 0) throw std::runtime_error("psd: no segments accumulated");
        PsdCurve c;
        const double peak = *std::max_element(acc_.begin(), acc_.end());
        c.freqs_hz.resize(static_cast<std::size_t>(seg_));
        c.power_db.resize(static_cast<std::size_t>(seg_));
        for (int i = 0; i < seg_; ++i) {  // fftshift: i=0 is -fs/2
            const int bin = (i + seg_ / 2) % seg_;
            c.freqs_hz[static_cast<std::size_t>(i)] = (i - seg_ / 2) * fs_ / seg_;
            c.power_db[static_cast<std::size_t>(i)] =
                10.0 * std::log10(std::max(acc_[static_cast<std::size_t>(bin)] / peak, 1e-300));
        }
        return c;
    }

    // Raw (unshifted) normalized power at an FFT bin index modulo segment length.
    double power_db_at_bin(int bin) const {
        const double peak = *std::max_element(acc_.begin(), acc_.end());
        const int b = ((bin % seg_) + seg_) % seg_;
        return 10.0 * std::log10(std::max(acc_[static_cast<std::size_t>(b)] / peak, 1e-300));
    }

private:
    int seg_;
    int step_;
    double fs_;
    std::vector<double> acc_;
    std::vector<double> win_;
    std::size_t count_ = 0;
};

inline PsdCurve psd_welch(const CVec& s, int segment_len, double overlap_frac, double fs) {
    PsdAccumulator acc(segment_len, overlap_frac, fs);
    acc.add(s);
    return acc.finalize();
}

inline std::pair<std::uint64_t, std::uint64_t> ber_count(const std::vector<std::uint8_t>& tx,
                                                         const std::vector<std::uint8_t>& rx) {
    if (tx.size() != rx.size()) throw std::invalid_argument("ber_count: length mismatch");
    std::uint64_t errs = 0;
    for (std::size_t i = 0; i < tx.size(); ++i) errs += (tx[i] ^ rx[i]) & 1;
    return {errs, tx.size()};
}

enum class Scheme { fbmc, dft_precoded_fb, otfs, fft2d_fb };
enum class Receiver { mmse_freq, mmse_dd, hybrid_iic };

struct ComplexityParams {
    double L = 128, N = 256, K = 8, k_prime = 16, overlap = 1.5;
};

// Transmitter multiplication counts (log base 2 throughout).
inline double complexity_tx(Scheme s, const ComplexityParams& p) {
    switch (s) {
        case Scheme::fbmc:
            return p.L + p.N * std::log2(p.N) + p.overlap * p.N;
        case Scheme::dft_precoded_fb:
            return 2.0 * (p.L / 2.0 + p.L * std::log2(p.L / 2.0) + p.N * std::log2(p.N) +
                          p.overlap * p.N);
        case Scheme::otfs:
            return p.L * p.K * std::log2(p.L) + p.L * p.K * std::log2(p.K) + p.L * std::log2(p.L);
        case Scheme::fft2d_fb:
            return p.L / 2.0 + p.L * p.k_prime * std::log2(p.L / 2.0) +
                   (p.L / 2.0) * p.k_prime * std::log2(p.k_prime) + p.N * std::log2(p.N) +
                   p.overlap * p.N;
    }
    throw std::invalid_argument("complexity_tx: unknown scheme");
}

// Receiver multiplication counts; for OTFS, K replaces K' and the squared
// and cubed terms are not halved.
inline double complexity_rx(Scheme s, Receiver r, const ComplexityParams& p) {
    const bool otfs = (s == Scheme::otfs);
    const double block = otfs ? p.L * p.K : p.L * p.k_prime;
    const double half = otfs ? block : block / 2.0;
    switch (r) {
        case Receiver::mmse_freq:
            return block;
        case Receiver::mmse_dd:
            return half * half * half + half * half;
        case Receiver::hybrid_iic:
            return block + half * half;
    }
    throw std::invalid_argument("complexity_rx: unknown receiver");
}

inline std::pair<double, double> complexity_estimate(Scheme s, Receiver r,
                                                     const ComplexityParams& p) {
    return {complexity_tx(s, p), complexity_rx(s, r, p)};
}

} // namespace fb2d
