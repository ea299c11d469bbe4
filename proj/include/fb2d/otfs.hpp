#pragma once

#include "fb2d/complex_matrix.hpp"
#include "fb2d/fft.hpp"

#include <vector>

namespace fb2d {

/**
 * OFDM-core OTFS baseline: L x K delay-Doppler grid, ISFFT to the
 * time-frequency grid, per-symbol N-point IFFT on band bins 0..L-1 with a
 * cyclic prefix. N == L is the critically sampled Table III configuration.
 */
struct OtfsConfig {
    int L = 128;
    int k_doppler = 8;
    int cp_len = 8;
    int n_fft = 128;

    void validate() const {
        if (L < 2 || !is_pow2(static_cast<std::size_t>(L)))
            throw std::invalid_argument("OtfsConfig: L must be a power of two");
        if (k_doppler < 1 || !is_pow2(static_cast<std::size_t>(k_doppler)))
            throw std::invalid_argument("OtfsConfig: K must be a power of two");
        if (n_fft < L || !is_pow2(static_cast<std::size_t>(n_fft)))
            throw std::invalid_argument("OtfsConfig: N must be a power of two >= L");
        if (cp_len < 0 || cp_len >= n_fft) throw std::invalid_argument("OtfsConfig: bad cp_len");
    }

    int symbol_len() const { return n_fft + cp_len; }
    int frame_len() const { return k_doppler * symbol_len(); }
    int data_per_frame() const { return L * k_doppler; }
};

// X_OTFS = W_L A W_K^H.
inline CMat otfs_isfft(const CMat& a, const OtfsConfig& cfg) {
    if (a.rows() != cfg.L || a.cols() != cfg.k_doppler)
        throw std::invalid_argument("otfs_isfft: dimension mismatch");
    CMat x(cfg.L, cfg.k_doppler);
    std::vector<cplx> buf(static_cast<std::size_t>(cfg.L));
    for (int k = 0; k < cfg.k_doppler; ++k) {
        for (int l = 0; l < cfg.L; ++l) buf[static_cast<std::size_t>(l)] = a(l, k);
        fft_unitary(buf);
        for (int l = 0; l < cfg.L; ++l) x(l, k) = buf[static_cast<std::size_t>(l)];
    }
    if (cfg.k_doppler > 1) {
        std::vector<cplx> row(static_cast<std::size_t>(cfg.k_doppler));
        for (int l = 0; l < cfg.L; ++l) {
            for (int k = 0; k < cfg.k_doppler; ++k) row[static_cast<std::size_t>(k)] = x(l, k);
            ifft_unitary(row);
            for (int k = 0; k < cfg.k_doppler; ++k) x(l, k) = row[static_cast<std::size_t>(k)];
        }
    }
    return x;
}

// A~ = W_L^H X~ W_K (SFFT).
inline CMat otfs_sfft(const CMat& x, const OtfsConfig& cfg) {
    CMat a(cfg.L, cfg.k_doppler);
    std::vector<cplx> buf(static_cast<std::size_t>(cfg.L));
    for (int k = 0; k < cfg.k_doppler; ++k) {
        for (int l = 0; l < cfg.L; ++l) buf[static_cast<std::size_t>(l)] = x(l, k);
        ifft_unitary(buf);
        for (int l = 0; l < cfg.L; ++l) a(l, k) = buf[static_cast<std::size_t>(l)];
    }
    if (cfg.k_doppler > 1) {
        std::vector<cplx> row(static_cast<std::size_t>(cfg.k_doppler));
        for (int l = 0; l < cfg.L; ++l) {
            for (int k = 0; k < cfg.k_doppler; ++k) row[static_cast<std::size_t>(k)] = a(l, k);
            fft_unitary(row);
            for (int k = 0; k < cfg.k_doppler; ++k) a(l, k) = row[static_cast<std::size_t>(k)];
        }
    }
    return a;
}

// Map one time-frequency column to a CP-prefixed OFDM symbol.
inline void otfs_ofdm_symbol(const CMat& x, int k, const OtfsConfig& cfg, CVec& s, int offset) {
    std::vector<cplx> buf(static_cast<std::size_t>(cfg.n_fft), cplx(0.0, 0.0));
    for (int l = 0; l < cfg.L; ++l) buf[static_cast<std::size_t>(l)] = x(l, k);
    ifft_unitary(buf);
    for (int i = 0; i < cfg.cp_len; ++i)
        s(offset + i) = buf[static_cast<std::size_t>(cfg.n_fft - cfg.cp_len + i)];
    for (int i = 0; i < cfg.n_fft; ++i) s(offset + cfg.cp_len + i) = buf[static_cast<std::size_t>(i)];
}

// Full OTFS modulation: ISFFT, per-symbol IFFT on band bins, CP, serialize.
inline CVec otfs_modulate(const CMat& a, const OtfsConfig& cfg) {
    const CMat x = otfs_isfft(a, cfg);
    CVec s(cfg.frame_len());
    for (int k = 0; k < cfg.k_doppler; ++k) otfs_ofdm_symbol(x, k, cfg, s, k * cfg.symbol_len());
    return s;
}

// TF grid from received samples: drop CP, N-point DFT, keep band bins.
inline CMat otfs_tf_grid(const CVec& r, const OtfsConfig& cfg) {
    if (r.size() != cfg.frame_len()) throw std::invalid_argument("otfs_tf_grid: length mismatch");
    CMat y(cfg.L, cfg.k_doppler);
    std::vector<cplx> buf(static_cast<std::size_t>(cfg.n_fft));
    for (int k = 0; k < cfg.k_doppler; ++k) {
        const int base = k * cfg.symbol_len() + cfg.cp_len;
        for (int i = 0; i < cfg.n_fft; ++i) buf[static_cast<std::size_t>(i)] = r(base + i);
        fft_unitary(buf);
        for (int l = 0; l < cfg.L; ++l) y(l, k) = buf[static_cast<std::size_t>(l)];
    }
    return y;
}

// Demodulation to the delay-Doppler grid; e (vec-ordered, may be empty for
// the bypass) is the per-bin equalizer applied between the DFT and the SFFT.
inline CMat otfs_demodulate(const CVec& r, const OtfsConfig& cfg, const CVec& e = CVec()) {
    CMat y = otfs_tf_grid(r, cfg);
    if (e.size() != 0) {
        if (e.size() != y.size()) throw std::invalid_argument("otfs_demodulate: equalizer size");
        for (int k = 0; k < cfg.k_doppler; ++k)
            for (int l = 0; l < cfg.L; ++l) y(l, k) *= e(static_cast<Eigen::Index>(k) * cfg.L + l);
    }
    return otfs_sfft(y, cfg);
}

// Transmit-side column (IFFT + CP) of the map vec(X) -> samples.
inline CVec otfs_gbar_column(const OtfsConfig& cfg, int l, int k) {
    CVec col = CVec::Zero(cfg.frame_len());
    const double s = 1.0 / std::sqrt(static_cast<double>(cfg.n_fft));
    const int base = k * cfg.symbol_len();
    for (int i = 0; i < cfg.n_fft + cfg.cp_len; ++i) {
        const int n = (i - cfg.cp_len + cfg.n_fft) % cfg.n_fft;  // CP copies the tail
        const double ang = 2.0 * M_PI * static_cast<double>(l) * n / static_cast<double>(cfg.n_fft);
        col(base + i) = cplx(std::cos(ang), std::sin(ang)) * s;
    }
    return col;
}

// Receive-side column (CP discarded) of the map vec(Y) <- samples.
inline CVec otfs_rx_column(const OtfsConfig& cfg, int l, int k) {
    CVec col = CVec::Zero(cfg.frame_len());
    const double s = 1.0 / std::sqrt(static_cast<double>(cfg.n_fft));
    const int base = k * cfg.symbol_len() + cfg.cp_len;
    for (int n = 0; n < cfg.n_fft; ++n) {
        const double ang = 2.0 * M_PI * static_cast<double>(l) * n / static_cast<double>(cfg.n_fft);
        col(base + n) = cplx(std::cos(ang), std::sin(ang)) * s;
    }
    return col;
}

// Dense transmit map vec(X_OTFS) -> transmitted samples.
inline CMat otfs_global_matrix(const OtfsConfig& cfg) {
    CMat g(cfg.frame_len(), static_cast<Eigen::Index>(cfg.L) * cfg.k_doppler);
    for (int k = 0; k < cfg.k_doppler; ++k)
        for (int l = 0; l < cfg.L; ++l)
            g.col(static_cast<Eigen::Index>(k) * cfg.L + l) = otfs_gbar_column(cfg, l, k);
    return g;
}

// Dense receive map (analysis side, CP dropped).
inline CMat otfs_receive_matrix(const OtfsConfig& cfg) {
    CMat b(cfg.frame_len(), static_cast<Eigen::Index>(cfg.L) * cfg.k_doppler);
    for (int k = 0; k < cfg.k_doppler; ++k)
        for (int l = 0; l < cfg.L; ++l)
            b.col(static_cast<Eigen::Index>(k) * cfg.L + l) = otfs_rx_column(cfg, l, k);
    return b;
}

// Dense coding matrix (I_K kron W_L)(W_K^H kron I_L): vec(X) = C vec(A).
inline CMat otfs_coding_matrix(const OtfsConfig& cfg) {
    const CMat ik = CMat::Identity(cfg.k_doppler, cfg.k_doppler);
    const CMat il = CMat::Identity(cfg.L, cfg.L);
    return kron(ik, dft_matrix(cfg.L)) * kron(dft_matrix(cfg.k_doppler).adjoint(), il);
}

inline CVec otfs_coding_apply(const CVec& a, const OtfsConfig& cfg) {
    return vec(otfs_isfft(unvec(a, cfg.L, cfg.k_doppler), cfg));
}

inline CVec otfs_coding_adjoint(const CVec& x, const OtfsConfig& cfg) {
    return vec(otfs_sfft(unvec(x, cfg.L, cfg.k_doppler), cfg));
}

} // namespace fb2d
