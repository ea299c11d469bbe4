#pragma once

#include "fb2d/complex_matrix.hpp"
#include "fb2d/fft.hpp"
#include "fb2d/grid.hpp"
#include "fb2d/prototype_filter.hpp"

#include <vector>

namespace fb2d {

// Spread DFT matrix [I_L 0] W_N: L rows of the unitary N-point DFT.
inline CMat spread_dft(const GridConfig& cfg) {
    if (cfg.n_fft <= cfg.L) throw std::invalid_argument("spread_dft: N must exceed L");
    return dft_matrix(cfg.n_fft).topRows(cfg.L);
}

// Per-subcarrier alignment phase j^l between the precoder DFT and the
// filter bank IDFT (the pi/2 rotation of the filter bank modulator).
inline CVec subcarrier_phase(int L) {
    CVec phi(L);
    const cplx j(0.0, 1.0);
    cplx cur(1.0, 0.0);
    for (int l = 0; l < L; ++l) {
        phi(l) = cur;
        cur *= j;
    }
    return phi;
}

/**
 * Immutable synthesis/analysis plan: grid geometry, prototype filter and
 * derived constants. Transmit length M = O*N + (K'-1)*N/2.
 */
struct SynthesisPlan {
    GridConfig cfg;
    PrototypeFilter filter;
    CVec phase;  // j^l, length L
    int on = 0;  // tap count O*N
    int M = 0;

    static SynthesisPlan make(const GridConfig& cfg, const PrototypeFilter& f) {
        cfg.validate();
        if (f.n_fft != cfg.n_fft)
            throw std::invalid_argument("SynthesisPlan: filter n_fft mismatch");
        SynthesisPlan p;
        p.cfg = cfg;
        p.filter = f;
        p.phase = subcarrier_phase(cfg.L);
        p.on = static_cast<int>(f.taps.size());
        p.M = p.on + (cfg.k_prime - 1) * cfg.n_fft / 2;
        return p;
    }
};

// Dense Toeplitz filter matrix G (M x N*K'): symbol k's N samples enter at
// row offset k*N/2 through the stacked diagonal segments.
inline CMat toeplitz_matrix(const SynthesisPlan& plan) {
    const int N = plan.cfg.n_fft;
    const int Kp = plan.cfg.k_prime;
    CMat g = CMat::Zero(plan.M, static_cast<Eigen::Index>(N) * Kp);
    for (int k = 0; k < Kp; ++k) {
        const int row0 = k * N / 2;
        for (int p = 0; p < plan.on; ++p)
            g(row0 + p, static_cast<Eigen::Index>(k) * N + (p % N)) = plan.filter.taps(p);
    }
    return g;
}

// Single-symbol slice of G (O*N x N), the G-tilde used by the compensation stage.
inline CMat toeplitz_single_symbol(const PrototypeFilter& f) {
    const int N = f.n_fft;
    const int on = static_cast<int>(f.taps.size());
    CMat g = CMat::Zero(on, N);
    for (int p = 0; p < on; ++p) g(p, p % N) = f.taps(p);
    return g;
}

// s = G vec(W_tilde^H Phi X): per-symbol N-point IFFT of the zero-padded,
// phase-aligned column, periodic extension windowed by the filter,
// overlap-add at stride N/2.
inline CVec synthesize(const CMat& x, const SynthesisPlan& plan) {
    const int L = plan.cfg.L;
    const int N = plan.cfg.n_fft;
    const int Kp = plan.cfg.k_prime;
    if (x.rows() != L || x.cols() != Kp)
        throw std::invalid_argument("synthesize: grid dimension mismatch");
    CVec s = CVec::Zero(plan.M);
    std::vector<cplx> col(static_cast<std::size_t>(N));
    for (int k = 0; k < Kp; ++k) {
        std::fill(col.begin(), col.end(), cplx(0.0, 0.0));
        for (int l = 0; l < L; ++l) col[static_cast<std::size_t>(l)] = plan.phase(l) * x(l, k);
        ifft_unitary(col);
        const int row0 = k * N / 2;
        for (int p = 0; p < plan.on; ++p)
            s(row0 + p) += plan.filter.taps(p) * col[static_cast<std::size_t>(p & (N - 1))];
    }
    return s;
}

// Y columns y_k = Phi^H W_tilde (G^T r)_k: windowed fold into N samples,
// forward FFT, keep the first L bins.
inline CMat analyze(const CVec& r, const SynthesisPlan& plan) {
    const int L = plan.cfg.L;
    const int N = plan.cfg.n_fft;
    const int Kp = plan.cfg.k_prime;
    if (r.size() != plan.M) throw std::invalid_argument("analyze: input length mismatch");
    CMat y(L, Kp);
    std::vector<cplx> z(static_cast<std::size_t>(N));
    for (int k = 0; k < Kp; ++k) {
        std::fill(z.begin(), z.end(), cplx(0.0, 0.0));
        const int row0 = k * N / 2;
        for (int p = 0; p < plan.on; ++p)
            z[static_cast<std::size_t>(p & (N - 1))] += plan.filter.taps(p) * r(row0 + p);
        fft_unitary(z);
        for (int l = 0; l < L; ++l) y(l, k) = std::conj(plan.phase(l)) * z[static_cast<std::size_t>(l)];
    }
    return y;
}

// Column of the global transmit matrix G_bar for position (l, k):
// the phase-aligned tone windowed by the filter at offset k*N/2.
inline CVec gbar_column(const SynthesisPlan& plan, int l, int k) {
    const int N = plan.cfg.n_fft;
    CVec col = CVec::Zero(plan.M);
    const double s = 1.0 / std::sqrt(static_cast<double>(N));
    const int row0 = k * N / 2;
    for (int p = 0; p < plan.on; ++p) {
        const int n = p & (N - 1);
        const double ang = 2.0 * M_PI * static_cast<double>(l) * n / static_cast<double>(N);
        col(row0 + p) = plan.filter.taps(p) * plan.phase(l) * cplx(std::cos(ang), std::sin(ang)) * s;
    }
    return col;
}

// Dense G_bar = G (I_{K'} kron (W_tilde^H Phi)), M x L*K'.
inline CMat global_matrix(const SynthesisPlan& plan) {
    const int L = plan.cfg.L;
    const int Kp = plan.cfg.k_prime;
    CMat gbar(plan.M, static_cast<Eigen::Index>(L) * Kp);
    for (int k = 0; k < Kp; ++k)
        for (int l = 0; l < L; ++l)
            gbar.col(static_cast<Eigen::Index>(k) * L + l) = gbar_column(plan, l, k);
    return gbar;
}

} // namespace fb2d
