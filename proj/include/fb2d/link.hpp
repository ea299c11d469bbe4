#pragma once

#include "fb2d/channel.hpp"
#include "fb2d/equalizers.hpp"
#include "fb2d/filterbank.hpp"
#include "fb2d/grid.hpp"
#include "fb2d/metrics.hpp"
#include "fb2d/otfs.hpp"
#include "fb2d/precoder.hpp"
#include "fb2d/qam.hpp"

#include <cstdint>
#include <optional>

namespace fb2d {

inline BitVec random_bits(std::size_t n, std::uint64_t seed) {
    BitVec bits(n);
    std::mt19937_64 rng(seed);
    std::uint64_t word = 0;
    int left = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (left == 0) {
            word = rng();
            left = 64;
        }
        bits[i] = static_cast<std::uint8_t>(word & 1);
        word >>= 1;
        --left;
    }
    return bits;
}

/**
 * 2D-FFT precoded filter bank transceiver: grid, Hermite prototype,
 * compensation vector and the derived scale constants, wired to the three
 * receivers. The per-bin one-tap channel is Gram-normalized (alpha = N *
 * diag(Gbar^H H Gbar), unity for the identity channel) so mmse_one_tap's
 * output drives the post-coder at unit end-to-end gain.
 */
struct FbLink {
    GridConfig cfg;
    PrototypeFilter filter;
    SynthesisPlan plan;
    CompensationVector comp;
    std::vector<int> active;  // vec-ordered data positions
    double px = 0.0;          // E|x_bin|^2
    double ps = 0.0;          // E|s[m]|^2

    static FbLink make(const GridConfig& cfg) {
        FbLink f;
        f.cfg = cfg;
        f.filter = build_hermite(cfg.n_fft);
        f.plan = SynthesisPlan::make(cfg, f.filter);
        f.comp = compensation_vector(f.filter, cfg);
        f.active = cfg.active_indices();
        double sb2 = 0.0;
        for (int i : cfg.active_rows()) sb2 += f.comp.b_tilde(i) * f.comp.b_tilde(i);
        f.px = sb2 / cfg.L;
        f.ps = (static_cast<double>(cfg.L) * cfg.k_prime / 2.0) / f.plan.M;
        return f;
    }

    int frame_samples() const { return plan.M; }
    int symbols_per_frame() const { return cfg.data_per_frame(); }

    CVec transmit(const CVec& symbols) const {
        return synthesize(isfft_precode(place_data(symbols, cfg), comp, cfg), plan);
    }

    // Gram-normalized one-tap channel. The tone structure of the Gbar
    // columns reduces diag(Gbar^H H Gbar) to per-(slot,lag) filter sums
    // times a per-(subcarrier,lag) phase.
    CVec one_tap_alpha(const ChannelRealization& ch) const {
        const int L = cfg.L, N = cfg.n_fft, Kp = cfg.k_prime;
        const auto& g = filter.taps;
        CVec alpha = CVec::Zero(static_cast<Eigen::Index>(L) * Kp);
        const std::size_t nl = ch.lags.size();
        CMat w(Kp, static_cast<Eigen::Index>(nl));
        for (int k = 0; k < Kp; ++k) {
            const int row0 = k * N / 2;
            for (std::size_t j = 0; j < nl; ++j) {
                const int lag = ch.lags[j];
                cplx acc(0.0, 0.0);
                for (int p = lag; p < plan.on; ++p)
                    acc += g(p) * g(p - lag) * ch.taps(row0 + p, static_cast<Eigen::Index>(j));
                w(k, static_cast<Eigen::Index>(j)) = acc;
            }
        }
        for (int l = 0; l < L; ++l) {
            std::vector<cplx> ph(nl);
            for (std::size_t j = 0; j < nl; ++j) {
                const double ang = -2.0 * M_PI * static_cast<double>(l) * ch.lags[j] / N;
                ph[j] = cplx(std::cos(ang), std::sin(ang));
            }
            for (int k = 0; k < Kp; ++k) {
                cplx acc(0.0, 0.0);
                for (std::size_t j = 0; j < nl; ++j) acc += w(k, static_cast<Eigen::Index>(j)) * ph[j];
                alpha(static_cast<Eigen::Index>(k) * L + l) = acc;  // times N/N: gram 1/N * N
            }
        }
        return alpha;
    }

    double effective_onetap_noise(double sigma2) const { return cfg.n_fft * sigma2 / px; }

    CVec equalizer(const ChannelRealization& ch, double sigma2) const {
        return mmse_one_tap(one_tap_alpha(ch), effective_onetap_noise(sigma2));
    }

    // One-tap MMSE receive: analysis, per-bin equalization, post-code, extract.
    CVec receive_onetap(const CVec& r, const ChannelRealization& ch, double sigma2) const {
        const CMat y = analyze(r, plan);
        const CMat xt = apply_one_tap(y, equalizer(ch, sigma2));
        return extract_data(isfft_postcode(xt, comp, cfg), cfg);
    }

    // Columns of C^H diag(e) Gbar^H H Gbar C for the listed vec positions
    // (e empty: no equalizer stage, i.e. the effective channel H_ef).
    CMat chain_columns(const ChannelRealization& ch, const std::vector<int>& cols,
                       const CVec& e = CVec()) const {
        const Eigen::Index n = static_cast<Eigen::Index>(cfg.L) * cfg.k_prime;
        CMat out(n, static_cast<Eigen::Index>(cols.size()));
        CVec unit = CVec::Zero(n);
        for (std::size_t c = 0; c < cols.size(); ++c) {
            unit(cols[c]) = 1.0;
            const CVec x = coding_apply(unit, comp, cfg);
            unit(cols[c]) = 0.0;
            const CVec s = synthesize(unvec(x, cfg.L, cfg.k_prime), plan);
            const CVec r = apply_channel(s, ch);
            CMat y = analyze(r, plan);
            if (e.size() != 0) y = apply_one_tap(y, e);
            out.col(static_cast<Eigen::Index>(c)) = coding_adjoint(vec(y), comp, cfg);
        }
        return out;
    }

    // Delay-Doppler MMSE on the active columns; returns data symbol estimates.
    CVec receive_dd(const CVec& r, const ChannelRealization& ch, double sigma2) const {
        const CVec a_tilde = coding_adjoint(vec(analyze(r, plan)), comp, cfg);
        const CMat h_act = chain_columns(ch, active);
        CMat gram = h_act.adjoint() * h_act;
        gram.diagonal().array() += sigma2;
        const CVec rhs = h_act.adjoint() * a_tilde;
        return gram.llt().solve(rhs);
    }

    // Hybrid receiver: one-tap MMSE stage, then interference cancellation in
    // the delay-Doppler domain with hard decisions.
    CVec receive_iic(const CVec& r, const ChannelRealization& ch, double sigma2,
                     const Constellation& c, int iterations) const {
        const CVec e = equalizer(ch, sigma2);
        const CMat y = apply_one_tap(analyze(r, plan), e);
        const CVec a_tilde_full = coding_adjoint(vec(y), comp, cfg);
        const CMat cols = chain_columns(ch, active, e);
        const Eigen::Index na = static_cast<Eigen::Index>(active.size());
        CMat r_act(na, na);
        CVec a_tilde(na);
        for (Eigen::Index i = 0; i < na; ++i) {
            a_tilde(i) = a_tilde_full(active[static_cast<std::size_t>(i)]);
            for (Eigen::Index j = 0; j < na; ++j)
                r_act(i, j) = cols(active[static_cast<std::size_t>(i)], j);
        }
        std::vector<int> all(static_cast<std::size_t>(na));
        for (Eigen::Index i = 0; i < na; ++i) all[static_cast<std::size_t>(i)] = static_cast<int>(i);
        const CVec a_hat = iic_equalize(a_tilde, r_act, c, iterations, all);
        CVec out(na);
        for (Eigen::Index i = 0; i < na; ++i) {
            const cplx d = r_act(i, i);
            out(i) = (d == cplx(0.0, 0.0)) ? a_hat(i) : a_hat(i) / d;
        }
        return out;
    }
};

/**
 * OFDM-core OTFS baseline sharing the channel and receiver structure.
 * The receive side discards the CP, so the one-tap channel uses the
 * CP-dropping analysis map (unit Gram).
 */
struct OtfsLink {
    OtfsConfig cfg;
    std::vector<int> all_indices;
    double ps = 0.0;

    static OtfsLink make(const OtfsConfig& cfg) {
        cfg.validate();
        OtfsLink o;
        o.cfg = cfg;
        o.all_indices.resize(static_cast<std::size_t>(cfg.L) * cfg.k_doppler);
        for (std::size_t i = 0; i < o.all_indices.size(); ++i) o.all_indices[i] = static_cast<int>(i);
        o.ps = static_cast<double>(cfg.L) / cfg.n_fft;
        return o;
    }

    int frame_samples() const { return cfg.frame_len(); }
    int symbols_per_frame() const { return cfg.data_per_frame(); }

    CVec transmit(const CVec& symbols) const {
        return otfs_modulate(unvec(symbols, cfg.L, cfg.k_doppler), cfg);
    }

    // alpha = diag(B^H H Gbar): per-(symbol,lag) tap sums over the DFT body,
    // times the per-(subcarrier,lag) phase.
    CVec one_tap_alpha(const ChannelRealization& ch) const {
        const int L = cfg.L, N = cfg.n_fft, K = cfg.k_doppler;
        CVec alpha = CVec::Zero(static_cast<Eigen::Index>(L) * K);
        const std::size_t nl = ch.lags.size();
        CMat w(K, static_cast<Eigen::Index>(nl));
        for (int k = 0; k < K; ++k) {
            const int base = k * cfg.symbol_len();
            for (std::size_t j = 0; j < nl; ++j) {
                const int lag = ch.lags[j];
                cplx acc(0.0, 0.0);
                const int lo = base + std::max(cfg.cp_len, lag);
                const int hi = base + cfg.cp_len + N;
                for (int m = lo; m < hi; ++m) acc += ch.taps(m, static_cast<Eigen::Index>(j));
                w(k, static_cast<Eigen::Index>(j)) = acc / static_cast<double>(N);
            }
        }
        for (int l = 0; l < L; ++l) {
            for (int k = 0; k < K; ++k) {
                cplx acc(0.0, 0.0);
                for (std::size_t j = 0; j < nl; ++j) {
                    const double ang = -2.0 * M_PI * static_cast<double>(l) * ch.lags[j] / N;
                    acc += w(k, static_cast<Eigen::Index>(j)) * cplx(std::cos(ang), std::sin(ang));
                }
                alpha(static_cast<Eigen::Index>(k) * L + l) = acc;
            }
        }
        return alpha;
    }

    CVec equalizer(const ChannelRealization& ch, double sigma2) const {
        return mmse_one_tap(one_tap_alpha(ch), sigma2);  // rx Gram and E|x|^2 are unity
    }

    CVec receive_onetap(const CVec& r, const ChannelRealization& ch, double sigma2) const {
        return vec(otfs_demodulate(r, cfg, equalizer(ch, sigma2)));
    }

    CMat chain_columns(const ChannelRealization& ch, const CVec& e = CVec()) const {
        const Eigen::Index n = static_cast<Eigen::Index>(cfg.L) * cfg.k_doppler;
        CMat out(n, n);
        CVec unit = CVec::Zero(n);
        for (Eigen::Index c = 0; c < n; ++c) {
            unit(c) = 1.0;
            const CVec x = otfs_coding_apply(unit, cfg);
            unit(c) = 0.0;
            CVec s(cfg.frame_len());
            const CMat xm = unvec(x, cfg.L, cfg.k_doppler);
            for (int k = 0; k < cfg.k_doppler; ++k)
                otfs_ofdm_symbol(xm, k, cfg, s, k * cfg.symbol_len());
            const CVec r = apply_channel(s, ch);
            CMat y = otfs_tf_grid(r, cfg);
            if (e.size() != 0)
                for (int k = 0; k < cfg.k_doppler; ++k)
                    for (int l = 0; l < cfg.L; ++l) y(l, k) *= e(static_cast<Eigen::Index>(k) * cfg.L + l);
            out.col(c) = otfs_coding_adjoint(vec(y), cfg);
        }
        return out;
    }

    CVec receive_dd(const CVec& r, const ChannelRealization& ch, double sigma2) const {
        const CVec a_tilde = otfs_coding_adjoint(vec(otfs_tf_grid(r, cfg)), cfg);
        const CMat h_ef = chain_columns(ch);
        return mmse_dd_equalize(h_ef, sigma2, a_tilde);
    }

    CVec receive_iic(const CVec& r, const ChannelRealization& ch, double sigma2,
                     const Constellation& c, int iterations) const {
        const CVec e = equalizer(ch, sigma2);
        const CVec a_tilde = vec(otfs_demodulate(r, cfg, e));
        const CMat rm = chain_columns(ch, e);
        const CVec a_hat = iic_equalize(a_tilde, rm, c, iterations, all_indices);
        CVec out(a_hat.size());
        for (Eigen::Index i = 0; i < a_hat.size(); ++i) {
            const cplx d = rm(i, i);
            out(i) = (d == cplx(0.0, 0.0)) ? a_hat(i) : a_hat(i) / d;
        }
        return out;
    }
};

/**
 * Plain OFDM link (no delay-Doppler precoding): QAM straight onto the
 * time-frequency grid. PAPR/PSD baseline and the flat-Rayleigh BER oracle
 * path; one-tap MMSE receiver only.
 */
struct OfdmLink {
    OtfsConfig cfg;
    double ps = 0.0;

    static OfdmLink make(const OtfsConfig& cfg) {
        cfg.validate();
        OfdmLink o;
        o.cfg = cfg;
        o.ps = static_cast<double>(cfg.L) / cfg.n_fft;
        return o;
    }

    int frame_samples() const { return cfg.frame_len(); }
    int symbols_per_frame() const { return cfg.data_per_frame(); }

    CVec transmit(const CVec& symbols) const {
        const CMat x = unvec(symbols, cfg.L, cfg.k_doppler);
        CVec s(cfg.frame_len());
        for (int k = 0; k < cfg.k_doppler; ++k) otfs_ofdm_symbol(x, k, cfg, s, k * cfg.symbol_len());
        return s;
    }

    CVec receive_onetap(const CVec& r, const ChannelRealization& ch, double sigma2) const {
        OtfsLink helper;
        helper.cfg = cfg;
        const CVec e = mmse_one_tap(helper.one_tap_alpha(ch), sigma2);
        CMat y = otfs_tf_grid(r, cfg);
        return vec(apply_one_tap(y, e));
    }
};

/**
 * FBMC/OQAM transmit path with the PHYDYAS pulse (overlap 4): real PAM at
 * double rate with the j^(l+k) stagger. PAPR/PSD baseline only.
 */
struct FbmcTx {
    GridConfig cfg;
    SynthesisPlan plan;

    static FbmcTx make(const GridConfig& cfg) {
        FbmcTx f;
        f.cfg = cfg;
        f.plan = SynthesisPlan::make(cfg, build_phydyas(cfg.n_fft, 4));
        return f;
    }

    int frame_samples() const { return plan.M; }

    CVec frame(std::uint64_t seed) const {
        std::mt19937_64 rng(seed);
        CMat x(cfg.L, cfg.k_prime);
        static const cplx jk[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        for (int k = 0; k < cfg.k_prime; ++k) {
            const cplx theta = jk[k % 4];
            for (int l = 0; l < cfg.L; ++l) {
                const double d = (rng() & 1) ? 1.0 : -1.0;
                x(l, k) = theta * d;  // plan's j^l phase supplies the subcarrier part
            }
        }
        return synthesize(x, plan);
    }
};

} // namespace fb2d
