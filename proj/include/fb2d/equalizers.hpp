#pragma once

#include "fb2d/complex_matrix.hpp"
#include "fb2d/qam.hpp"

#include <vector>

namespace fb2d {

// h = diag(G_rx^H H G_tx), computed column-wise without forming the product.
inline CVec one_tap_channel(const CMat& h, const CMat& g_rx, const CMat& g_tx) {
    if (h.rows() != h.cols() || g_tx.rows() != h.rows() || g_rx.rows() != h.rows() ||
        g_rx.cols() != g_tx.cols())
        throw std::invalid_argument("one_tap_channel: dimension mismatch");
    CVec out(g_tx.cols());
    for (Eigen::Index i = 0; i < g_tx.cols(); ++i)
        out(i) = g_rx.col(i).dot(h * g_tx.col(i));  // dot is conjugate-linear in the lhs
    return out;
}

inline CVec one_tap_channel(const CMat& h, const CMat& g_bar) {
    return one_tap_channel(h, g_bar, g_bar);
}

// e = h^* / (|h|^2 + sigma2); sigma2 = 0 degenerates to ZF.
inline CVec mmse_one_tap(const CVec& h, double sigma2) {
    if (sigma2 < 0.0) throw std::invalid_argument("mmse_one_tap: negative noise power");
    CVec e(h.size());
    for (Eigen::Index i = 0; i < h.size(); ++i) {
        const double den = std::norm(h(i)) + sigma2;
        if (den == 0.0) throw std::runtime_error("mmse_one_tap: singular equalizer (h=0, sigma2=0)");
        e(i) = std::conj(h(i)) / den;
    }
    return e;
}

// x~_k = diag(e_k) y_k; e is vec-ordered (l + L*k).
inline CMat apply_one_tap(const CMat& y, const CVec& e) {
    if (e.size() != y.size()) throw std::invalid_argument("apply_one_tap: dimension mismatch");
    CMat out(y.rows(), y.cols());
    for (Eigen::Index k = 0; k < y.cols(); ++k)
        for (Eigen::Index l = 0; l < y.rows(); ++l) out(l, k) = e(k * y.rows() + l) * y(l, k);
    return out;
}

// H_ef = C^H G_rx^H H G_tx C (dense).
inline CMat effective_channel(const CMat& h, const CMat& g_rx, const CMat& g_tx, const CMat& c) {
    if (g_tx.cols() != c.rows()) throw std::invalid_argument("effective_channel: dimension mismatch");
    return c.adjoint() * (g_rx.adjoint() * (h * (g_tx * c)));
}

inline CMat effective_channel(const CMat& h, const CMat& g_bar, const CMat& c) {
    return effective_channel(h, g_bar, g_bar, c);
}

/**
 * Delay-Doppler MMSE: solves a^ = H_ef^H (H_ef H_ef^H + sigma2 I)^{-1} a~
 * through the equivalent normal equations (H_a^H H_a + sigma2 I) x = H_a^H a~,
 * where H_a keeps only the listed columns (active delay-Doppler positions).
 * Returns a full-length vector, zero at the dropped positions.
 */
inline CVec mmse_dd_equalize(const CMat& h_ef, double sigma2, const CVec& a_tilde,
                             const std::vector<int>& active = {}) {
    if (sigma2 <= 0.0) throw std::invalid_argument("mmse_dd_equalize: sigma2 must be positive");
    if (!h_ef.allFinite() || !a_tilde.allFinite())
        throw std::invalid_argument("mmse_dd_equalize: non-finite input");
    if (a_tilde.size() != h_ef.rows())
        throw std::invalid_argument("mmse_dd_equalize: dimension mismatch");
    const CMat* hp = &h_ef;
    CMat h_act;
    if (!active.empty()) {
        h_act.resize(h_ef.rows(), static_cast<Eigen::Index>(active.size()));
        for (std::size_t j = 0; j < active.size(); ++j) h_act.col(static_cast<Eigen::Index>(j)) = h_ef.col(active[j]);
        hp = &h_act;
    }
    CMat gram = hp->adjoint() * (*hp);
    gram.diagonal().array() += sigma2;
    const CVec rhs = hp->adjoint() * a_tilde;
    const CVec x = gram.llt().solve(rhs);
    if (active.empty()) return x;
    CVec out = CVec::Zero(h_ef.cols());
    for (std::size_t j = 0; j < active.size(); ++j) out(active[j]) = x(static_cast<Eigen::Index>(j));
    return out;
}

// R = C^H diag(e) G_rx^H H G_tx C (dense).
inline CMat build_R(const CMat& h, const CMat& g_rx, const CMat& g_tx, const CMat& c,
                    const CVec& e) {
    CMat y = g_rx.adjoint() * (h * (g_tx * c));
    for (Eigen::Index i = 0; i < y.rows(); ++i) y.row(i) *= e(i);
    return c.adjoint() * y;
}

inline CMat build_R(const CMat& h, const CMat& g_bar, const CMat& c, const CVec& e) {
    return build_R(h, g_bar, g_bar, c, e);
}

/**
 * Iterative interference canceller: a^{i+1} = a~ - (R - diag R) Q(a^i),
 * initialized with a^0 = a~. The quantizer divides by the corresponding
 * diagonal entry, hard-decides onto the constellation, and feeds the raw
 * decision to the cancellation term; inactive positions are held at zero.
 */
inline CVec iic_equalize(const CVec& a_tilde, const CMat& r, const Constellation& c,
                         int iterations, const std::vector<int>& active) {
    if (iterations < 1) throw std::invalid_argument("iic_equalize: iterations must be >= 1");
    if (r.rows() != r.cols() || r.rows() != a_tilde.size())
        throw std::invalid_argument("iic_equalize: dimension mismatch");
    CVec a_hat = a_tilde;
    CVec q = CVec::Zero(a_tilde.size());
    for (int it = 0; it < iterations; ++it) {
        q.setZero();
        for (int idx : active) {
            const cplx d = r(idx, idx);
            const cplx v = (d == cplx(0.0, 0.0)) ? a_hat(idx) : a_hat(idx) / d;
            q(idx) = qam_quantize(v, c);
        }
        CVec interf = r * q;
        for (int idx : active) interf(idx) -= r(idx, idx) * q(idx);
        a_hat = a_tilde - interf;
    }
    return a_hat;
}

} // namespace fb2d
