#pragma once

#include "fb2d/complex_matrix.hpp"
#include "fb2d/fft.hpp"
#include "fb2d/filterbank.hpp"
#include "fb2d/grid.hpp"

namespace fb2d {

/**
 * Filter compensation vector b_tilde: real, strictly positive on the active
 * delay rows, zero on the guard rows. Depends only on (filter, L, N).
 */
struct CompensationVector {
    RVec b_tilde;
};

// c_tilde = diag{ W_L^H Phi^H W_tilde G~^T G~ W_tilde^H Phi W_L },
// b_i = 1/sqrt(c_i) on active rows. Dense evaluation.
inline CompensationVector compensation_vector(const PrototypeFilter& f, const GridConfig& cfg) {
    if (f.overlap > 1.5 + 1e-12)
        throw std::invalid_argument("compensation_vector: overlap must be <= 1.5");
    if (f.n_fft != cfg.n_fft)
        throw std::invalid_argument("compensation_vector: filter n_fft mismatch");
    const CMat wl = dft_matrix(cfg.L);
    const CMat wt = spread_dft(cfg);
    const CVec phi = subcarrier_phase(cfg.L);
    const CMat gt = toeplitz_single_symbol(f);
    CMat wtp = phi.conjugate().asDiagonal() * wt;          // Phi^H W_tilde
    CMat inner = wtp * (gt.transpose() * gt) * wtp.adjoint();
    CMat k = wl.adjoint() * inner * wl;
    CompensationVector b;
    b.b_tilde = RVec::Zero(cfg.L);
    for (int i = 0; i < cfg.L; ++i) {
        if (!cfg.is_active_row(i)) continue;
        const double c = k(i, i).real();
        if (c <= 1e-14)
            throw std::runtime_error("compensation_vector: singular compensation coefficient");
        b.b_tilde(i) = 1.0 / std::sqrt(c);
    }
    return b;
}

// X = W_L diag(b) A' W_{K'}^H (unitary DFTs).
inline CMat isfft_precode(const CMat& a_prime, const CompensationVector& b, const GridConfig& cfg) {
    if (a_prime.rows() != cfg.L || a_prime.cols() != cfg.k_prime)
        throw std::invalid_argument("isfft_precode: dimension mismatch");
    const int L = cfg.L;
    const int Kp = cfg.k_prime;
    CMat x(L, Kp);
    std::vector<cplx> buf(static_cast<std::size_t>(L));
    for (int k = 0; k < Kp; ++k) {
        for (int i = 0; i < L; ++i) buf[static_cast<std::size_t>(i)] = b.b_tilde(i) * a_prime(i, k);
        fft_unitary(buf);
        for (int l = 0; l < L; ++l) x(l, k) = buf[static_cast<std::size_t>(l)];
    }
    if (Kp > 1) {
        if (is_pow2(static_cast<std::size_t>(Kp))) {
            std::vector<cplx> row(static_cast<std::size_t>(Kp));
            for (int l = 0; l < L; ++l) {
                for (int k = 0; k < Kp; ++k) row[static_cast<std::size_t>(k)] = x(l, k);
                ifft_unitary(row);  // right-multiplication by W_{K'}^H
                for (int k = 0; k < Kp; ++k) x(l, k) = row[static_cast<std::size_t>(k)];
            }
        } else {
            x = x * dft_matrix(Kp).adjoint();
        }
    }
    return x;
}

// A~ = diag(b) (W_L^H X~ W_{K'}): the adjoint C_f^H of the coding stage per column.
inline CMat isfft_postcode(const CMat& x_tilde, const CompensationVector& b, const GridConfig& cfg) {
    if (x_tilde.rows() != cfg.L || x_tilde.cols() != cfg.k_prime)
        throw std::invalid_argument("isfft_postcode: dimension mismatch");
    const int L = cfg.L;
    const int Kp = cfg.k_prime;
    CMat a(L, Kp);
    std::vector<cplx> buf(static_cast<std::size_t>(L));
    for (int k = 0; k < Kp; ++k) {
        for (int l = 0; l < L; ++l) buf[static_cast<std::size_t>(l)] = x_tilde(l, k);
        ifft_unitary(buf);  // W_L^H
        for (int i = 0; i < L; ++i) a(i, k) = b.b_tilde(i) * buf[static_cast<std::size_t>(i)];
    }
    if (Kp > 1) {
        if (is_pow2(static_cast<std::size_t>(Kp))) {
            std::vector<cplx> row(static_cast<std::size_t>(Kp));
            for (int i = 0; i < L; ++i) {
                for (int k = 0; k < Kp; ++k) row[static_cast<std::size_t>(k)] = a(i, k);
                fft_unitary(row);  // right-multiplication by W_{K'}
                for (int k = 0; k < Kp; ++k) a(i, k) = row[static_cast<std::size_t>(k)];
            }
        } else {
            a = a * dft_matrix(Kp);
        }
    }
    return a;
}

// Dense coding matrix C = (I_{K'} kron C_f)(W_{K'}^H kron I_L) with
// C_f = W_L diag(b), so that C vec(A') == vec(isfft_precode(A')).
inline CMat coding_matrix(const CompensationVector& b, const GridConfig& cfg) {
    const CMat cf = dft_matrix(cfg.L) * b.b_tilde.cast<cplx>().asDiagonal();
    const CMat ik = CMat::Identity(cfg.k_prime, cfg.k_prime);
    const CMat il = CMat::Identity(cfg.L, cfg.L);
    return kron(ik, cf) * kron(dft_matrix(cfg.k_prime).adjoint(), il);
}

// Fast application of C and C^H on vec-ordered (l + L*k) vectors.
inline CVec coding_apply(const CVec& a, const CompensationVector& b, const GridConfig& cfg) {
    return vec(isfft_precode(unvec(a, cfg.L, cfg.k_prime), b, cfg));
}

inline CVec coding_adjoint(const CVec& x, const CompensationVector& b, const GridConfig& cfg) {
    return vec(isfft_postcode(unvec(x, cfg.L, cfg.k_prime), b, cfg));
}

} // namespace fb2d
