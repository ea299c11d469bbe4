#pragma once

#include "fb2d/complex_matrix.hpp"

#include <vector>

namespace fb2d {

/**
 * Grid geometry of the precoded filter bank: L active subcarriers,
 * K' double-rate multicarrier slots, N-point IFFT with N > L.
 * Data occupies the first and last L/4 delay rows of each slot.
 */
struct GridConfig {
    int L = 128;
    int k_prime = 16;
    int n_fft = 256;

    void validate() const {
        if (L < 4 || L % 4 != 0) throw std::invalid_argument("GridConfig: L must be a multiple of 4");
        if (k_prime < 1 || k_prime % 2 != 0)
            throw std::invalid_argument("GridConfig: K' must be even and >= 2");
        if (n_fft <= L) throw std::invalid_argument("GridConfig: N must exceed L");
        if (!is_pow2(static_cast<std::size_t>(L)) || !is_pow2(static_cast<std::size_t>(n_fft)))
            throw std::invalid_argument("GridConfig: L and N must be powers of two");
    }

    int data_per_slot() const { return L / 2; }
    int data_per_frame() const { return (L / 2) * k_prime; }

    std::vector<int> active_rows() const {
        std::vector<int> r;
        r.reserve(L / 2);
        for (int i = 0; i < L / 4; ++i) r.push_back(i);
        for (int i = L - L / 4; i < L; ++i) r.push_back(i);
        return r;
    }

    bool is_active_row(int i) const { return i < L / 4 || i >= L - L / 4; }

    // vec(A') indices (column-major, l + L*k) of the data positions
    std::vector<int> active_indices() const {
        std::vector<int> idx;
        idx.reserve(data_per_frame());
        const auto rows = active_rows();
        for (int k = 0; k < k_prime; ++k)
            for (int i : rows) idx.push_back(i + L * k);
        return idx;
    }
};

// Column k gets symbols [k*L/2, (k+1)*L/2); first L/4 to the top rows,
// last L/4 to the bottom rows, guard rows stay zero.
inline CMat place_data(const CVec& symbols, const GridConfig& cfg) {
    if (symbols.size() != cfg.data_per_frame())
        throw std::invalid_argument("place_data: symbol count mismatch");
    CMat a = CMat::Zero(cfg.L, cfg.k_prime);
    const int q = cfg.L / 4;
    for (int k = 0; k < cfg.k_prime; ++k) {
        const Eigen::Index base = static_cast<Eigen::Index>(k) * (cfg.L / 2);
        for (int i = 0; i < q; ++i) a(i, k) = symbols(base + i);
        for (int i = 0; i < q; ++i) a(cfg.L - q + i, k) = symbols(base + q + i);
    }
    return a;
}

inline CVec extract_data(const CMat& a_tilde, const GridConfig& cfg) {
    CVec out(cfg.data_per_frame());
    const int q = cfg.L / 4;
    for (int k = 0; k < cfg.k_prime; ++k) {
        const Eigen::Index base = static_cast<Eigen::Index>(k) * (cfg.L / 2);
        for (int i = 0; i < q; ++i) out(base + i) = a_tilde(i, k);
        for (int i = 0; i < q; ++i) out(base + q + i) = a_tilde(cfg.L - q + i, k);
    }
    return out;
}

} // namespace fb2d
