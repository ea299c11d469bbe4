#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fb2d {

using cplx = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place radix-2 DIT FFT. sign = -1 forward, +1 inverse. No scaling.
inline void fft_raw(cplx* x, std::size_t n, int sign) {
    if (!is_pow2(n)) throw std::invalid_argument("fft_raw: length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = x[i + k];
                cplx v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Unitary transforms: forward = e^{-j2pi kl/n}/sqrt(n), inverse is its adjoint.
inline void fft_unitary(std::vector<cplx>& x) {
    fft_raw(x.data(), x.size(), -1);
    const double s = 1.0 / std::sqrt(static_cast<double>(x.size()));
    for (auto& v : x) v *= s;
}

inline void ifft_unitary(std::vector<cplx>& x) {
    fft_raw(x.data(), x.size(), +1);
    const double s = 1.0 / std::sqrt(static_cast<double>(x.size()));
    for (auto& v : x) v *= s;
}

} // namespace fb2d
