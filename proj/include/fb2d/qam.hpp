#pragma once

#include "fb2d/complex_matrix.hpp"

#include <cstdint>
#include <vector>

namespace fb2d {

using BitVec = std::vector<std::uint8_t>;

/**
 * Square QAM constellation with per-axis Gray labeling and unit average
 * energy. Symbol bits are [I bits | Q bits], MSB first on each axis;
 * bit 0 selects the positive half-axis.
 */
struct Constellation {
    int order = 4;                 // 4 or 16
    int bits_per_symbol = 2;
    std::vector<cplx> points;      // indexed by label value
    std::vector<double> axis_levels;  // Gray-ordered: label g -> level

    static Constellation make(int order) {
        if (order != 4 && order != 16)
            throw std::invalid_argument("Constellation: order must be 4 or 16");
        Constellation c;
        c.order = order;
        c.bits_per_symbol = (order == 4) ? 2 : 4;
        if (order == 4) {
            c.axis_levels = {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)};  // 0,1
        } else {
            const double s = 1.0 / std::sqrt(10.0);
            c.axis_levels = {3.0 * s, 1.0 * s, -1.0 * s, -3.0 * s};  // 00,01,11,10
        }
        const int half = c.bits_per_symbol / 2;
        const int nax = 1 << half;
        c.points.resize(order);
        for (int li = 0; li < nax; ++li)
            for (int lq = 0; lq < nax; ++lq)
                c.points[(li << half) | lq] = cplx(axis_level(c, li), axis_level(c, lq));
        return c;
    }

    // axis label (natural binary) -> level; axis_levels is in Gray sequence order
    static double axis_level(const Constellation& c, int label_bits) {
        if (c.axis_levels.size() == 2) return c.axis_levels[label_bits & 1];
        static const int idx_of_label[4] = {0, 1, 3, 2};  // labels 00,01,10,11
        return c.axis_levels[idx_of_label[label_bits & 3]];
    }
};

inline CVec qam_map(const BitVec& bits, const Constellation& c) {
    if (bits.size() % static_cast<std::size_t>(c.bits_per_symbol) != 0)
        throw std::invalid_argument("qam_map: bit count not divisible by bits per symbol");
    const std::size_t n = bits.size() / c.bits_per_symbol;
    CVec out(static_cast<Eigen::Index>(n));
    for (std::size_t s = 0; s < n; ++s) {
        int label = 0;
        for (int b = 0; b < c.bits_per_symbol; ++b)
            label = (label << 1) | (bits[s * c.bits_per_symbol + b] & 1);
        out(static_cast<Eigen::Index>(s)) = c.points[label];
    }
    return out;
}

// Hard decision, nearest point; ties go to the lexicographically smallest label.
inline int qam_decide(cplx v, const Constellation& c) {
    int best = 0;
    double bestd = std::norm(v - c.points[0]);
    for (int label = 1; label < c.order; ++label) {
        const double d = std::norm(v - c.points[label]);
        if (d < bestd - 1e-15 * (1.0 + bestd)) {
            bestd = d;
            best = label;
        }
    }
    return best;
}

inline BitVec qam_demap(const CVec& symbols, const Constellation& c) {
    BitVec bits(static_cast<std::size_t>(symbols.size()) * c.bits_per_symbol);
    for (Eigen::Index s = 0; s < symbols.size(); ++s) {
        const int label = qam_decide(symbols(s), c);
        for (int b = 0; b < c.bits_per_symbol; ++b)
            bits[static_cast<std::size_t>(s) * c.bits_per_symbol + b] =
                static_cast<std::uint8_t>((label >> (c.bits_per_symbol - 1 - b)) & 1);
    }
    return bits;
}

// Nearest constellation point (used by the IIC quantizer).
inline cplx qam_quantize(cplx v, const Constellation& c) { return c.points[qam_decide(v, c)]; }

} // namespace fb2d
