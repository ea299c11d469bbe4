#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace fb2d {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Unitary n-point DFT matrix, entries e^{-j2pi kl/n}/sqrt(n).
inline CMat dft_matrix(Eigen::Index n) {
    if (n < 1) throw std::invalid_argument("dft_matrix: n must be >= 1");
    CMat w(n, n);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) {
            const double ang = -2.0 * M_PI * static_cast<double>(k) * static_cast<double>(l) /
                               static_cast<double>(n);
            w(k, l) = cplx(std::cos(ang), std::sin(ang)) * s;
        }
    }
    return w;
}

inline CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Column-major stacking, vec(M).
inline CVec vec(const CMat& m) {
    CVec v(m.size());
    Eigen::Index idx = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) v(idx++) = m(i, j);
    return v;
}

inline CMat unvec(const CVec& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols) throw std::invalid_argument("unvec: size mismatch");
    CMat m(rows, cols);
    Eigen::Index idx = 0;
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = v(idx++);
    return m;
}

inline double max_abs(const CMat& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace fb2d
