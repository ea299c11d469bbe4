#include "fb2d/channel.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace fb2d;

TEST_CASE("zero velocity gives time-invariant taps") {
    auto p = ChannelProfile::itu_vehicular_a(0.0, 2.5e9, 3.84e6);
    const auto ch = generate_channel(p, 512, 42);
    for (Eigen::Index j = 0; j < ch.taps.cols(); ++j)
        for (int m = 1; m < 512; ++m) CHECK(std::abs(ch.taps(m, j) - ch.taps(0, j)) < 1e-12);
    // and the dense matrix is banded Toeplitz: constant along each band
    const CMat h = dense_matrix(ch, 512);
    for (std::size_t j = 0; j < ch.lags.size(); ++j) {
        const int lag = ch.lags[j];
        for (int m = lag + 1; m < 512; ++m) CHECK(std::abs(h(m, m - lag) - h(lag, 0)) < 1e-12);
    }
}

TEST_CASE("doppler arithmetic") {
    auto p = ChannelProfile::itu_vehicular_a(300.0, 2.5e9, 3.84e6);
    CHECK(std::abs(p.max_doppler_hz() - (300.0 / 3.6) * 2.5e9 / 299792458.0) < 1e-9);
    CHECK(p.max_doppler_hz() == Catch::Approx(694.9).margin(1.0));
    p.velocity_mps = 1e9;  // absurd: doppler over Nyquist
    CHECK_THROWS_AS(generate_channel(p, 16, 1), std::invalid_argument);
}

TEST_CASE("reproducibility and independence") {
    auto p = ChannelProfile::itu_vehicular_a(300.0, 2.5e9, 3.84e6);
    const auto a = generate_channel(p, 256, 7);
    const auto b = generate_channel(p, 256, 7);
    CHECK((a.taps - b.taps).cwiseAbs().maxCoeff() == 0.0);
    const auto c = generate_channel(p, 256, 8);
    CHECK((a.taps - c.taps).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("apply_channel identity and pure delay") {
    ChannelRealization ch;
    ch.lags = {0};
    ch.taps = CMat::Ones(8, 1);
    CVec s(8);
    for (int i = 0; i < 8; ++i) s(i) = cplx(i, -i);
    CHECK((apply_channel(s, ch) - s).cwiseAbs().maxCoeff() == 0.0);

    ChannelRealization d2;
    d2.lags = {2};
    d2.taps = CMat::Ones(8, 1);
    const CVec r = apply_channel(s, d2);
    CHECK(std::abs(r(0)) == 0.0);
    CHECK(std::abs(r(1)) == 0.0);
    for (int i = 2; i < 8; ++i) CHECK(std::abs(r(i) - s(i - 2)) == 0.0);

    CHECK_THROWS_AS(apply_channel(CVec::Zero(4), d2), std::invalid_argument);
}

TEST_CASE("banded apply equals dense multiply") {
    auto p = ChannelProfile::itu_vehicular_a(300.0, 2.5e9, 3.84e6);
    const int m = 512;
    const auto ch = generate_channel(p, m, 3);
    const CMat h = dense_matrix(ch, m);
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g(0.0, 1.0);
    CVec s(m);
    for (int i = 0; i < m; ++i) s(i) = cplx(g(rng), g(rng));
    CHECK((apply_channel(s, ch) - h * s).cwiseAbs().maxCoeff() < 1e-10);

    // identity channel dense matrix
    ChannelRealization ident;
    ident.lags = {0};
    ident.taps = CMat::Ones(16, 1);
    CHECK(max_abs(dense_matrix(ident, 16) - CMat::Identity(16, 16)) == 0.0);
}

TEST_CASE("unit mean channel gain") {
    auto p = ChannelProfile::itu_vehicular_a(300.0, 2.5e9, 3.84e6);
    const int m = 2048;
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1.0);
    double num = 0.0, den = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const auto ch = generate_channel(p, m, 1000 + rep);
        CVec s(m);
        for (int i = 0; i < m; ++i) s(i) = cplx(g(rng), g(rng)) / std::sqrt(2.0);
        num += apply_channel(s, ch).squaredNorm();
        den += s.squaredNorm();
    }
    CHECK(std::abs(num / den - 1.0) < 0.05);
}

TEST_CASE("tap autocorrelation matches the Bessel form") {
    // low sample rate so each realization spans many coherence times
    const double fs = 100e3;
    auto p = ChannelProfile::single_tap(300.0, 2.5e9, fs);
    const double fd = p.max_doppler_hz();
    const int m = 10000;
    const int max_lag = static_cast<int>(1e-3 * fs);  // lags up to 1 ms
    std::vector<double> corr(static_cast<std::size_t>(max_lag) + 1, 0.0);
    double power = 0.0;
    const int reps = 200;
    for (int rep = 0; rep < reps; ++rep) {
        const auto ch = generate_channel(p, m, 500 + rep);
        for (int lag = 0; lag <= max_lag; lag += 10) {
            cplx acc(0.0, 0.0);
            for (int t = 0; t + lag < m; ++t)
                acc += ch.taps(t + lag, 0) * std::conj(ch.taps(t, 0));
            corr[static_cast<std::size_t>(lag)] += acc.real() / (m - lag);
        }
        power += ch.taps.col(0).squaredNorm() / m;
    }
    power /= reps;
    for (int lag = 0; lag <= max_lag; lag += 10) {
        const double rho = corr[static_cast<std::size_t>(lag)] / (reps * power);
        const double ref = std::cyl_bessel_j(0, 2.0 * M_PI * fd * lag / fs);
        CHECK(std::abs(rho - ref) < 0.05);
    }
}

TEST_CASE("awgn properties") {
    CVec x = CVec::Zero(100000);
    CHECK((add_awgn(x, 0.0, 1) - x).cwiseAbs().maxCoeff() == 0.0);

    const double sigma2 = 0.5;
    const CVec n1 = add_awgn(x, sigma2, 21);
    double var = n1.squaredNorm() / static_cast<double>(n1.size());
    CHECK(std::abs(var / sigma2 - 1.0) < 0.03);

    const CVec n2 = add_awgn(x, sigma2, 22);
    cplx corr(0.0, 0.0);
    for (Eigen::Index i = 0; i < n1.size(); ++i) corr += n1(i) * std::conj(n2(i));
    CHECK(std::abs(corr) / (sigma2 * static_cast<double>(n1.size())) < 0.02);

    CHECK((add_awgn(x, sigma2, 21) - n1).cwiseAbs().maxCoeff() == 0.0);  // deterministic
    CHECK_THROWS_AS(add_awgn(x, -1.0, 1), std::invalid_argument);
}

TEST_CASE("per-lag variance matches the profile power") {
    auto p = ChannelProfile::itu_vehicular_a(300.0, 2.5e9, 3.84e6);
    // expected linear powers on the rounded-lag grid
    const auto ch0 = generate_channel(p, 4, 0);
    std::vector<double> expected(ch0.lags.size(), 0.0);
    {
        double tot = 0.0;
        for (double pw : p.tap_powers_db) tot += std::pow(10.0, pw / 10.0);
        for (std::size_t t = 0; t < p.tap_delays_s.size(); ++t) {
            const int lag = static_cast<int>(std::lround(p.tap_delays_s[t] * p.sample_rate_hz));
            const auto it = std::find(ch0.lags.begin(), ch0.lags.end(), lag);
            expected[static_cast<std::size_t>(it - ch0.lags.begin())] +=
                std::pow(10.0, p.tap_powers_db[t] / 10.0) / tot;
        }
    }
    std::vector<double> meas(ch0.lags.size(), 0.0);
    const int reps = 400, m = 64;
    for (int rep = 0; rep < reps; ++rep) {
        const auto ch = generate_channel(p, m, 9000 + rep);
        for (std::size_t j = 0; j < ch.lags.size(); ++j)
            meas[j] += ch.taps.col(static_cast<Eigen::Index>(j)).squaredNorm() / m;
    }
    for (std::size_t j = 0; j < meas.size(); ++j) {
        meas[j] /= reps;
        CHECK(std::abs(meas[j] / expected[j] - 1.0) < 0.15);
    }

    // total mean power == 1 within 2%: estimated where samples decorrelate
    // (low rate, long record: >= 1e4 samples spanning thousands of
    // coherence times in aggregate)
    auto slow = ChannelProfile::single_tap(300.0, 2.5e9, 100e3);
    double tot = 0.0;
    const int reps2 = 400, m2 = 2048;
    for (int rep = 0; rep < reps2; ++rep)
        tot += generate_channel(slow, m2, 70000 + rep).taps.squaredNorm() / m2;
    CHECK(std::abs(tot / reps2 - 1.0) < 0.02);
}
