#include "fb2d/metrics.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace fb2d;

TEST_CASE("papr basics") {
    CVec constant = CVec::Ones(64);
    CHECK(papr_db(constant) == Catch::Approx(0.0).margin(1e-12));
    const auto ccdf = papr_ccdf({constant}, {0.1});
    CHECK(ccdf.probabilities[0] == 0.0);

    CVec impulse = CVec::Zero(4);
    impulse(0) = cplx(1.0, 0.0);
    CHECK(papr_db(impulse) == Catch::Approx(10.0 * std::log10(4.0)).margin(1e-12));

    CHECK_THROWS_AS(papr_ccdf({}, {1.0}), std::invalid_argument);
}

TEST_CASE("ccdf monotone in the threshold") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<CVec> frames;
    for (int f = 0; f < 200; ++f) {
        CVec v(128);
        for (int i = 0; i < 128; ++i) v(i) = cplx(g(rng), g(rng));
        frames.push_back(v);
    }
    std::vector<double> th;
    for (double t = 0.0; t <= 12.0; t += 0.5) th.push_back(t);
    const auto c = papr_ccdf(frames, th);
    for (std::size_t i = 1; i < c.probabilities.size(); ++i)
        CHECK(c.probabilities[i] <= c.probabilities[i - 1]);
}

TEST_CASE("psd pure tone and white noise") {
    const double fs = 1000.0;
    const int n = 4096;
    CVec tone(n);
    for (int i = 0; i < n; ++i) {
        const double ang = 2.0 * M_PI * 125.0 * i / fs;
        tone(i) = cplx(std::cos(ang), std::sin(ang));
    }
    const auto c = psd_welch(tone, 256, 0.5, fs);
    // peak is 0 dB at +125 Hz
    double best = -1e9;
    double fbest = 0.0;
    for (std::size_t i = 0; i < c.freqs_hz.size(); ++i)
        if (c.power_db[i] > best) {
            best = c.power_db[i];
            fbest = c.freqs_hz[i];
        }
    CHECK(best == Catch::Approx(0.0).margin(1e-12));
    CHECK(fbest == Catch::Approx(125.0).margin(fs / 256));

    // white noise: flat within +-2 dB with enough segments, Parseval within 1%
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g(0.0, 1.0);
    const int len = 1 << 16;
    CVec noise(len);
    double tp = 0.0;
    for (int i = 0; i < len; ++i) {
        noise(i) = cplx(g(rng), g(rng));
        tp += std::norm(noise(i));
    }
    tp /= len;
    PsdAccumulator acc(256, 0.5, fs);
    acc.add(noise);
    const auto w = acc.finalize();
    const double mean_db =
        std::accumulate(w.power_db.begin(), w.power_db.end(), 0.0) / w.power_db.size();
    for (double v : w.power_db) CHECK(std::abs(v - mean_db) < 2.0);
    CHECK(std::abs(acc.mean_power() / tp - 1.0) < 0.01);

    CHECK_THROWS_AS(psd_welch(CVec::Zero(16), 256, 0.5, fs), std::invalid_argument);
}

TEST_CASE("ber_count") {
    std::vector<std::uint8_t> a{1, 0, 1, 1, 0};
    auto [e0, t0] = ber_count(a, a);
    CHECK(e0 == 0);
    CHECK(t0 == 5);
    auto b = a;
    b[2] ^= 1;
    auto [e1, t1] = ber_count(a, b);
    CHECK(e1 == 1);
    std::vector<std::uint8_t> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] ^ 1;
    auto [e2, t2] = ber_count(a, c);
    CHECK(e2 == 5);
    CHECK_THROWS_AS(ber_count(a, std::vector<std::uint8_t>{1, 0}), std::invalid_argument);
}

TEST_CASE("complexity formulas at the desk dimensions") {
    ComplexityParams p;
    p.L = 128;
    p.N = 256;
    p.K = 8;
    p.k_prime = 16;
    p.overlap = 1.5;

    CHECK(complexity_tx(Scheme::fbmc, p) == 2560.0);  // 128 + 256*8 + 384
    // 2 (64 + 128*6 + 2048 + 384)
    CHECK(complexity_tx(Scheme::dft_precoded_fb, p) == 2.0 * (64.0 + 128.0 * 6.0 + 2048.0 + 384.0));
    // LK log L + LK log K + L log L = 1024*7 + 1024*3 + 128*7
    CHECK(complexity_tx(Scheme::otfs, p) == 1024.0 * 7.0 + 1024.0 * 3.0 + 128.0 * 7.0);
    // L/2 + LK' log(L/2) + (L/2)K' log K' + N log N + ON
    CHECK(complexity_tx(Scheme::fft2d_fb, p) ==
          64.0 + 2048.0 * 6.0 + 1024.0 * 4.0 + 2048.0 + 384.0);

    CHECK(complexity_rx(Scheme::fft2d_fb, Receiver::mmse_freq, p) == 2048.0);
    CHECK(complexity_rx(Scheme::fft2d_fb, Receiver::hybrid_iic, p) == 2048.0 + 1024.0 * 1024.0);
    CHECK(complexity_rx(Scheme::fft2d_fb, Receiver::hybrid_iic, p) == 1050624.0);
    CHECK(complexity_rx(Scheme::fft2d_fb, Receiver::mmse_dd, p) ==
          1024.0 * 1024.0 * 1024.0 + 1024.0 * 1024.0);
    // OTFS substitutes K and drops the halving
    CHECK(complexity_rx(Scheme::otfs, Receiver::mmse_freq, p) == 1024.0);
    CHECK(complexity_rx(Scheme::otfs, Receiver::mmse_dd, p) ==
          1024.0 * 1024.0 * 1024.0 + 1024.0 * 1024.0);
    const auto [tx, rx] = complexity_estimate(Scheme::fft2d_fb, Receiver::mmse_freq, p);
    CHECK(tx == complexity_tx(Scheme::fft2d_fb, p));
    CHECK(rx == 2048.0);
}
