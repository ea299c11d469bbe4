#pragma once

#include "fb2d/link.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <thread>

namespace fb2d {

using json = nlohmann::ordered_json;

enum class SchemeId { fft2d_fb, otfs, ofdm, fbmc };
enum class ReceiverId { mmse_freq, mmse_dd, hybrid_iic };

inline const char* to_string(SchemeId s) {
    switch (s) {
        case SchemeId::fft2d_fb: return "fft2d_fb";
        case SchemeId::otfs: return "otfs";
        case SchemeId::ofdm: return "ofdm";
        case SchemeId::fbmc: return "fbmc";
    }
    return "?";
}

inline const char* to_string(ReceiverId r) {
    switch (r) {
        case ReceiverId::mmse_freq: return "mmse_freq";
        case ReceiverId::mmse_dd: return "mmse_dd";
        case ReceiverId::hybrid_iic: return "hybrid_iic";
    }
    return "?";
}

inline SchemeId scheme_from_string(const std::string& s) {
    if (s == "fft2d_fb") return SchemeId::fft2d_fb;
    if (s == "otfs") return SchemeId::otfs;
    if (s == "ofdm") return SchemeId::ofdm;
    if (s == "fbmc") return SchemeId::fbmc;
    throw std::invalid_argument("unknown scheme: " + s);
}

inline ReceiverId receiver_from_string(const std::string& s) {
    if (s == "mmse_freq") return ReceiverId::mmse_freq;
    if (s == "mmse_dd") return ReceiverId::mmse_dd;
    if (s == "hybrid_iic") return ReceiverId::hybrid_iic;
    throw std::invalid_argument("unknown receiver: " + s);
}

struct Combination {
    SchemeId scheme;
    ReceiverId receiver;
    int modulation;
    double snr_db;
    double velocity_kmh;
};

struct TrialRecord {
    Combination comb;
    std::uint64_t seed = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t bit_total = 0;
    double elapsed_s = 0.0;
};

struct PointAggregate {
    Combination comb;
    std::uint64_t bit_errors = 0;
    std::uint64_t bit_total = 0;
    int frames = 0;
    double ber = 0.0;
    double ci95_halfwidth = 0.0;
    bool converged = false;  // >= 100 errors collected
};

struct ExperimentBlock {
    std::vector<SchemeId> schemes;
    std::vector<ReceiverId> receivers;
    std::vector<int> modulations;
    std::vector<double> snr_grid_db;
    std::vector<double> velocities_kmh;
};

struct ExperimentConfig {
    GridConfig grid;
    OtfsConfig otfs_cfg{128, 8, 8, 128};
    OtfsConfig ofdm_cfg{128, 8, 16, 256};
    double carrier_hz = 2.5e9;
    double subcarrier_spacing_hz = 15e3;
    std::string channel_model = "itu_vehicular_a";  // or "single_tap"
    std::vector<ExperimentBlock> blocks;
    std::uint64_t target_errors = 200;
    int max_frames_per_point = 400;
    int batch_frames = 8;
    int iic_iterations = 1;
    std::uint64_t master_seed = 1;
    std::string output_dir = "out";
    bool record_timing = false;

    // papr / psd experiment sections
    int papr_frames = 100000;
    double papr_min_db = 0.0, papr_max_db = 14.0, papr_step_db = 0.25;
    std::vector<SchemeId> papr_schemes{SchemeId::fft2d_fb, SchemeId::otfs, SchemeId::ofdm,
                                       SchemeId::fbmc};
    int psd_frames = 400;
    int psd_segment = 0;  // 0: default 4*N
    double psd_overlap = 0.5;
    std::vector<SchemeId> psd_schemes{SchemeId::fft2d_fb, SchemeId::otfs, SchemeId::ofdm,
                                      SchemeId::fbmc};

    static ExperimentConfig from_json(const json& j);
    static ExperimentConfig from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config: " + path);
        json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string("config parse error: ") + e.what());
        }
        return from_json(j);
    }

    double sample_rate_for(int n_fft) const { return n_fft * subcarrier_spacing_hz; }

    ChannelProfile profile_for(double velocity_kmh, int n_fft) const {
        const double fs = sample_rate_for(n_fft);
        if (channel_model == "single_tap")
            return ChannelProfile::single_tap(velocity_kmh, carrier_hz, fs);
        if (channel_model == "itu_vehicular_a")
            return ChannelProfile::itu_vehicular_a(velocity_kmh, carrier_hz, fs);
        throw std::invalid_argument("unknown channel model: " + channel_model);
    }

    std::vector<Combination> combinations() const {
        std::vector<Combination> out;
        for (const auto& b : blocks)
            for (auto s : b.schemes)
                for (auto r : b.receivers)
                    for (int m : b.modulations)
                        for (double v : b.velocities_kmh)
                            for (double snr : b.snr_grid_db)
                                out.push_back({s, r, m, snr, v});
        return out;
    }
};

inline ExperimentBlock block_from_json(const json& j) {
    ExperimentBlock b;
    for (const auto& s : j.at("schemes")) b.schemes.push_back(scheme_from_string(s.get<std::string>()));
    for (const auto& s : j.at("receivers"))
        b.receivers.push_back(receiver_from_string(s.get<std::string>()));
    for (const auto& m : j.at("modulations")) b.modulations.push_back(m.get<int>());
    for (const auto& v : j.at("snr_grid_db")) b.snr_grid_db.push_back(v.get<double>());
    for (const auto& v : j.at("velocities_kmh")) b.velocities_kmh.push_back(v.get<double>());
    return b;
}

inline ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig c;
    try {
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            c.grid.L = g.value("L", c.grid.L);
            c.grid.k_prime = g.value("k_prime", c.grid.k_prime);
            c.grid.n_fft = g.value("n_fft", c.grid.n_fft);
        }
        if (j.contains("otfs")) {
            const auto& g = j.at("otfs");
            c.otfs_cfg.L = g.value("L", c.grid.L);
            c.otfs_cfg.k_doppler = g.value("k", c.otfs_cfg.k_doppler);
            c.otfs_cfg.cp_len = g.value("cp_len", c.otfs_cfg.cp_len);
            c.otfs_cfg.n_fft = g.value("n_fft", c.otfs_cfg.n_fft);
        }
        if (j.contains("ofdm")) {
            const auto& g = j.at("ofdm");
            c.ofdm_cfg.L = g.value("L", c.grid.L);
            c.ofdm_cfg.k_doppler = g.value("k", c.ofdm_cfg.k_doppler);
            c.ofdm_cfg.cp_len = g.value("cp_len", c.ofdm_cfg.cp_len);
            c.ofdm_cfg.n_fft = g.value("n_fft", c.ofdm_cfg.n_fft);
        }
        if (j.contains("channel")) {
            const auto& g = j.at("channel");
            c.channel_model = g.value("model", c.channel_model);
            c.carrier_hz = g.value("carrier_hz", c.carrier_hz);
            c.subcarrier_spacing_hz = g.value("subcarrier_spacing_hz", c.subcarrier_spacing_hz);
        }
        if (j.contains("experiments"))
            for (const auto& b : j.at("experiments")) c.blocks.push_back(block_from_json(b));
        if (j.contains("trials")) {
            const auto& g = j.at("trials");
            c.target_errors = g.value("target_errors", c.target_errors);
            c.max_frames_per_point = g.value("max_frames_per_point", c.max_frames_per_point);
            c.batch_frames = g.value("batch_frames", c.batch_frames);
        }
        if (j.contains("papr")) {
            const auto& g = j.at("papr");
            c.papr_frames = g.value("frames", c.papr_frames);
            c.papr_min_db = g.value("min_db", c.papr_min_db);
            c.papr_max_db = g.value("max_db", c.papr_max_db);
            c.papr_step_db = g.value("step_db", c.papr_step_db);
            if (g.contains("schemes")) {
                c.papr_schemes.clear();
                for (const auto& s : g.at("schemes"))
                    c.papr_schemes.push_back(scheme_from_string(s.get<std::string>()));
            }
        }
        if (j.contains("psd")) {
            const auto& g = j.at("psd");
            c.psd_frames = g.value("frames", c.psd_frames);
            c.psd_segment = g.value("segment_len", c.psd_segment);
            c.psd_overlap = g.value("overlap", c.psd_overlap);
            if (g.contains("schemes")) {
                c.psd_schemes.clear();
                for (const auto& s : g.at("schemes"))
                    c.psd_schemes.push_back(scheme_from_string(s.get<std::string>()));
            }
        }
        c.iic_iterations = j.value("iic_iterations", c.iic_iterations);
        c.master_seed = j.value("master_seed", c.master_seed);
        c.output_dir = j.value("output_dir", c.output_dir);
        c.record_timing = j.value("record_timing", c.record_timing);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("config schema error: ") + e.what());
    }
    c.grid.validate();
    c.otfs_cfg.validate();
    c.ofdm_cfg.validate();
    return c;
}

inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t combo, std::uint64_t trial) {
    return splitmix64(splitmix64(splitmix64(master ^ 0x6A09E667F3BCC909ull) ^ combo) ^ trial);
}

/**
 * Holds the per-scheme links of one configuration; construction is the
 * validation step (every referenced combination must be constructible).
 */
struct LinkSet {
    FbLink fb;
    OtfsLink otfs;
    OfdmLink ofdm;
    FbmcTx fbmc;

    static LinkSet make(const ExperimentConfig& cfg) {
        LinkSet ls;
        ls.fb = FbLink::make(cfg.grid);
        ls.otfs = OtfsLink::make(cfg.otfs_cfg);
        ls.ofdm = OfdmLink::make(cfg.ofdm_cfg);
        ls.fbmc = FbmcTx::make(cfg.grid);
        return ls;
    }
};

inline bool combination_supported(SchemeId s, ReceiverId r) {
    if (s == SchemeId::fbmc) return false;  // PSD/PAPR baseline only
    if (s == SchemeId::ofdm) return r == ReceiverId::mmse_freq;
    return true;
}

// One Monte-Carlo trial; deterministic in (cfg, seed).
inline TrialRecord run_trial(const ExperimentConfig& cfg, const LinkSet& links,
                             const Combination& comb, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const Constellation constel = Constellation::make(comb.modulation);
    TrialRecord rec;
    rec.comb = comb;
    rec.seed = seed;

    int n_syms = 0, m_samples = 0, n_fft = 0;
    double ps = 0.0;
    switch (comb.scheme) {
        case SchemeId::fft2d_fb:
            n_syms = links.fb.symbols_per_frame();
            m_samples = links.fb.frame_samples();
            n_fft = cfg.grid.n_fft;
            ps = links.fb.ps;
            break;
        case SchemeId::otfs:
            n_syms = links.otfs.symbols_per_frame();
            m_samples = links.otfs.frame_samples();
            n_fft = cfg.otfs_cfg.n_fft;
            ps = links.otfs.ps;
            break;
        case SchemeId::ofdm:
            n_syms = links.ofdm.symbols_per_frame();
            m_samples = links.ofdm.frame_samples();
            n_fft = cfg.ofdm_cfg.n_fft;
            ps = links.ofdm.ps;
            break;
        default:
            throw std::invalid_argument("run_trial: unsupported scheme");
    }

    const BitVec tx_bits = random_bits(static_cast<std::size_t>(n_syms) * constel.bits_per_symbol,
                                       splitmix64(seed ^ 1));
    const CVec tx_syms = qam_map(tx_bits, constel);
    const double sigma2 = (comb.snr_db >= 999.0) ? 0.0 : ps / std::pow(10.0, comb.snr_db / 10.0);
    const ChannelProfile prof = cfg.profile_for(comb.velocity_kmh, n_fft);
    const ChannelRealization ch = generate_channel(prof, m_samples, splitmix64(seed ^ 2));

    CVec est;
    if (comb.scheme == SchemeId::fft2d_fb) {
        const CVec r = add_awgn(apply_channel(links.fb.transmit(tx_syms), ch), sigma2,
                                splitmix64(seed ^ 3));
        switch (comb.receiver) {
            case ReceiverId::mmse_freq: est = links.fb.receive_onetap(r, ch, sigma2); break;
            case ReceiverId::mmse_dd: est = links.fb.receive_dd(r, ch, sigma2); break;
            case ReceiverId::hybrid_iic:
                est = links.fb.receive_iic(r, ch, sigma2, constel, cfg.iic_iterations);
                break;
        }
    } else if (comb.scheme == SchemeId::otfs) {
        const CVec r = add_awgn(apply_channel(links.otfs.transmit(tx_syms), ch), sigma2,
                                splitmix64(seed ^ 3));
        switch (comb.receiver) {
            case ReceiverId::mmse_freq: est = links.otfs.receive_onetap(r, ch, sigma2); break;
            case ReceiverId::mmse_dd: est = links.otfs.receive_dd(r, ch, sigma2); break;
            case ReceiverId::hybrid_iic:
                est = links.otfs.receive_iic(r, ch, sigma2, constel, cfg.iic_iterations);
                break;
        }
    } else {
        const CVec r = add_awgn(apply_channel(links.ofdm.transmit(tx_syms), ch), sigma2,
                                splitmix64(seed ^ 3));
        est = links.ofdm.receive_onetap(r, ch, sigma2);
    }

    const BitVec rx_bits = qam_demap(est, constel);
    const auto [errs, total] = ber_count(tx_bits, rx_bits);
    rec.bit_errors = errs;
    rec.bit_total = total;
    rec.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

struct RunResult {
    std::vector<TrialRecord> records;
    std::vector<PointAggregate> points;
    std::vector<std::string> combo_errors;
    bool truncated_by_wallclock = false;
};

/**
 * Config-driven Monte-Carlo runner. Trials execute in deterministic
 * batches (parallelism never changes which trials run or how results
 * aggregate); each combination stops at target_errors or
 * max_frames_per_point, whichever first.
 */
inline RunResult run_experiment(const ExperimentConfig& cfg, int workers = 0,
                                double max_minutes = 0.0) {
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
    const LinkSet links = LinkSet::make(cfg);
    const auto combos = cfg.combinations();
    RunResult out;
    const auto t_start = std::chrono::steady_clock::now();
    const auto deadline_ok = [&]() {
        if (max_minutes <= 0.0) return true;
        const double mins =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count() / 60.0;
        return mins < max_minutes;
    };

    for (std::size_t ci = 0; ci < combos.size(); ++ci) {
        const Combination& comb = combos[ci];
        if (!combination_supported(comb.scheme, comb.receiver)) {
            out.combo_errors.push_back(std::string("unsupported combination: ") +
                                       to_string(comb.scheme) + "+" + to_string(comb.receiver));
            continue;
        }
        PointAggregate agg;
        agg.comb = comb;
        int trial_idx = 0;
        while (trial_idx < cfg.max_frames_per_point && agg.bit_errors < cfg.target_errors) {
            if (!deadline_ok()) {
                out.truncated_by_wallclock = true;
                break;
            }
            const int batch =
                std::min(cfg.batch_frames, cfg.max_frames_per_point - trial_idx);
            std::vector<TrialRecord> slot(static_cast<std::size_t>(batch));
            std::atomic<int> next{0};
            auto worker = [&]() {
                for (;;) {
                    const int i = next.fetch_add(1);
                    if (i >= batch) break;
                    const std::uint64_t seed =
                        trial_seed(cfg.master_seed, ci, static_cast<std::uint64_t>(trial_idx + i));
                    slot[static_cast<std::size_t>(i)] = run_trial(cfg, links, comb, seed);
                }
            };
            std::vector<std::thread> pool;
            for (int w = 0; w < std::min(workers, batch); ++w) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
            for (auto& rec : slot) {
                agg.bit_errors += rec.bit_errors;
                agg.bit_total += rec.bit_total;
                ++agg.frames;
                out.records.push_back(std::move(rec));
            }
            trial_idx += batch;
        }
        agg.ber = agg.bit_total ? static_cast<double>(agg.bit_errors) / agg.bit_total : 0.0;
        if (agg.bit_total) {
            const double p = agg.ber;
            agg.ci95_halfwidth = 1.96 * std::sqrt(std::max(p * (1.0 - p), 0.0) /
                                                  static_cast<double>(agg.bit_total));
        }
        agg.converged = agg.bit_errors >= 100;
        out.points.push_back(agg);
    }
    return out;
}

// ---------------------------------------------------------------------------
// output writers
// ---------------------------------------------------------------------------

inline void write_records_csv(const std::string& path, const RunResult& res, bool record_timing) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << "scheme,receiver,modulation,snr_db,velocity_kmh,seed,bit_errors,bit_total,elapsed_s\n";
    char buf[256];
    for (const auto& r : res.records) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%d,%.2f,%.1f,%llu,%llu,%llu,%.6f\n",
                      to_string(r.comb.scheme), to_string(r.comb.receiver), r.comb.modulation,
                      r.comb.snr_db, r.comb.velocity_kmh,
                      static_cast<unsigned long long>(r.seed),
                      static_cast<unsigned long long>(r.bit_errors),
                      static_cast<unsigned long long>(r.bit_total),
                      record_timing ? r.elapsed_s : 0.0);
        f << buf;
    }
}

inline json curves_json(const RunResult& res) {
    json j;
    j["snr_definition"] = "SNR = E|s[m]|^2 / sigma_n^2 per received sample";
    j["combinations"] = json::array();
    // group points by (scheme, receiver, modulation, velocity)
    for (const auto& p : res.points) {
        bool found = false;
        for (auto& c : j["combinations"]) {
            if (c["scheme"] == to_string(p.comb.scheme) &&
                c["receiver"] == to_string(p.comb.receiver) &&
                c["modulation"] == p.comb.modulation &&
                c["velocity_kmh"] == p.comb.velocity_kmh) {
                found = true;
                c["points"].push_back({{"snr_db", p.comb.snr_db},
                                       {"bit_errors", p.bit_errors},
                                       {"bit_total", p.bit_total},
                                       {"frames", p.frames},
                                       {"ber", p.ber},
                                       {"ci95_halfwidth", p.ci95_halfwidth},
                                       {"converged", p.converged}});
            }
        }
        if (!found) {
            json c;
            c["scheme"] = to_string(p.comb.scheme);
            c["receiver"] = to_string(p.comb.receiver);
            c["modulation"] = p.comb.modulation;
            c["velocity_kmh"] = p.comb.velocity_kmh;
            c["points"] = json::array();
            c["points"].push_back({{"snr_db", p.comb.snr_db},
                                   {"bit_errors", p.bit_errors},
                                   {"bit_total", p.bit_total},
                                   {"frames", p.frames},
                                   {"ber", p.ber},
                                   {"ci95_halfwidth", p.ci95_halfwidth},
                                   {"converged", p.converged}});
            j["combinations"].push_back(c);
        }
    }
    if (!res.combo_errors.empty()) j["combination_errors"] = res.combo_errors;
    return j;
}

inline void write_run_outputs(const ExperimentConfig& cfg, const RunResult& res) {
    std::filesystem::create_directories(cfg.output_dir);
    write_records_csv(cfg.output_dir + "/records.csv", res, cfg.record_timing);
    std::ofstream f(cfg.output_dir + "/curves.json");
    if (!f) throw std::runtime_error("cannot write curves.json");
    f << curves_json(res).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// PAPR / PSD experiments
// ---------------------------------------------------------------------------

inline CVec scheme_frame(const ExperimentConfig& cfg, const LinkSet& links, SchemeId s,
                         int modulation, std::uint64_t seed) {
    const Constellation constel = Constellation::make(modulation);
    switch (s) {
        case SchemeId::fft2d_fb: {
            const BitVec bits = random_bits(
                static_cast<std::size_t>(links.fb.symbols_per_frame()) * constel.bits_per_symbol,
                seed);
            return links.fb.transmit(qam_map(bits, constel));
        }
        case SchemeId::otfs: {
            const BitVec bits = random_bits(
                static_cast<std::size_t>(links.otfs.symbols_per_frame()) * constel.bits_per_symbol,
                seed);
            return links.otfs.transmit(qam_map(bits, constel));
        }
        case SchemeId::ofdm: {
            const BitVec bits = random_bits(
                static_cast<std::size_t>(links.ofdm.symbols_per_frame()) * constel.bits_per_symbol,
                seed);
            return links.ofdm.transmit(qam_map(bits, constel));
        }
        case SchemeId::fbmc:
            return links.fbmc.frame(seed);
    }
    throw std::invalid_argument("scheme_frame: bad scheme");
}

struct PaprResult {
    SchemeId scheme;
    CcdfCurve ccdf;
    double papr_at_1e3 = 0.0;
    int frames = 0;
};

inline std::vector<PaprResult> run_papr(const ExperimentConfig& cfg, int workers = 0,
                                        int modulation = 4) {
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
    const LinkSet links = LinkSet::make(cfg);
    std::vector<double> thresholds;
    for (double t = cfg.papr_min_db; t <= cfg.papr_max_db + 1e-9; t += cfg.papr_step_db)
        thresholds.push_back(t);
    std::vector<PaprResult> out;
    for (std::size_t si = 0; si < cfg.papr_schemes.size(); ++si) {
        const SchemeId s = cfg.papr_schemes[si];
        std::vector<double> paprs(static_cast<std::size_t>(cfg.papr_frames));
        std::atomic<int> next{0};
        auto worker = [&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= cfg.papr_frames) break;
                const std::uint64_t seed =
                    trial_seed(cfg.master_seed, 0xA770ull + si, static_cast<std::uint64_t>(i));
                paprs[static_cast<std::size_t>(i)] =
                    papr_db(scheme_frame(cfg, links, s, modulation, seed));
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        PaprResult r;
        r.scheme = s;
        r.frames = cfg.papr_frames;
        r.papr_at_1e3 = papr_at_ccdf(paprs, 1e-3);
        r.ccdf = papr_ccdf_from_values(std::move(paprs), thresholds);
        out.push_back(std::move(r));
    }
    return out;
}

struct PsdResult {
    SchemeId scheme;
    PsdCurve curve;
    double oob_at_10_offsets_db = 0.0;  // worst side, 10 subcarriers past the band edge
    int band_subcarriers = 0;
};

// Out-of-band level at +off subcarriers past either band edge (worst side),
// read from the raw periodogram bins (band occupies bins 0..L-1 scaled).
inline double oob_level_db(const PsdAccumulator& acc, int seg, int n_fft, int band_l, int off) {
    const int bins_per_sub = seg / n_fft;
    const int lo_bin = -off * bins_per_sub;
    const int hi_bin = (band_l - 1 + off) * bins_per_sub;
    return std::max(acc.power_db_at_bin(lo_bin), acc.power_db_at_bin(hi_bin));
}

inline std::vector<PsdResult> run_psd(const ExperimentConfig& cfg, int modulation = 4) {
    const LinkSet links = LinkSet::make(cfg);
    std::vector<PsdResult> out;
    for (std::size_t si = 0; si < cfg.psd_schemes.size(); ++si) {
        const SchemeId s = cfg.psd_schemes[si];
        const int n_fft = (s == SchemeId::otfs)   ? cfg.otfs_cfg.n_fft
                          : (s == SchemeId::ofdm) ? cfg.ofdm_cfg.n_fft
                                                  : cfg.grid.n_fft;
        const int seg = cfg.psd_segment > 0 ? cfg.psd_segment : 4 * n_fft;
        const double fs = cfg.sample_rate_for(n_fft);
        PsdAccumulator acc(seg, cfg.psd_overlap, fs);
        for (int i = 0; i < cfg.psd_frames; ++i) {
            const std::uint64_t seed =
                trial_seed(cfg.master_seed, 0x95Dull + si, static_cast<std::uint64_t>(i));
            acc.add(scheme_frame(cfg, links, s, modulation, seed));
        }
        PsdResult r;
        r.scheme = s;
        r.curve = acc.finalize();
        r.band_subcarriers = cfg.grid.L;
        r.oob_at_10_offsets_db = oob_level_db(acc, seg, n_fft, cfg.grid.L, 10);
        out.push_back(std::move(r));
    }
    return out;
}

inline void write_papr_outputs(const ExperimentConfig& cfg, const std::vector<PaprResult>& res) {
    std::filesystem::create_directories(cfg.output_dir);
    std::ofstream f(cfg.output_dir + "/papr.csv");
    f << "scheme,threshold_db,ccdf,frames\n";
    char buf[128];
    for (const auto& r : res)
        for (std::size_t i = 0; i < r.ccdf.thresholds_db.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%s,%.2f,%.8f,%d\n", to_string(r.scheme),
                          r.ccdf.thresholds_db[i], r.ccdf.probabilities[i], r.frames);
            f << buf;
        }
    json j;
    j["papr_db_at_ccdf_1e-3"] = json::object();
    for (const auto& r : res) j["papr_db_at_ccdf_1e-3"][to_string(r.scheme)] = r.papr_at_1e3;
    std::ofstream js(cfg.output_dir + "/papr_summary.json");
    js << j.dump(2) << "\n";
}

inline void write_psd_outputs(const ExperimentConfig& cfg, const std::vector<PsdResult>& res) {
    std::filesystem::create_directories(cfg.output_dir);
    std::ofstream f(cfg.output_dir + "/psd.csv");
    f << "scheme,freq_hz,power_db\n";
    char buf[128];
    for (const auto& r : res)
        for (std::size_t i = 0; i < r.curve.freqs_hz.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%s,%.1f,%.4f\n", to_string(r.scheme),
                          r.curve.freqs_hz[i], r.curve.power_db[i]);
            f << buf;
        }
    json j;
    j["oob_db_at_10_subcarriers"] = json::object();
    for (const auto& r : res) j["oob_db_at_10_subcarriers"][to_string(r.scheme)] = r.oob_at_10_offsets_db;
    std::ofstream js(cfg.output_dir + "/psd_summary.json");
    js << j.dump(2) << "\n";
}

// Dry-run construction plus invariant self-test; returns diagnostics.
inline std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
    std::vector<std::string> report;
    const LinkSet links = LinkSet::make(cfg);
    report.push_back("links constructed: fft2d_fb M=" + std::to_string(links.fb.frame_samples()) +
                     ", otfs M=" + std::to_string(links.otfs.frame_samples()) +
                     ", ofdm M=" + std::to_string(links.ofdm.frame_samples()));
    // filter energy
    const double fe = links.fb.filter.taps.squaredNorm();
    if (std::abs(fe - 1.0) > 1e-10) throw std::runtime_error("validate: filter energy off");
    report.push_back("prototype filter unit energy ok");
    // placement round trip
    {
        const Constellation c4 = Constellation::make(4);
        const BitVec bits = random_bits(static_cast<std::size_t>(cfg.grid.data_per_frame()) * 2, 7);
        const CVec syms = qam_map(bits, c4);
        const CVec back = extract_data(place_data(syms, cfg.grid), cfg.grid);
        if ((back - syms).cwiseAbs().maxCoeff() > 0.0)
            throw std::runtime_error("validate: placement round-trip failed");
        report.push_back("delay-Doppler placement round-trip ok");
    }
    // compensation strictly positive on active rows
    for (int i : cfg.grid.active_rows())
        if (!(links.fb.comp.b_tilde(i) > 0.0))
            throw std::runtime_error("validate: compensation not positive");
    report.push_back("compensation vector positive on active rows");
    // noiseless loopback EVM
    {
        const Constellation c16 = Constellation::make(16);
        double num = 0.0, den = 0.0;
        for (int f = 0; f < 4; ++f) {
            const BitVec bits = random_bits(
                static_cast<std::size_t>(links.fb.symbols_per_frame()) * 4, 1000 + f);
            const CVec syms = qam_map(bits, c16);
            const CVec s = links.fb.transmit(syms);
            const CMat y = analyze(s, links.fb.plan);
            const CVec est = extract_data(isfft_postcode(y, links.fb.comp, cfg.grid), cfg.grid);
            num += (est - syms).squaredNorm();
            den += syms.squaredNorm();
        }
        const double evm_db = 10.0 * std::log10(num / den);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "noiseless loopback EVM %.2f dB", evm_db);
        report.push_back(buf);
        if (evm_db > -25.0) throw std::runtime_error("validate: loopback EVM too high");
    }
    report.push_back("combinations: " + std::to_string(cfg.combinations().size()));
    return report;
}

} // namespace fb2d
