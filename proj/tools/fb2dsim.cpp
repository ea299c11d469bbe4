#include "fb2d/fb2d.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

struct CommonOpts {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 0;
    std::string out_dir;
    double max_minutes = 0.0;
};

fb2d::ExperimentConfig load(const CommonOpts& o) {
    auto cfg = fb2d::ExperimentConfig::from_file(o.config_path);
    if (o.seed_set) cfg.master_seed = o.seed;
    if (!o.out_dir.empty()) cfg.output_dir = o.out_dir;
    return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "experiment config (JSON)")
        ->required()
        ->envname("FB2D_CONFIG");
    cmd->add_option("--seed", o.seed, "master seed override")
        ->envname("FB2D_SEED")
        ->each([&o](const std::string&) { o.seed_set = true; });
    cmd->add_option("--workers", o.workers, "worker thread count")->envname("FB2D_WORKERS");
    cmd->add_option("--out", o.out_dir, "output directory override")->envname("FB2D_OUT");
    cmd->add_option("--max-minutes", o.max_minutes, "wall clock cap in minutes")
        ->envname("FB2D_MAX_MINUTES");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fb2dsim: 2D-FFT precoded filter bank Monte-Carlo simulator"};
    app.require_subcommand(1);

    CommonOpts run_o, papr_o, psd_o, val_o, cx_o;
    auto* run = app.add_subcommand("run", "run the BER experiment matrix");
    add_common(run, run_o);
    auto* papr = app.add_subcommand("papr", "PAPR CCDF comparison");
    add_common(papr, papr_o);
    auto* psd = app.add_subcommand("psd", "Welch PSD comparison");
    add_common(psd, psd_o);
    auto* val = app.add_subcommand("validate", "dry-run construction and invariant self-test");
    add_common(val, val_o);
    auto* cx = app.add_subcommand("complexity", "evaluate the transmitter/receiver cost formulas");
    add_common(cx, cx_o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            auto cfg = load(run_o);
            const auto res = fb2d::run_experiment(cfg, run_o.workers, run_o.max_minutes);
            fb2d::write_run_outputs(cfg, res);
            for (const auto& e : res.combo_errors) std::cerr << "warning: " << e << "\n";
            if (res.truncated_by_wallclock)
                std::cerr << "warning: run truncated by --max-minutes; outputs are partial\n";
            std::cerr << "wrote " << cfg.output_dir << "/records.csv and curves.json ("
                      << res.records.size() << " trials)\n";
        } else if (papr->parsed()) {
            auto cfg = load(papr_o);
            const auto res = fb2d::run_papr(cfg, papr_o.workers);
            fb2d::write_papr_outputs(cfg, res);
            for (const auto& r : res)
                std::fprintf(stderr, "%-9s PAPR@CCDF1e-3 = %6.2f dB (%d frames)\n",
                             fb2d::to_string(r.scheme), r.papr_at_1e3, r.frames);
        } else if (psd->parsed()) {
            auto cfg = load(psd_o);
            const auto res = fb2d::run_psd(cfg);
            fb2d::write_psd_outputs(cfg, res);
            for (const auto& r : res)
                std::fprintf(stderr, "%-9s OOB@+10 subcarriers = %7.2f dB\n",
                             fb2d::to_string(r.scheme), r.oob_at_10_offsets_db);
        } else if (val->parsed()) {
            auto cfg = load(val_o);
            for (const auto& line : fb2d::validate_config(cfg)) std::cout << line << "\n";
            std::cout << "validate: ok\n";
        } else if (cx->parsed()) {
            auto cfg = load(cx_o);
            fb2d::ComplexityParams p;
            p.L = cfg.grid.L;
            p.N = cfg.grid.n_fft;
            p.K = cfg.otfs_cfg.k_doppler;
            p.k_prime = cfg.grid.k_prime;
            p.overlap = 1.5;
            using fb2d::Receiver;
            using fb2d::Scheme;
            std::printf("transmitter multiplications (L=%g N=%g K=%g K'=%g O=%g):\n", p.L, p.N,
                        p.K, p.k_prime, p.overlap);
            std::printf("  %-16s %14.0f\n", "fbmc", fb2d::complexity_tx(Scheme::fbmc, p));
            std::printf("  %-16s %14.0f\n", "dft_precoded_fb",
                        fb2d::complexity_tx(Scheme::dft_precoded_fb, p));
            std::printf("  %-16s %14.0f\n", "otfs", fb2d::complexity_tx(Scheme::otfs, p));
            std::printf("  %-16s %14.0f\n", "fft2d_fb", fb2d::complexity_tx(Scheme::fft2d_fb, p));
            std::printf("receiver multiplications:\n");
            for (auto [rn, rv] : {std::pair<const char*, Receiver>{"mmse_freq", Receiver::mmse_freq},
                                  {"mmse_dd", Receiver::mmse_dd},
                                  {"hybrid_iic", Receiver::hybrid_iic}}) {
                std::printf("  %-16s fft2d_fb %14.0f   otfs %14.0f\n", rn,
                            fb2d::complexity_rx(Scheme::fft2d_fb, rv, p),
                            fb2d::complexity_rx(Scheme::otfs, rv, p));
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
