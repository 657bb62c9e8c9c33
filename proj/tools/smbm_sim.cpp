#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "smbm/engine.hpp"
#include "smbm/io.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

std::string iso_utc_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string default_out_path() {
    const char* dir = std::getenv("SMBM_OUT_DIR");
    std::filesystem::path base = (dir && *dir) ? dir : ".";
    return (base / "results.csv").string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"smbm-sim: spatial media-based modulation link simulator"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "key=value config file; flags override file values");

    std::string mode = "ber";
    std::string csi;  // default depends on mode
    std::string mod = "qpsk";
    std::string snr = "-4:2:16";
    std::string out_path;
    std::string plot_path;
    int nt = 4, nr = 4, nrf = 2, workers = 1, block_length = 100;
    double es = 1.0, sigma_h2 = 1.0;
    long long min_bit_errors = 200, max_blocks = 1'000'000, min_blocks = 100'000;
    std::uint64_t seed = 1;
    bool warnings_as_errors = false;

    app.add_option("--mode", mode, "sweep kind: mse, ber, or abep")
        ->check(CLI::IsMember({"mse", "ber", "abep"}))
        ->capture_default_str();
    app.add_option("--csi", csi,
                   "receiver CSI: perfect, ls, or lmmse (default: perfect for ber/abep, "
                   "lmmse for mse)")
        ->check(CLI::IsMember({"perfect", "ls", "lmmse"}));
    app.add_option("--mod", mod, "modulation: bpsk qpsk 8psk 16psk 32psk 16qam 64qam")
        ->capture_default_str();
    app.add_option("--nt", nt, "transmit antennas (power of two)")->capture_default_str();
    app.add_option("--nr", nr, "receive antennas")->capture_default_str();
    app.add_option("--nrf", nrf, "RF mirrors per transmit antenna")->capture_default_str();
    app.add_option("--es", es, "mean symbol energy E_s")->capture_default_str();
    app.add_option("--snr", snr, "SNR grid in dB: start:step:stop or a single value")
        ->capture_default_str();
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    app.add_option("--out", out_path,
                   "output CSV path (default: results.csv in $SMBM_OUT_DIR or .)");
    app.add_option("--plot-script", plot_path, "also write a gnuplot script to this path");
    app.add_option("--block-length", block_length, "data symbols per fading block")
        ->capture_default_str();
    app.add_option("--min-bit-errors", min_bit_errors, "per-point stopping target (ber mode)")
        ->capture_default_str();
    app.add_option("--max-blocks", max_blocks, "per-point block cap (ber mode)")
        ->capture_default_str();
    app.add_option("--min-blocks", min_blocks, "channel draws per point (mse mode)")
        ->capture_default_str();
    app.add_option("--workers", workers, "worker threads (output is worker-count invariant)")
        ->capture_default_str();
    app.add_flag("--warnings-as-errors", warnings_as_errors,
                 "exit nonzero if any SNR point ends with a warning");

    CLI11_PARSE(app, argc, argv);

    smbm::SweepConfig cfg;
    std::string csv_path = out_path.empty() ? default_out_path() : out_path;
    try {
        if (mode == "mse")
            cfg.mode = smbm::RunMode::MSE;
        else if (mode == "abep")
            cfg.mode = smbm::RunMode::ABEP;
        else
            cfg.mode = smbm::RunMode::BER;

        if (csi.empty()) csi = (cfg.mode == smbm::RunMode::MSE) ? "lmmse" : "perfect";
        if (csi == "perfect")
            cfg.csi = smbm::CsiMode::PERFECT;
        else if (csi == "ls")
            cfg.csi = smbm::CsiMode::LS;
        else
            cfg.csi = smbm::CsiMode::LMMSE;

        cfg.system.modulation = smbm::modulation_from_name(mod, es);
        cfg.system.n_tx = nt;
        cfg.system.n_rx = nr;
        cfg.system.n_rf = nrf;
        cfg.snr_grid_db = smbm::parse_snr_grid(snr);
        cfg.block_length = block_length;
        cfg.min_bit_errors = min_bit_errors;
        cfg.max_blocks = max_blocks;
        cfg.min_blocks = min_blocks;
        cfg.master_seed = seed;
        cfg.workers = workers;
        cfg.sigma_h2 = sigma_h2;

        smbm::ManifestInfo info;
        info.tool_version = kVersion;
        info.csv_path = csv_path;
        info.started_at = iso_utc_now();

        std::vector<smbm::SweepRecord> records = smbm::run_sweep(cfg);

        info.finished_at = iso_utc_now();
        smbm::write_csv(records, csv_path);
        smbm::write_manifest(cfg, records, info, csv_path + ".manifest.json");
        if (!plot_path.empty())
            smbm::emit_plot_script(records, cfg.mode, csv_path, plot_path);

        int warned = 0;
        for (const auto& r : records)
            if (!r.warning.empty()) {
                ++warned;
                std::cerr << "warning: snr " << smbm::format_double(r.snr_db) << " dB: "
                          << r.warning << "\n";
            }
        std::cout << "wrote " << csv_path << " (" << records.size() << " points)\n";
        if (warned && warnings_as_errors) return 3;
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
