#include "smbm/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace smbm {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string opt_field(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

std::string opt_field(const std::optional<long long>& v) {
    return v ? std::to_string(*v) : std::string();
}

}  // namespace

void write_csv(const std::vector<SweepRecord>& records, const std::string& path) {
    if (records.empty()) throw std::invalid_argument("no records to write");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "snr_db,mse_empirical,mse_analytic,ber,bit_errors,bits_simulated,abep_bound,warning\n";
    for (const auto& r : records) {
        out << format_double(r.snr_db) << ',' << opt_field(r.mse_empirical) << ','
            << opt_field(r.mse_analytic) << ',' << opt_field(r.ber) << ','
            << opt_field(r.bit_errors) << ',' << opt_field(r.bits_simulated) << ','
            << opt_field(r.abep_bound) << ',' << r.warning << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_manifest(const SweepConfig& cfg, const std::vector<SweepRecord>& records,
                    const ManifestInfo& info, const std::string& path) {
    nlohmann::json j;
    j["tool"] = "smbm-sim";
    j["tool_version"] = info.tool_version;
    j["started_at"] = info.started_at;
    j["finished_at"] = info.finished_at;
    j["csv"] = info.csv_path;
    j["master_seed"] = cfg.master_seed;

    nlohmann::json c;
    c["mode"] = mode_name(cfg.mode);
    c["csi"] = csi_name(cfg.csi);
    c["modulation"] = modulation_name(cfg.system.modulation);
    c["symbol_energy"] = cfg.system.modulation.symbol_energy;
    c["nt"] = cfg.system.n_tx;
    c["nr"] = cfg.system.n_rx;
    c["nrf"] = cfg.system.n_rf;
    c["snr_grid_db"] = cfg.snr_grid_db;
    c["block_length"] = cfg.block_length;
    c["min_bit_errors"] = cfg.min_bit_errors;
    c["max_blocks"] = cfg.max_blocks;
    c["min_blocks"] = cfg.min_blocks;
    c["workers"] = cfg.workers;
    c["pilot"] = {{"re", cfg.pilot.value.real()}, {"im", cfg.pilot.value.imag()}};
    c["sigma_h2"] = cfg.sigma_h2;
    j["config"] = c;

    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json e;
        e["snr_db"] = r.snr_db;
        e["blocks"] = r.blocks;
        e["warning"] = r.warning;
        if (r.ber_se) e["ber_se"] = *r.ber_se;
        if (r.ber_se_blocks) e["ber_se_blocks"] = *r.ber_se_blocks;
        recs.push_back(e);
    }
    j["records"] = recs;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
}

void emit_plot_script(const std::vector<SweepRecord>& records, RunMode mode,
                      const std::string& csv_path, const std::string& script_path) {
    if (records.empty()) throw std::invalid_argument("no records to plot");
    fs::path csv(csv_path), script(script_path);
    std::string ref = csv_path;
    if (csv.parent_path() == script.parent_path()) ref = csv.filename().string();

    std::ofstream out(script_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + script_path);
    out << "# gnuplot script generated by smbm-sim\n";
    out << "set datafile separator \",\"\n";
    out << "set datafile missing \"\"\n";
    out << "set grid\n";
    out << "set logscale y\n";
    out << "set xlabel \"SNR (dB)\"\n";
    if (mode == RunMode::MSE) {
        out << "set ylabel \"MSE\"\n";
        out << "plot '" << ref << "' every ::1 using 1:2 with linespoints title 'empirical MSE', \\\n"
            << "     '" << ref << "' every ::1 using 1:3 with lines title 'analytic MSE'\n";
    } else if (mode == RunMode::BER) {
        out << "set ylabel \"BER / ABEP\"\n";
        out << "plot '" << ref << "' every ::1 using 1:4 with linespoints title 'simulated BER', \\\n"
            << "     '" << ref << "' every ::1 using 1:7 with lines title 'ABEP bound'\n";
    } else {
        out << "set ylabel \"ABEP\"\n";
        out << "plot '" << ref << "' every ::1 using 1:7 with lines title 'ABEP bound'\n";
    }
}

std::vector<double> parse_snr_grid(const std::string& text) {
    auto parse_num = [](const std::string& s) {
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("snr grid: not a number: '" + s + "'");
        }
        if (pos != s.size()) throw std::invalid_argument("snr grid: not a number: '" + s + "'");
        return v;
    };

    std::vector<std::string> parts;
    std::size_t begin = 0;
    while (true) {
        std::size_t colon = text.find(':', begin);
        if (colon == std::string::npos) {
            parts.push_back(text.substr(begin));
            break;
        }
        parts.push_back(text.substr(begin, colon - begin));
        begin = colon + 1;
    }

    if (parts.size() == 1) return {parse_num(parts[0])};
    if (parts.size() != 3)
        throw std::invalid_argument("snr grid must be a single value or start:step:stop");

    const double start = parse_num(parts[0]);
    const double step = parse_num(parts[1]);
    const double stop = parse_num(parts[2]);
    if (step <= 0.0) throw std::invalid_argument("snr grid: step must be positive");
    if (stop < start) throw std::invalid_argument("snr grid: stop must be >= start");

    std::vector<double> grid;
    const double eps = step * 1e-9;
    for (int i = 0;; ++i) {
        double v = start + i * step;
        if (v > stop + eps) break;
        grid.push_back(v);
    }
    return grid;
}

std::string csi_name(CsiMode m) {
    switch (m) {
        case CsiMode::PERFECT:
            return "perfect";
        case CsiMode::LS:
            return "ls";
        case CsiMode::LMMSE:
            return "lmmse";
    }
    return "?";
}

std::string mode_name(RunMode m) {
    switch (m) {
        case RunMode::MSE:
            return "mse";
        case RunMode::BER:
            return "ber";
        case RunMode::ABEP:
            return "abep";
    }
    return "?";
}

std::string modulation_name(const ModulationSpec& spec) {
    if (spec.kind == ModKind::PSK) {
        switch (spec.order) {
            case 2:
                return "bpsk";
            case 4:
                return "qpsk";
            default:
                return std::to_string(spec.order) + "psk";
        }
    }
    return std::to_string(spec.order) + "qam";
}

}  // namespace smbm
