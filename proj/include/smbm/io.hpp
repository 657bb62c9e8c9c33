#pragma once

#include <string>
#include <vector>

#include "smbm/engine.hpp"

namespace smbm {

// shortest representation that round-trips a double (up to 17 significant digits)
std::string format_double(double v);

// header: snr_db,mse_empirical,mse_analytic,ber,bit_errors,bits_simulated,abep_bound,warning
// LF line endings, fields empty when the record carries no value
void write_csv(const std::vector<SweepRecord>& records, const std::string& path);

struct ManifestInfo {
    std::string tool_version;
    std::string started_at;
    std::string finished_at;
    std::string csv_path;
};

void write_manifest(const SweepConfig& cfg, const std::vector<SweepRecord>& records,
                    const ManifestInfo& info, const std::string& path);

// standalone gnuplot script, log-scale y, referencing the CSV by relative path
void emit_plot_script(const std::vector<SweepRecord>& records, RunMode mode,
                      const std::string& csv_path, const std::string& script_path);

// "start:step:stop" (inclusive stop when on-grid) or a single value
std::vector<double> parse_snr_grid(const std::string& text);

std::string csi_name(CsiMode m);
std::string mode_name(RunMode m);
std::string modulation_name(const ModulationSpec& spec);

}  // namespace smbm
