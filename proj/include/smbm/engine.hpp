#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smbm/abep.hpp"
#include "smbm/detection.hpp"

namespace smbm {

enum class CsiMode { PERFECT, LS, LMMSE };
enum class RunMode { MSE, BER, ABEP };

struct SweepConfig {
    SystemConfig system;
    std::vector<double> snr_grid_db;  // strictly increasing, nonempty
    RunMode mode = RunMode::BER;
    CsiMode csi = CsiMode::PERFECT;
    int block_length = 100;            // B data symbols per channel realization
    long long min_bit_errors = 200;    // BER stopping target
    long long max_blocks = 1'000'000;  // hard cap per SNR point
    long long min_blocks = 100'000;    // exact block count for MSE-only sweeps
    std::uint64_t master_seed = 1;
    int workers = 1;
    PilotSpec pilot;
    double sigma_h2 = 1.0;
};

struct SweepRecord {
    double snr_db = 0.0;
    std::optional<double> mse_empirical;
    std::optional<double> mse_analytic;
    std::optional<double> ber;
    std::optional<long long> bit_errors;
    std::optional<long long> bits_simulated;
    std::optional<double> abep_bound;
    std::string warning;  // empty or "insufficient_bit_errors"

    // reported alongside (manifest, not CSV)
    long long blocks = 0;
    std::optional<double> ber_se;         // ber/sqrt(bit_errors)
    std::optional<double> ber_se_blocks;  // CLT estimate from per-block error counts
};

struct BlockTally {
    long long bit_errors = 0;
    long long bits = 0;
    double mse_sample = 0.0;  // 0 under PERFECT csi
};

// Deterministic function of (master_seed, snr point index, block_id): draws
// one channel, sounds and estimates when csi != PERFECT, then simulates
// block_length data symbols (skipped entirely in MSE mode).
BlockTally run_block(long long block_id, int snr_index, const SweepConfig& sweep);

// Per SNR point: run blocks until min_bit_errors or max_blocks (MSE mode:
// exactly min_blocks), plus the analytic MSE and ABEP bound columns for the
// active mode. Identical output for any worker count.
std::vector<SweepRecord> run_sweep(const SweepConfig& sweep);

// pure analytic evaluation, no randomness
std::vector<std::pair<double, double>> run_abep_curve(const SweepConfig& sweep);

double sigma_e2_for(CsiMode csi, PilotSpec pilot, double sigma_n2, double sigma_h2);

}  // namespace smbm
