#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "smbm/engine.hpp"

using namespace smbm;

namespace {

SweepConfig small_sweep() {
    SweepConfig s;
    s.system.n_tx = 2;
    s.system.n_rx = 2;
    s.system.n_rf = 1;
    s.system.modulation = {ModKind::PSK, 4, 1.0};
    s.snr_grid_db = {0.0, 4.0};
    s.mode = RunMode::BER;
    s.csi = CsiMode::PERFECT;
    s.block_length = 20;
    s.min_bit_errors = 2000;
    s.max_blocks = 5000;
    s.min_blocks = 2000;
    s.master_seed = 5;
    s.workers = 1;
    return s;
}

bool records_identical(const std::vector<SweepRecord>& a, const std::vector<SweepRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& x = a[i];
        const auto& y = b[i];
        if (x.snr_db != y.snr_db || x.warning != y.warning || x.blocks != y.blocks) return false;
        if (x.mse_empirical != y.mse_empirical || x.mse_analytic != y.mse_analytic) return false;
        if (x.ber != y.ber || x.bit_errors != y.bit_errors) return false;
        if (x.bits_simulated != y.bits_simulated || x.abep_bound != y.abep_bound) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("run_block is a pure function of (seed, point, block)") {
    auto s = small_sweep();
    s.csi = CsiMode::LMMSE;
    BlockTally a = run_block(77, 1, s);
    BlockTally b = run_block(77, 1, s);
    CHECK(a.bit_errors == b.bit_errors);
    CHECK(a.bits == b.bits);
    CHECK(a.mse_sample == b.mse_sample);
    CHECK(a.bits == 20 * spectral_efficiency(s.system));
    CHECK(a.mse_sample > 0.0);

    BlockTally c = run_block(78, 1, s);
    BlockTally d = run_block(77, 0, s);
    CHECK((c.bit_errors != a.bit_errors || c.mse_sample != a.mse_sample));
    CHECK((d.bit_errors != a.bit_errors || d.mse_sample != a.mse_sample));

    CHECK_THROWS_AS(run_block(0, 2, s), std::out_of_range);
    CHECK_THROWS_AS(run_block(0, -1, s), std::out_of_range);
}

TEST_CASE("sweeps repeat bit for bit") {
    auto s = small_sweep();
    auto a = run_sweep(s);
    auto b = run_sweep(s);
    CHECK(records_identical(a, b));

    s.master_seed = 6;
    auto c = run_sweep(s);
    CHECK_FALSE(records_identical(a, c));
}

TEST_CASE("records are invariant under the worker count") {
    auto s = small_sweep();  // stops mid-sweep: several batches per point
    auto one = run_sweep(s);
    s.workers = 4;
    auto four = run_sweep(s);
    s.workers = 3;
    auto three = run_sweep(s);
    s.workers = 64;  // more workers than batches
    auto many = run_sweep(s);
    CHECK(records_identical(one, four));
    CHECK(records_identical(one, three));
    CHECK(records_identical(one, many));
}

TEST_CASE("ber record bookkeeping") {
    auto s = small_sweep();
    auto recs = run_sweep(s);
    REQUIRE(recs.size() == 2);
    for (const auto& r : recs) {
        REQUIRE(r.ber.has_value());
        REQUIRE(r.bit_errors.has_value());
        REQUIRE(r.bits_simulated.has_value());
        REQUIRE(r.abep_bound.has_value());
        REQUIRE(r.mse_empirical.has_value());
        REQUIRE(r.mse_analytic.has_value());
        CHECK(*r.mse_empirical == 0.0);  // perfect csi
        CHECK(*r.mse_analytic == 0.0);
        CHECK(*r.bits_simulated == r.blocks * 20 * spectral_efficiency(s.system));
        CHECK(*r.ber == double(*r.bit_errors) / double(*r.bits_simulated));
        CHECK(*r.bit_errors >= s.min_bit_errors);
        CHECK(r.blocks <= s.max_blocks);
        CHECK(r.warning.empty());
        CHECK(r.ber_se.has_value());
        CHECK(r.ber_se_blocks.has_value());
        CHECK(*r.ber_se_blocks > 0.0);
    }
    CHECK(*recs[0].ber > *recs[1].ber);  // monotone in snr for this span
}

TEST_CASE("error starvation raises the warning") {
    auto s = small_sweep();
    s.snr_grid_db = {200.0};
    s.min_bit_errors = 10;
    s.max_blocks = 50;
    s.block_length = 10;
    auto recs = run_sweep(s);
    REQUIRE(recs.size() == 1);
    CHECK(*recs[0].ber == 0.0);
    CHECK(*recs[0].bit_errors == 0);
    CHECK(recs[0].blocks == 50);
    CHECK(recs[0].warning == "insufficient_bit_errors");
}

TEST_CASE("engine agrees with a straight-line rerun of the block stream") {
    auto s = small_sweep();
    s.csi = CsiMode::LMMSE;
    s.snr_grid_db = {4.0};
    s.min_bit_errors = 500;
    s.workers = 4;
    auto recs = run_sweep(s);
    const auto& r = recs[0];

    // replay the folded prefix block by block through the public spot-check
    long long errs = 0, bits = 0;
    for (long long b = 0; b < r.blocks; ++b) {
        BlockTally t = run_block(b, 0, s);
        errs += t.bit_errors;
        bits += t.bits;
    }
    CHECK(errs == *r.bit_errors);
    CHECK(bits == *r.bits_simulated);
}

TEST_CASE("an independently seeded simulation lands within sampling error") {
    SweepConfig s = small_sweep();
    s.csi = CsiMode::LMMSE;
    s.snr_grid_db = {4.0};
    s.min_bit_errors = 800;
    s.max_blocks = 100000;
    auto r = run_sweep(s)[0];

    // same physics, different seed and plain loop
    auto cfg = s.system;
    auto c = build_constellation(cfg.modulation);
    const int eta = spectral_efficiency(cfg);
    const double sn2 = noise_variance_for_snr(4.0, cfg);
    long long errs = 0, bits = 0;
    const int blocks = 4000;
    std::vector<long long> per_block(blocks);
    for (int b = 0; b < blocks; ++b) {
        RngStream rng(999, 0, b);
        auto h = draw_channel(cfg, 1.0, rng);
        auto obs = sound_channel(h, s.pilot, sn2, rng);
        auto est = estimate_lmmse(obs, s.pilot, sn2, 1.0);
        BlockDetector det(est, c, cfg);
        long long be = 0;
        for (int t = 0; t < s.block_length; ++t) {
            auto [sym, x] = map_source(rng.bits(eta), cfg, c);
            auto y = transmit(h, cfg, sym, x.value, {sn2}, rng);
            be += count_bit_errors(sym, det.detect(y), cfg, c);
        }
        per_block[b] = be;
        errs += be;
        bits += static_cast<long long>(s.block_length) * eta;
    }
    const double ber2 = double(errs) / double(bits);
    double mean = double(errs) / blocks, var = 0.0;
    for (long long be : per_block) var += (be - mean) * (be - mean);
    var /= blocks;
    const double se2 = std::sqrt(var / blocks) / (s.block_length * eta);

    const double tol = 5.0 * (*r.ber_se_blocks + se2);
    CHECK(std::abs(*r.ber - ber2) <= tol);
}

TEST_CASE("mse sweeps run a fixed number of draws") {
    SweepConfig s = small_sweep();
    s.mode = RunMode::MSE;
    s.csi = CsiMode::LS;
    s.snr_grid_db = {-4.0, 0.0};
    s.min_blocks = 20000;
    auto recs = run_sweep(s);
    REQUIRE(recs.size() == 2);
    for (const auto& r : recs) {
        CHECK(r.blocks == 20000);
        CHECK_FALSE(r.ber.has_value());
        CHECK_FALSE(r.bit_errors.has_value());
        CHECK_FALSE(r.bits_simulated.has_value());
        CHECK_FALSE(r.abep_bound.has_value());
        REQUIRE(r.mse_empirical.has_value());
        REQUIRE(r.mse_analytic.has_value());
        CHECK(*r.mse_empirical == doctest::Approx(*r.mse_analytic).epsilon(0.02));
        CHECK(r.warning.empty());
    }
    CHECK(*recs[0].mse_empirical > *recs[1].mse_empirical);

    s.workers = 4;
    auto wrecs = run_sweep(s);
    CHECK(records_identical(recs, wrecs));
}

TEST_CASE("abep sweeps are analytic only") {
    SweepConfig s = small_sweep();
    s.mode = RunMode::ABEP;
    s.snr_grid_db = {0.0, 4.0, 8.0};
    auto recs = run_sweep(s);
    REQUIRE(recs.size() == 3);
    for (const auto& r : recs) {
        REQUIRE(r.abep_bound.has_value());
        CHECK_FALSE(r.ber.has_value());
        CHECK_FALSE(r.mse_empirical.has_value());
        CHECK_FALSE(r.mse_analytic.has_value());
        CHECK(r.blocks == 0);
    }
    CHECK(*recs[0].abep_bound > *recs[1].abep_bound);
    CHECK(*recs[1].abep_bound > *recs[2].abep_bound);

    auto curve = run_abep_curve(s);
    REQUIRE(curve.size() == 3);
    for (std::size_t i = 0; i < curve.size(); ++i) {
        CHECK(curve[i].first == recs[i].snr_db);
        CHECK(curve[i].second == *recs[i].abep_bound);
    }

    // imperfect csi inflates the analytic bound
    s.csi = CsiMode::LS;
    auto ls_curve = run_abep_curve(s);
    for (std::size_t i = 0; i < curve.size(); ++i) CHECK(ls_curve[i].second > curve[i].second);
}

TEST_CASE("config validation") {
    auto s = small_sweep();
    s.snr_grid_db.clear();
    CHECK_THROWS_AS(run_sweep(s), std::invalid_argument);

    s = small_sweep();
    s.snr_grid_db = {4.0, 4.0};
    CHECK_THROWS_AS(run_sweep(s), std::invalid_argument);

    s = small_sweep();
    s.workers = 0;
    CHECK_THROWS_AS(run_sweep(s), std::invalid_argument);

    s = small_sweep();
    s.block_length = 0;
    CHECK_THROWS_AS(run_sweep(s), std::invalid_argument);

    s = small_sweep();
    s.mode = RunMode::MSE;
    s.csi = CsiMode::PERFECT;
    CHECK_THROWS_AS(run_sweep(s), std::invalid_argument);

    s = small_sweep();
    s.system.n_tx = 3;
    CHECK_THROWS_AS(run_sweep(s), std::invalid_argument);
}

TEST_CASE("estimation error variance feeds the analytic columns") {
    PilotSpec p;
    CHECK(sigma_e2_for(CsiMode::PERFECT, p, 0.3, 1.0) == 0.0);
    CHECK(sigma_e2_for(CsiMode::LS, p, 0.3, 1.0) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(sigma_e2_for(CsiMode::LMMSE, p, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
}
