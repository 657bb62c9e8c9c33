#include "smbm/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace smbm {

double sigma_e2_for(CsiMode csi, PilotSpec pilot, double sigma_n2, double sigma_h2) {
    switch (csi) {
        case CsiMode::PERFECT:
            return 0.0;
        case CsiMode::LS:
            return analytic_mse(Estimator::LS, pilot, sigma_n2, sigma_h2);
        case CsiMode::LMMSE:
            return analytic_mse(Estimator::LMMSE, pilot, sigma_n2, sigma_h2);
    }
    throw std::logic_error("unreachable");
}

namespace {

constexpr long long kBatchBlocks = 64;

struct EngineCtx {
    const SweepConfig& cfg;
    Constellation cons;
    int eta;
    std::vector<double> sn2;
};

void check_sweep(const SweepConfig& cfg) {
    validate(cfg.system);
    if (cfg.snr_grid_db.empty()) throw std::invalid_argument("snr grid is empty");
    for (std::size_t i = 1; i < cfg.snr_grid_db.size(); ++i)
        if (cfg.snr_grid_db[i] <= cfg.snr_grid_db[i - 1])
            throw std::invalid_argument("snr grid must be strictly increasing");
    if (cfg.block_length < 1) throw std::invalid_argument("block_length must be >= 1");
    if (cfg.min_bit_errors < 1) throw std::invalid_argument("min_bit_errors must be >= 1");
    if (cfg.max_blocks < 1) throw std::invalid_argument("max_blocks must be >= 1");
    if (cfg.min_blocks < 1) throw std::invalid_argument("min_blocks must be >= 1");
    if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (cfg.sigma_h2 <= 0.0) throw std::invalid_argument("sigma_h2 must be positive");
    if (cfg.mode == RunMode::MSE && cfg.csi == CsiMode::PERFECT)
        throw std::invalid_argument("mse mode requires csi ls or lmmse");
}

EngineCtx make_ctx(const SweepConfig& cfg) {
    check_sweep(cfg);
    EngineCtx ctx{cfg, build_constellation(cfg.system.modulation),
                  spectral_efficiency(cfg.system), {}};
    ctx.sn2.reserve(cfg.snr_grid_db.size());
    for (double snr : cfg.snr_grid_db)
        ctx.sn2.push_back(noise_variance_for_snr(snr, cfg.system));
    return ctx;
}

BlockTally run_block_impl(const EngineCtx& ctx, int point, long long block_id) {
    const SweepConfig& cfg = ctx.cfg;
    const double sn2 = ctx.sn2[point];
    RngStream rng(cfg.master_seed, static_cast<std::uint64_t>(point),
                  static_cast<std::uint64_t>(block_id));

    ChannelRealization h = draw_channel(cfg.system, cfg.sigma_h2, rng);
    BlockTally tally;
    ChannelEstimate est;
    if (cfg.csi == CsiMode::PERFECT) {
        est = perfect_estimate(h);
    } else {
        std::vector<cplx> r = sound_channel(h, cfg.pilot, sn2, rng);
        est = (cfg.csi == CsiMode::LS) ? estimate_ls(r, cfg.pilot, sn2)
                                       : estimate_lmmse(r, cfg.pilot, sn2, cfg.sigma_h2);
        tally.mse_sample = empirical_mse(est, h);
    }
    if (cfg.mode == RunMode::MSE) return tally;

    BlockDetector detector(est, ctx.cons, cfg.system);
    const int stride = cfg.system.n_coords();
    std::vector<cplx> y(cfg.system.n_rx);
    for (int b = 0; b < cfg.block_length; ++b) {
        std::uint64_t q = rng.bits(ctx.eta);
        auto [sym, x] = map_source(q, cfg.system, ctx.cons);
        const int base = sym.coordinate - 1;
        for (int i = 0; i < cfg.system.n_rx; ++i)
            y[i] = x.value * h.coeff[i * stride + base] + rng.cgauss(sn2);
        Decision dec = detector.detect(y);
        tally.bit_errors += count_bit_errors(sym, dec, cfg.system, ctx.cons);
        tally.bits += ctx.eta;
    }
    return tally;
}

struct PointTotals {
    long long blocks = 0;
    long long bit_errors = 0;
    long long bits = 0;
    double mse_sum = 0.0;
    double err_sq_sum = 0.0;
};

void fold_block(PointTotals& tot, const BlockTally& t) {
    tot.blocks += 1;
    tot.bit_errors += t.bit_errors;
    tot.bits += t.bits;
    tot.mse_sum += t.mse_sample;
    tot.err_sq_sum += static_cast<double>(t.bit_errors) * static_cast<double>(t.bit_errors);
}

// Blocks are processed in batches; the set of blocks included in the totals
// is always the ordered prefix whose length is decided by folding batches in
// index order and evaluating the stopping rule at each batch boundary.
// Workers may compute batches beyond the eventual stopping point; those
// results are discarded, so totals are identical for any worker count.
PointTotals run_point(const EngineCtx& ctx, int point) {
    const SweepConfig& cfg = ctx.cfg;
    const bool stop_on_errors = cfg.mode != RunMode::MSE;
    const long long end_blocks = stop_on_errors ? cfg.max_blocks : cfg.min_blocks;
    const long long n_batches = (end_blocks + kBatchBlocks - 1) / kBatchBlocks;
    const int workers = static_cast<int>(
        std::min<long long>(std::max(1, cfg.workers), n_batches));
    const long long window = 4LL * workers;

    std::mutex mu;
    std::condition_variable cv_space;
    std::atomic<long long> next{0};
    std::vector<std::vector<BlockTally>> done(n_batches);
    std::vector<char> ready(n_batches, 0);
    long long frontier = 0;
    bool stopped = false;
    PointTotals tot;

    auto compute_batch = [&](long long b) {
        const long long first = b * kBatchBlocks;
        const long long last = std::min(end_blocks, first + kBatchBlocks);
        std::vector<BlockTally> tallies;
        tallies.reserve(last - first);
        for (long long id = first; id < last; ++id)
            tallies.push_back(run_block_impl(ctx, point, id));
        return tallies;
    };

    auto worker_fn = [&] {
        for (;;) {
            const long long b = next.fetch_add(1);
            if (b >= n_batches) return;
            {
                std::unique_lock<std::mutex> lk(mu);
                cv_space.wait(lk, [&] { return stopped || b < frontier + window; });
                if (stopped) return;
            }
            std::vector<BlockTally> tallies = compute_batch(b);
            std::unique_lock<std::mutex> lk(mu);
            if (stopped) return;
            done[b] = std::move(tallies);
            ready[b] = 1;
            while (frontier < n_batches && ready[frontier]) {
                for (const BlockTally& t : done[frontier]) fold_block(tot, t);
                done[frontier].clear();
                done[frontier].shrink_to_fit();
                ++frontier;
                if (stop_on_errors && tot.bit_errors >= cfg.min_bit_errors) {
                    stopped = true;
                    break;
                }
            }
            if (frontier >= n_batches) stopped = true;
            cv_space.notify_all();
            if (stopped) return;
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker_fn);
    for (auto& th : pool) th.join();
    return tot;
}

}  // namespace

BlockTally run_block(long long block_id, int snr_index, const SweepConfig& sweep) {
    EngineCtx ctx = make_ctx(sweep);
    if (snr_index < 0 || snr_index >= static_cast<int>(sweep.snr_grid_db.size()))
        throw std::out_of_range("snr_index out of range");
    return run_block_impl(ctx, snr_index, block_id);
}

std::vector<SweepRecord> run_sweep(const SweepConfig& sweep) {
    EngineCtx ctx = make_ctx(sweep);
    const int points = static_cast<int>(sweep.snr_grid_db.size());
    const long long bits_per_block =
        static_cast<long long>(sweep.block_length) * ctx.eta;

    std::vector<SweepRecord> out;
    out.reserve(points);
    for (int pt = 0; pt < points; ++pt) {
        SweepRecord rec;
        rec.snr_db = sweep.snr_grid_db[pt];
        const double sn2 = ctx.sn2[pt];

        if (sweep.mode != RunMode::MSE) {
            const double se2 = sigma_e2_for(sweep.csi, sweep.pilot, sn2, sweep.sigma_h2);
            rec.abep_bound =
                abep_union_bound(sweep.system, ctx.cons, sn2, se2, sweep.sigma_h2).abep;
        }
        if (sweep.mode == RunMode::ABEP) {
            out.push_back(rec);
            continue;
        }

        switch (sweep.csi) {
            case CsiMode::PERFECT:
                rec.mse_analytic = 0.0;
                break;
            case CsiMode::LS:
                rec.mse_analytic =
                    analytic_mse(Estimator::LS, sweep.pilot, sn2, sweep.sigma_h2);
                break;
            case CsiMode::LMMSE:
                rec.mse_analytic =
                    analytic_mse(Estimator::LMMSE, sweep.pilot, sn2, sweep.sigma_h2);
                break;
        }

        PointTotals tot = run_point(ctx, pt);
        rec.blocks = tot.blocks;
        rec.mse_empirical = tot.mse_sum / static_cast<double>(tot.blocks);

        if (sweep.mode == RunMode::BER) {
            rec.bit_errors = tot.bit_errors;
            rec.bits_simulated = tot.bits;
            rec.ber = static_cast<double>(tot.bit_errors) / static_cast<double>(tot.bits);
            rec.ber_se = tot.bit_errors > 0
                             ? *rec.ber / std::sqrt(static_cast<double>(tot.bit_errors))
                             : 0.0;
            const double n = static_cast<double>(tot.blocks);
            const double mean_e = static_cast<double>(tot.bit_errors) / n;
            const double var_e = std::max(0.0, tot.err_sq_sum / n - mean_e * mean_e);
            rec.ber_se_blocks =
                std::sqrt(var_e / n) / static_cast<double>(bits_per_block);
            if (tot.bit_errors < sweep.min_bit_errors) rec.warning = "insufficient_bit_errors";
        }
        out.push_back(rec);
    }
    return out;
}

std::vector<std::pair<double, double>> run_abep_curve(const SweepConfig& sweep) {
    EngineCtx ctx = make_ctx(sweep);
    std::vector<std::pair<double, double>> out;
    out.reserve(sweep.snr_grid_db.size());
    for (std::size_t pt = 0; pt < sweep.snr_grid_db.size(); ++pt) {
        const double sn2 = ctx.sn2[pt];
        const double se2 = sigma_e2_for(sweep.csi, sweep.pilot, sn2, sweep.sigma_h2);
        out.emplace_back(sweep.snr_grid_db[pt],
                         abep_union_bound(sweep.system, ctx.cons, sn2, se2, sweep.sigma_h2).abep);
    }
    return out;
}

}  // namespace smbm
