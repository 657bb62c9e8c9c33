#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "smbm/channel.hpp"

using namespace smbm;

namespace {

SystemConfig make_cfg(int m, int nt, int nrf, int nr) {
    SystemConfig cfg;
    cfg.n_tx = nt;
    cfg.n_rx = nr;
    cfg.n_rf = nrf;
    cfg.modulation = {ModKind::PSK, m, 1.0};
    return cfg;
}

}  // namespace

TEST_CASE("coefficient count and column views") {
    auto cfg = make_cfg(4, 4, 2, 4);
    RngStream rng(1, 0, 0);
    auto h = draw_channel(cfg, 1.0, rng);
    REQUIRE(static_cast<int>(h.coeff.size()) == 64);

    const int stride = cfg.n_coords();
    for (int k = 1; k <= cfg.states(); ++k)
        for (int j = 1; j <= cfg.n_tx; ++j) {
            auto col = column(h, cfg, j, k);
            REQUIRE(static_cast<int>(col.size()) == cfg.n_rx);
            for (int i = 0; i < cfg.n_rx; ++i)
                CHECK(col[i] == h.coeff[i * stride + (k - 1) * cfg.n_tx + (j - 1)]);
        }

    CHECK_THROWS_AS(column(h, cfg, 0, 1), std::out_of_range);
    CHECK_THROWS_AS(column(h, cfg, 5, 1), std::out_of_range);
    CHECK_THROWS_AS(column(h, cfg, 1, 5), std::out_of_range);
}

TEST_CASE("transmit equals dense matrix-vector oracle, draw for draw") {
    auto cfg = make_cfg(4, 2, 2, 3);
    const cplx d(0.6, -0.8);
    SmbmSymbol sym;
    sym.antenna_index = 2;
    sym.state_index = 3;
    sym.coordinate = (sym.state_index - 1) * cfg.n_tx + sym.antenna_index;  // 6

    RngStream rng(7, 3, 11);
    auto h = draw_channel(cfg, 1.0, rng);
    auto y = transmit(h, cfg, sym, d, {0.5}, rng);

    // replay the identical stream by hand: coefficients first, then one noise
    // draw per receive antenna, dense G*x + w with x = d * e_m
    RngStream replay(7, 3, 11);
    const int stride = cfg.n_coords();
    std::vector<cplx> coeff(cfg.n_coeffs());
    for (auto& v : coeff) v = replay.cgauss(1.0);
    for (std::size_t i = 0; i < coeff.size(); ++i) CHECK(coeff[i] == h.coeff[i]);

    for (int i = 0; i < cfg.n_rx; ++i) {
        cplx acc = 0.0;
        for (int mcol = 0; mcol < stride; ++mcol) {
            cplx x = (mcol == sym.coordinate - 1) ? d : cplx(0.0);
            acc += coeff[i * stride + mcol] * x;
        }
        acc += replay.cgauss(0.5);
        CHECK(y[i] == acc);
    }
}

TEST_CASE("noiseless transmit is the scaled branch column") {
    auto cfg = make_cfg(4, 4, 1, 2);
    RngStream rng(3, 0, 5);
    auto h = draw_channel(cfg, 1.0, rng);
    SmbmSymbol sym;
    sym.antenna_index = 3;
    sym.state_index = 2;
    sym.coordinate = (sym.state_index - 1) * cfg.n_tx + sym.antenna_index;
    const cplx d(1.0, 1.0);
    auto y = transmit(h, cfg, sym, d, {0.0}, rng);
    auto col = column(h, cfg, 3, 2);
    for (int i = 0; i < cfg.n_rx; ++i) CHECK(y[i] == d * col[i]);
}

TEST_CASE("coefficients are unit-variance circular gaussian") {
    auto cfg = make_cfg(4, 4, 2, 4);
    double re2 = 0.0, im2 = 0.0, cross = 0.0;
    long long n = 0;
    for (int trial = 0; trial < 20000; ++trial) {
        RngStream rng(99, 0, trial);
        auto h = draw_channel(cfg, 1.0, rng);
        for (const auto& v : h.coeff) {
            re2 += v.real() * v.real();
            im2 += v.imag() * v.imag();
            cross += v.real() * v.imag();
            ++n;
        }
    }
    CHECK(re2 / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(im2 / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(std::abs(cross / n) < 0.005);

    // channel_power scales the total variance
    double p2 = 0.0;
    long long n2 = 0;
    for (int trial = 0; trial < 20000; ++trial) {
        RngStream rng(100, 0, trial);
        auto h = draw_channel(cfg, 2.5, rng);
        for (const auto& v : h.coeff) {
            p2 += std::norm(v);
            ++n2;
        }
    }
    CHECK(p2 / n2 == doctest::Approx(2.5).epsilon(0.01));
}

TEST_CASE("per-bit snr normalization") {
    auto cfg = make_cfg(4, 4, 2, 4);  // eta = 6
    CHECK(noise_variance_for_snr(0.0, cfg) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(noise_variance_for_snr(10.0, cfg) == doctest::Approx(1.0 / 60.0).epsilon(1e-12));

    auto tiny = make_cfg(2, 1, 0, 1);  // eta = 1
    CHECK(noise_variance_for_snr(0.0, tiny) == doctest::Approx(1.0).epsilon(1e-12));

    auto scaled = make_cfg(4, 4, 2, 4);
    scaled.modulation.symbol_energy = 3.0;
    CHECK(noise_variance_for_snr(0.0, scaled) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("invalid channel power is rejected") {
    auto cfg = make_cfg(4, 2, 1, 2);
    RngStream rng(1, 0, 0);
    CHECK_THROWS_AS(draw_channel(cfg, 0.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(draw_channel(cfg, -1.0, rng), std::invalid_argument);
}
