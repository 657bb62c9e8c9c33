#include "smbm/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace smbm {

ChannelRealization draw_channel(const SystemConfig& cfg, double sigma_h2, RngStream& rng) {
    if (sigma_h2 <= 0.0) throw std::invalid_argument("sigma_h2 must be positive");
    ChannelRealization h;
    h.channel_power = sigma_h2;
    h.coeff.resize(cfg.n_coeffs());
    for (auto& v : h.coeff) v = rng.cgauss(sigma_h2);
    return h;
}

std::vector<cplx> column(const ChannelRealization& h, const SystemConfig& cfg, int j, int k) {
    if (j < 1 || j > cfg.n_tx || k < 1 || k > cfg.states())
        throw std::out_of_range("branch index out of range");
    const int stride = cfg.n_coords();
    const int base = (k - 1) * cfg.n_tx + (j - 1);
    std::vector<cplx> col(cfg.n_rx);
    for (int i = 0; i < cfg.n_rx; ++i) col[i] = h.coeff[i * stride + base];
    return col;
}

std::vector<cplx> transmit(const ChannelRealization& h, const SystemConfig& cfg,
                           const SmbmSymbol& sym, cplx d, NoiseSpec noise, RngStream& rng) {
    const int stride = cfg.n_coords();
    const int base = sym.coordinate - 1;
    std::vector<cplx> y(cfg.n_rx);
    for (int i = 0; i < cfg.n_rx; ++i)
        y[i] = d * h.coeff[i * stride + base] + rng.cgauss(noise.variance);
    return y;
}

double noise_variance_for_snr(double snr_db, const SystemConfig& cfg) {
    const int eta = spectral_efficiency(cfg);
    return cfg.modulation.symbol_energy / (eta * std::pow(10.0, snr_db / 10.0));
}

}  // namespace smbm
