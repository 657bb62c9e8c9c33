#pragma once

#include <vector>

#include "smbm/mapping.hpp"
#include "smbm/rng.hpp"

namespace smbm {

// Flat coefficient vector, receive antenna slowest, then mirror state, then
// transmit antenna: coeff[i*Nt*2^Nrf + (k-1)*Nt + (j-1)] = h_{i+1,j}^k.
// The column for branch (j,k) is therefore strided by Nt*2^Nrf.
struct ChannelRealization {
    std::vector<cplx> coeff;
    double channel_power = 1.0;  // sigma_h^2
};

struct NoiseSpec {
    double variance = 1.0;  // sigma_n^2, total per complex sample
};

ChannelRealization draw_channel(const SystemConfig& cfg, double sigma_h2, RngStream& rng);

// h_j^k = [h_{1,j}^k ... h_{Nr,j}^k], j and k 1-based
std::vector<cplx> column(const ChannelRealization& h, const SystemConfig& cfg, int j, int k);

// y = d * h_j^k + w, w i.i.d. complex Gaussian with total variance sigma_n^2
std::vector<cplx> transmit(const ChannelRealization& h, const SystemConfig& cfg,
                           const SmbmSymbol& sym, cplx d, NoiseSpec noise, RngStream& rng);

// per-bit normalization: sigma_n^2 = E_s / (eta * 10^(snr_db/10))
double noise_variance_for_snr(double snr_db, const SystemConfig& cfg);

}  // namespace smbm
