#pragma once

#include <vector>

#include "smbm/channel.hpp"

namespace smbm {

struct PilotSpec {
    cplx value = 1.0;  // |p|^2 = 1
};

enum class Estimator { LS, LMMSE, PERFECT };

struct ChannelEstimate {
    std::vector<cplx> coeff;  // same layout as ChannelRealization
    Estimator estimator = Estimator::PERFECT;
    double error_variance = 0.0;  // sigma_e^2, analytic MSE at the operating noise level
};

// r_i = p*h_i + n_i, one reference-signal use per (antenna, state) pair,
// all Nr receive antennas observed simultaneously
std::vector<cplx> sound_channel(const ChannelRealization& h, PilotSpec pilot, double sigma_n2,
                                RngStream& rng);

// h_i = r_i / p
ChannelEstimate estimate_ls(const std::vector<cplx>& r, PilotSpec pilot, double sigma_n2);

// h_i = conj(p)*r_i / (|p|^2 + sigma_n^2/sigma_h^2)
ChannelEstimate estimate_lmmse(const std::vector<cplx>& r, PilotSpec pilot, double sigma_n2,
                               double sigma_h2);

ChannelEstimate perfect_estimate(const ChannelRealization& h);

// mean |h_hat_i - h_i|^2 over all coefficients of one realization
double empirical_mse(const ChannelEstimate& est, const ChannelRealization& h);

// LS: sigma_n^2/|p|^2;  LMMSE: sigma_h^2*sigma_n^2/(sigma_h^2*|p|^2 + sigma_n^2);  PERFECT: 0
double analytic_mse(Estimator estimator, PilotSpec pilot, double sigma_n2, double sigma_h2);

}  // namespace smbm
