#include "smbm/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace smbm {

namespace {

void check_pilot(PilotSpec pilot) {
    if (std::abs(std::norm(pilot.value) - 1.0) > 1e-12)
        throw std::invalid_argument("pilot must have unit energy");
}

}  // namespace

std::vector<cplx> sound_channel(const ChannelRealization& h, PilotSpec pilot, double sigma_n2,
                                RngStream& rng) {
    check_pilot(pilot);
    std::vector<cplx> r(h.coeff.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = pilot.value * h.coeff[i] + rng.cgauss(sigma_n2);
    return r;
}

ChannelEstimate estimate_ls(const std::vector<cplx>& r, PilotSpec pilot, double sigma_n2) {
    check_pilot(pilot);
    ChannelEstimate est;
    est.estimator = Estimator::LS;
    est.error_variance = sigma_n2 / std::norm(pilot.value);
    est.coeff.resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) est.coeff[i] = r[i] / pilot.value;
    return est;
}

ChannelEstimate estimate_lmmse(const std::vector<cplx>& r, PilotSpec pilot, double sigma_n2,
                               double sigma_h2) {
    check_pilot(pilot);
    if (sigma_n2 <= 0.0 || sigma_h2 <= 0.0)
        throw std::invalid_argument("noise and channel power must be positive");
    ChannelEstimate est;
    est.estimator = Estimator::LMMSE;
    est.error_variance = analytic_mse(Estimator::LMMSE, pilot, sigma_n2, sigma_h2);
    const double denom = std::norm(pilot.value) + sigma_n2 / sigma_h2;
    const cplx gain = std::conj(pilot.value) / denom;
    est.coeff.resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) est.coeff[i] = gain * r[i];
    return est;
}

ChannelEstimate perfect_estimate(const ChannelRealization& h) {
    ChannelEstimate est;
    est.estimator = Estimator::PERFECT;
    est.error_variance = 0.0;
    est.coeff = h.coeff;
    return est;
}

double empirical_mse(const ChannelEstimate& est, const ChannelRealization& h) {
    if (est.coeff.size() != h.coeff.size()) throw std::invalid_argument("length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < est.coeff.size(); ++i) acc += std::norm(est.coeff[i] - h.coeff[i]);
    return acc / static_cast<double>(est.coeff.size());
}

double analytic_mse(Estimator estimator, PilotSpec pilot, double sigma_n2, double sigma_h2) {
    check_pilot(pilot);
    const double p2 = std::norm(pilot.value);
    switch (estimator) {
        case Estimator::LS:
            return sigma_n2 / p2;
        case Estimator::LMMSE:
            return sigma_h2 * sigma_n2 / (sigma_h2 * p2 + sigma_n2);
        case Estimator::PERFECT:
            return 0.0;
    }
    throw std::logic_error("unreachable");
}

}  // namespace smbm
