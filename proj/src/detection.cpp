#include "smbm/detection.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace smbm {

namespace {

// Direct metric ||y - d*h_l||^2. Both detectors funnel through this exact
// sequence of operations so their returned metrics agree bit for bit.
double hyp_metric(const std::vector<cplx>& y, const std::vector<cplx>& coeff, int stride,
                  int base, cplx d) {
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        acc += std::norm(y[i] - d * coeff[i * stride + base]);
    return acc;
}

void check_inputs(const std::vector<cplx>& y, const ChannelEstimate& est,
                  const SystemConfig& cfg) {
    if (static_cast<int>(y.size()) != cfg.n_rx) throw std::invalid_argument("y length != n_rx");
    if (static_cast<int>(est.coeff.size()) != cfg.n_coeffs())
        throw std::invalid_argument("estimate length != coefficient count");
}

Decision make_decision(int branch, int sym, double metric, const SystemConfig& cfg) {
    Decision dec;
    dec.symbol_index = sym;
    dec.antenna_index = branch % cfg.n_tx + 1;
    dec.state_index = branch / cfg.n_tx + 1;
    dec.metric = metric;
    return dec;
}

}  // namespace

Decision detect_reference(const std::vector<cplx>& y, const ChannelEstimate& est,
                          const Constellation& c, const SystemConfig& cfg) {
    check_inputs(y, est, cfg);
    const int stride = cfg.n_coords();
    double best = std::numeric_limits<double>::infinity();
    int best_branch = 0, best_sym = 0;
    // branch index l = (k-1)*Nt + (j-1) ascends in (k, j) lexicographic
    // order; strict < keeps the first minimum, fixing the tie-break.
    for (int l = 0; l < stride; ++l)
        for (int s = 0; s < c.order(); ++s) {
            double m = hyp_metric(y, est.coeff, stride, l, c.points[s]);
            if (m < best) {
                best = m;
                best_branch = l;
                best_sym = s;
            }
        }
    return make_decision(best_branch, best_sym, best, cfg);
}

BlockDetector::BlockDetector(const ChannelEstimate& est, const Constellation& c,
                             const SystemConfig& cfg)
    : est_(est), c_(c), cfg_(cfg) {
    if (static_cast<int>(est.coeff.size()) != cfg.n_coeffs())
        throw std::invalid_argument("estimate length != coefficient count");
    const int stride = cfg.n_coords();
    energy_.resize(stride);
    corr_.resize(stride);
    for (int l = 0; l < stride; ++l) {
        double e = 0.0;
        for (int i = 0; i < cfg.n_rx; ++i) e += std::norm(est.coeff[i * stride + l]);
        energy_[l] = e;
    }
}

Decision BlockDetector::detect(const std::vector<cplx>& y) const {
    if (static_cast<int>(y.size()) != cfg_.n_rx) throw std::invalid_argument("y length != n_rx");
    const int stride = cfg_.n_coords();
    const int m = c_.order();

    double ynorm = 0.0;
    for (const auto& v : y) ynorm += std::norm(v);
    for (int l = 0; l < stride; ++l) {
        cplx z = 0.0;
        for (int i = 0; i < cfg_.n_rx; ++i) z += est_.coeff[i * stride + l] * std::conj(y[i]);
        corr_[l] = z;
    }

    // pass 1: expanded score |d|^2*E_l - 2Re(d*z_l) ranks hypotheses
    double best_score = std::numeric_limits<double>::infinity();
    double max_e = 0.0, max_d2 = 0.0;
    for (int l = 0; l < stride; ++l)
        if (energy_[l] > max_e) max_e = energy_[l];
    for (int s = 0; s < m; ++s)
        if (std::norm(c_.points[s]) > max_d2) max_d2 = std::norm(c_.points[s]);
    for (int l = 0; l < stride; ++l) {
        const double e = energy_[l];
        const cplx z = corr_[l];
        for (int s = 0; s < m; ++s) {
            const cplx d = c_.points[s];
            double score = std::norm(d) * e - 2.0 * (d.real() * z.real() - d.imag() * z.imag());
            if (score < best_score) best_score = score;
        }
    }

    // pass 2: re-evaluate near-champions with the direct metric. The margin
    // dwarfs the floating-point gap between the two formulations, so the set
    // below always contains the reference argmin and all of its exact ties.
    const double margin = 1e-9 * (ynorm + max_d2 * max_e + 1.0);
    double best_metric = std::numeric_limits<double>::infinity();
    int best_branch = 0, best_sym = 0;
    for (int l = 0; l < stride; ++l) {
        const double e = energy_[l];
        const cplx z = corr_[l];
        for (int s = 0; s < m; ++s) {
            const cplx d = c_.points[s];
            double score = std::norm(d) * e - 2.0 * (d.real() * z.real() - d.imag() * z.imag());
            if (score > best_score + margin) continue;
            double direct = hyp_metric(y, est_.coeff, stride, l, d);
            if (direct < best_metric) {
                best_metric = direct;
                best_branch = l;
                best_sym = s;
            }
        }
    }
    return make_decision(best_branch, best_sym, best_metric, cfg_);
}

Decision detect_fast(const std::vector<cplx>& y, const ChannelEstimate& est,
                     const Constellation& c, const SystemConfig& cfg) {
    check_inputs(y, est, cfg);
    return BlockDetector(est, c, cfg).detect(y);
}

int count_bit_errors(const SmbmSymbol& truth, const Decision& decision, const SystemConfig& cfg,
                     const Constellation& c) {
    SmbmSymbol dec;
    dec.symbol_index = decision.symbol_index;
    dec.antenna_index = decision.antenna_index;
    dec.state_index = decision.state_index;
    dec.coordinate = (decision.state_index - 1) * cfg.n_tx + decision.antenna_index;
    std::uint64_t a = unmap_decision(truth, cfg, c);
    std::uint64_t b = unmap_decision(dec, cfg, c);
    return std::popcount(a ^ b);
}

}  // namespace smbm
