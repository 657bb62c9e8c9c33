#pragma once

#include <vector>

#include "smbm/estimation.hpp"

namespace smbm {

struct Decision {
    int symbol_index = 0;   // l, 0-based constellation index
    int antenna_index = 1;  // j, 1-based
    int state_index = 1;    // k, 1-based
    double metric = 0.0;    // ||y - d*h_j^k||^2 at the argmin
};

// Exhaustive joint ML over all M*Nt*2^Nrf hypotheses, direct metric.
// Ties broken toward lexicographically smallest (k, j, symbol_index).
Decision detect_reference(const std::vector<cplx>& y, const ChannelEstimate& est,
                          const Constellation& c, const SystemConfig& cfg);

// Same decision and metric as detect_reference, computed via the expanded
// score |d|^2*||h||^2 - 2Re(d*<h,y*>) with near-ties re-evaluated through the
// direct metric, so the result is bit-identical to the reference.
Decision detect_fast(const std::vector<cplx>& y, const ChannelEstimate& est,
                     const Constellation& c, const SystemConfig& cfg);

int count_bit_errors(const SmbmSymbol& truth, const Decision& decision, const SystemConfig& cfg,
                     const Constellation& c);

// Hot-path detector: reuses per-block column statistics across the symbols of
// one fading block. detect() is equivalent to detect_fast on every input.
class BlockDetector {
public:
    BlockDetector(const ChannelEstimate& est, const Constellation& c, const SystemConfig& cfg);
    Decision detect(const std::vector<cplx>& y) const;

private:
    const ChannelEstimate& est_;
    const Constellation& c_;
    const SystemConfig& cfg_;
    std::vector<double> energy_;       // ||h_l||^2 per branch, l = (k-1)*Nt + (j-1)
    mutable std::vector<cplx> corr_;   // <h_l, y*> scratch
};

}  // namespace smbm
