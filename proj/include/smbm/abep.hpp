#pragma once

#include <vector>

#include "smbm/mapping.hpp"

namespace smbm {

struct PepParams {
    double symbol_energy = 1.0;        // E_s
    double channel_power = 1.0;        // sigma_h^2
    double noise_variance = 1.0;       // sigma_n^2 > 0
    double est_error_variance = 0.0;   // sigma_e^2
    cplx s_true;                       // s_l
    cplx s_alt;                        // s_l~
    bool same_channel_index = false;   // l~ == l ?
};

// mean of the exponentially distributed pairwise SNR:
//   [E_s*sigma_h^2*(1+sigma_e^2) / (2*(sigma_n^2 + sigma_e^2*|s_l|^2))]
//   * (|s_l - s_alt|^2 when same branch, else |s_l|^2 + |s_alt|^2)
double gamma_bar(const PepParams& p);

// single receive antenna: (1/2)*(1 - sqrt((g/2)/(1+g/2)))
double pep_sra(double gbar);

// adaptive quadrature of integral Q(sqrt(rho)) * (1/g)*exp(-rho/g) d rho,
// absolute tolerance 1e-10; validation twin of pep_sra
double pep_numeric_oracle(double gbar);

// Nr-fold diversity combining: p1^Nr * sum_{i<Nr} C(Nr-1+i, i)*(1-p1)^i
double pep_mra(double pep1, int n_rx);

struct PairContribution {
    int branch_a, symbol_a;  // transmitted hypothesis (0-based branch, point index)
    int branch_b, symbol_b;  // decided hypothesis
    double pep;
    int e_bits;
};

struct BoundResult {
    double abep = 0.0;
    std::vector<PairContribution> contributions;  // filled on request, audit only
};

// union bound: (1/(eta*2^eta)) * sum over ordered hypothesis pairs of
// PEP_MRA * bit-label Hamming distance
BoundResult abep_union_bound(const SystemConfig& cfg, const Constellation& c, double sigma_n2,
                             double sigma_e2, double sigma_h2 = 1.0, bool keep_pairs = false);

// Hamming distance between the eta-bit words of two hypotheses
int e_bits(const SmbmSymbol& a, const SmbmSymbol& b, const SystemConfig& cfg,
           const Constellation& c);

}  // namespace smbm
