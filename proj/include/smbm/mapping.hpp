#pragma once

#include <cstdint>
#include <utility>

#include "smbm/constellation.hpp"

namespace smbm {

struct SystemConfig {
    int n_tx = 4;  // Nt, power of two
    int n_rx = 4;  // Nr
    int n_rf = 2;  // RF mirrors per antenna
    ModulationSpec modulation;

    int states() const { return 1 << n_rf; }            // 2^Nrf mirror patterns
    int n_coords() const { return n_tx * states(); }    // transmit-vector length
    int n_coeffs() const { return n_coords() * n_rx; }  // total channel coefficients
};

// throws std::invalid_argument naming the offending field
void validate(const SystemConfig& cfg);

// eta = log2 M + log2 Nt + Nrf
int spectral_efficiency(const SystemConfig& cfg);

struct SmbmSymbol {
    int symbol_index = 0;   // l, 0-based index into the constellation
    int antenna_index = 1;  // j, 1-based
    int state_index = 1;    // k, 1-based
    int coordinate = 1;     // m = (k-1)*Nt + j, 1-based
};

struct TransmitVector {
    int length = 0;
    int coordinate = 1;  // the single nonzero position, 1-based
    cplx value;          // d
};

struct BitFields {
    std::uint32_t symbol_bits = 0;
    std::uint32_t antenna_bits = 0;
    std::uint32_t mirror_bits = 0;
};

// source word layout, MSB first: [symbol | antenna | mirror]
BitFields split_bits(std::uint64_t q, const SystemConfig& cfg);

std::pair<SmbmSymbol, TransmitVector> map_source(std::uint64_t q, const SystemConfig& cfg,
                                                 const Constellation& c);

std::uint64_t unmap_decision(const SmbmSymbol& sym, const SystemConfig& cfg,
                             const Constellation& c);

}  // namespace smbm
