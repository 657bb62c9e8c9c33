#include "smbm/mapping.hpp"

#include <stdexcept>

namespace smbm {

void validate(const SystemConfig& cfg) {
    if (!is_pow2(cfg.n_tx)) throw std::invalid_argument("n_tx must be a power of two");
    if (cfg.n_rx < 1) throw std::invalid_argument("n_rx must be >= 1");
    if (cfg.n_rf < 0 || cfg.n_rf > 24) throw std::invalid_argument("n_rf must be in [0, 24]");
    if (!is_pow2(cfg.modulation.order) || cfg.modulation.order < 2)
        throw std::invalid_argument("modulation order must be a power of two >= 2");
}

int spectral_efficiency(const SystemConfig& cfg) {
    validate(cfg);
    return ilog2(cfg.modulation.order) + ilog2(cfg.n_tx) + cfg.n_rf;
}

BitFields split_bits(std::uint64_t q, const SystemConfig& cfg) {
    const int sym_bits = ilog2(cfg.modulation.order);
    const int ant_bits = ilog2(cfg.n_tx);
    const int eta = sym_bits + ant_bits + cfg.n_rf;
    if (eta < 64 && (q >> eta) != 0) throw std::invalid_argument("source word wider than eta");
    BitFields f;
    f.mirror_bits = static_cast<std::uint32_t>(q & ((1ull << cfg.n_rf) - 1));
    f.antenna_bits = static_cast<std::uint32_t>((q >> cfg.n_rf) & ((1ull << ant_bits) - 1));
    f.symbol_bits = static_cast<std::uint32_t>(q >> (cfg.n_rf + ant_bits));
    return f;
}

std::pair<SmbmSymbol, TransmitVector> map_source(std::uint64_t q, const SystemConfig& cfg,
                                                 const Constellation& c) {
    BitFields f = split_bits(q, cfg);
    SmbmSymbol sym;
    sym.symbol_index = static_cast<int>(c.label_to_index[f.symbol_bits]);
    sym.antenna_index = static_cast<int>(f.antenna_bits) + 1;
    sym.state_index = static_cast<int>(f.mirror_bits) + 1;
    sym.coordinate = (sym.state_index - 1) * cfg.n_tx + sym.antenna_index;

    TransmitVector x;
    x.length = cfg.n_coords();
    x.coordinate = sym.coordinate;
    x.value = c.points[sym.symbol_index];
    return {sym, x};
}

std::uint64_t unmap_decision(const SmbmSymbol& sym, const SystemConfig& cfg,
                             const Constellation& c) {
    const int ant_bits = ilog2(cfg.n_tx);
    std::uint64_t word = c.bit_labels[sym.symbol_index];
    word = (word << ant_bits) | static_cast<std::uint64_t>(sym.antenna_index - 1);
    word = (word << cfg.n_rf) | static_cast<std::uint64_t>(sym.state_index - 1);
    return word;
}

}  // namespace smbm
