#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace smbm {

using cplx = std::complex<double>;

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline int ilog2(int n) {
    int b = 0;
    while ((1 << b) < n) ++b;
    return b;
}

inline std::uint32_t gray_code(std::uint32_t n) { return n ^ (n >> 1); }

enum class ModKind { PSK, QAM };

struct ModulationSpec {
    ModKind kind = ModKind::PSK;
    int order = 4;               // M, power of two
    double symbol_energy = 1.0;  // E_s
};

struct Constellation {
    ModulationSpec spec;
    int bits_per_symbol = 0;  // log2 M
    std::vector<cplx> points;
    std::vector<std::uint32_t> bit_labels;      // bit_labels[i] labels points[i]
    std::vector<std::uint32_t> label_to_index;  // inverse permutation

    int order() const { return static_cast<int>(points.size()); }
};

// Gray-labeled M-PSK / square M-QAM normalized to mean energy E_s.
Constellation build_constellation(const ModulationSpec& spec);

cplx map_bits_to_symbol(const Constellation& c, std::uint32_t bits);
std::uint32_t symbol_to_bits(const Constellation& c, int point_index);

// "bpsk", "qpsk", "8psk", "16psk", "32psk", "16qam", "64qam"
ModulationSpec modulation_from_name(const std::string& name, double symbol_energy = 1.0);

}  // namespace smbm
