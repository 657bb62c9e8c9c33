#include "smbm/constellation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smbm {

namespace {

void check_order(const ModulationSpec& spec) {
    if (spec.order < 2 || !is_pow2(spec.order))
        throw std::invalid_argument("modulation order must be a power of two >= 2");
    if (spec.symbol_energy <= 0.0)
        throw std::invalid_argument("symbol_energy must be positive");
    if (spec.kind == ModKind::QAM) {
        int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(spec.order))));
        if (side * side != spec.order)
            throw std::invalid_argument("QAM order must be a perfect square (4, 16, 64)");
    }
}

}  // namespace

Constellation build_constellation(const ModulationSpec& spec) {
    check_order(spec);
    const int m = spec.order;
    Constellation c;
    c.spec = spec;
    c.bits_per_symbol = ilog2(m);
    c.points.resize(m);
    c.bit_labels.resize(m);

    if (spec.kind == ModKind::PSK) {
        // QPSK is rotated to the (+-1 +-i)/sqrt(2) diamond so it coincides
        // with 4-QAM; other orders start at angle 0.
        const double offset = (m == 4) ? std::numbers::pi / 4.0 : 0.0;
        const double amp = std::sqrt(spec.symbol_energy);
        for (int n = 0; n < m; ++n) {
            double ang = 2.0 * std::numbers::pi * n / m + offset;
            c.points[n] = amp * cplx(std::cos(ang), std::sin(ang));
            c.bit_labels[n] = gray_code(static_cast<std::uint32_t>(n));
        }
    } else {
        // square grid with per-axis Gray labels; levels 2t-(side-1)
        const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
        const int half_bits = ilog2(side);
        double raw_energy = 0.0;
        for (int a = 0; a < side; ++a)
            for (int b = 0; b < side; ++b) {
                int idx = a * side + b;
                c.points[idx] = cplx(2 * a - (side - 1), 2 * b - (side - 1));
                c.bit_labels[idx] =
                    (gray_code(static_cast<std::uint32_t>(a)) << half_bits) |
                    gray_code(static_cast<std::uint32_t>(b));
                raw_energy += std::norm(c.points[idx]);
            }
        double scale = std::sqrt(spec.symbol_energy / (raw_energy / m));
        for (auto& p : c.points) p *= scale;
    }

    c.label_to_index.assign(m, 0);
    for (int i = 0; i < m; ++i) c.label_to_index[c.bit_labels[i]] = static_cast<std::uint32_t>(i);
    return c;
}

cplx map_bits_to_symbol(const Constellation& c, std::uint32_t bits) {
    if (bits >= c.points.size()) throw std::invalid_argument("bit word out of range for order");
    return c.points[c.label_to_index[bits]];
}

std::uint32_t symbol_to_bits(const Constellation& c, int point_index) {
    if (point_index < 0 || point_index >= c.order())
        throw std::out_of_range("point index out of range");
    return c.bit_labels[point_index];
}

ModulationSpec modulation_from_name(const std::string& name, double symbol_energy) {
    ModulationSpec spec;
    spec.symbol_energy = symbol_energy;
    if (name == "bpsk") {
        spec.kind = ModKind::PSK;
        spec.order = 2;
    } else if (name == "qpsk") {
        spec.kind = ModKind::PSK;
        spec.order = 4;
    } else if (name == "8psk") {
        spec.kind = ModKind::PSK;
        spec.order = 8;
    } else if (name == "16psk") {
        spec.kind = ModKind::PSK;
        spec.order = 16;
    } else if (name == "32psk") {
        spec.kind = ModKind::PSK;
        spec.order = 32;
    } else if (name == "16qam") {
        spec.kind = ModKind::QAM;
        spec.order = 16;
    } else if (name == "64qam") {
        spec.kind = ModKind::QAM;
        spec.order = 64;
    } else {
        throw std::invalid_argument("unknown modulation: " + name);
    }
    return spec;
}

}  // namespace smbm
