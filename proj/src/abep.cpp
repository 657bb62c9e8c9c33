#include "smbm/abep.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <bit>
#include <cmath>
#include <stdexcept>

namespace smbm {

double gamma_bar(const PepParams& p) {
    if (p.noise_variance <= 0.0) throw std::invalid_argument("noise_variance must be positive");
    if (p.symbol_energy < 0.0 || p.channel_power < 0.0 || p.est_error_variance < 0.0)
        throw std::invalid_argument("negative energy or variance");
    const double num = p.symbol_energy * p.channel_power * (1.0 + p.est_error_variance);
    const double den = 2.0 * (p.noise_variance + p.est_error_variance * std::norm(p.s_true));
    const double dist = p.same_channel_index ? std::norm(p.s_true - p.s_alt)
                                             : std::norm(p.s_true) + std::norm(p.s_alt);
    return num / den * dist;
}

double pep_sra(double gbar) {
    if (gbar < 0.0) throw std::invalid_argument("gamma_bar must be nonnegative");
    const double half = gbar / 2.0;
    return 0.5 * (1.0 - std::sqrt(half / (1.0 + half)));
}

namespace {

double q_func(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double oracle_integrand(double rho, void* params) {
    double gbar = *static_cast<double*>(params);
    return q_func(std::sqrt(rho)) * std::exp(-rho / gbar) / gbar;
}

}  // namespace

double pep_numeric_oracle(double gbar) {
    if (gbar <= 0.0) throw std::invalid_argument("gamma_bar must be positive");
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(4096);
    gsl_function f;
    f.function = &oracle_integrand;
    f.params = &gbar;
    double result = 0.0, abserr = 0.0;
    gsl_error_handler_t* old = gsl_set_error_handler_off();
    int status = gsl_integration_qagiu(&f, 0.0, 1e-10, 1e-12, 4096, ws, &result, &abserr);
    gsl_set_error_handler(old);
    gsl_integration_workspace_free(ws);
    if (status != GSL_SUCCESS)
        throw std::runtime_error("pep oracle quadrature did not converge");
    return result;
}

double pep_mra(double pep1, int n_rx) {
    if (pep1 < 0.0 || pep1 > 0.5) throw std::invalid_argument("pep1 must be in [0, 0.5]");
    if (n_rx < 1) throw std::invalid_argument("n_rx must be >= 1");
    double sum = 0.0, coeff = 1.0;
    for (int i = 0; i < n_rx; ++i) {
        if (i > 0) coeff = coeff * (n_rx - 1 + i) / i;  // C(Nr-1+i, i)
        sum += coeff * std::pow(1.0 - pep1, i);
    }
    return std::pow(pep1, n_rx) * sum;
}

int e_bits(const SmbmSymbol& a, const SmbmSymbol& b, const SystemConfig& cfg,
           const Constellation& c) {
    return std::popcount(unmap_decision(a, cfg, c) ^ unmap_decision(b, cfg, c));
}

BoundResult abep_union_bound(const SystemConfig& cfg, const Constellation& c, double sigma_n2,
                             double sigma_e2, double sigma_h2, bool keep_pairs) {
    validate(cfg);
    if (sigma_n2 <= 0.0) throw std::invalid_argument("sigma_n2 must be positive");
    const int m = c.order();
    const int branches = cfg.n_coords();
    const int eta = spectral_efficiency(cfg);
    const double es = c.spec.symbol_energy;

    // PEP depends only on (symbol pair, same-branch flag); cache both cases.
    std::vector<double> pep_same(m * m), pep_diff(m * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            PepParams p;
            p.symbol_energy = es;
            p.channel_power = sigma_h2;
            p.noise_variance = sigma_n2;
            p.est_error_variance = sigma_e2;
            p.s_true = c.points[a];
            p.s_alt = c.points[b];
            p.same_channel_index = true;
            pep_same[a * m + b] = pep_mra(pep_sra(gamma_bar(p)), cfg.n_rx);
            p.same_channel_index = false;
            pep_diff[a * m + b] = pep_mra(pep_sra(gamma_bar(p)), cfg.n_rx);
        }

    // eta-bit word of every hypothesis, indexed by (branch, point)
    std::vector<std::uint64_t> word(branches * m);
    for (int l = 0; l < branches; ++l)
        for (int s = 0; s < m; ++s) {
            SmbmSymbol sym;
            sym.symbol_index = s;
            sym.antenna_index = l % cfg.n_tx + 1;
            sym.state_index = l / cfg.n_tx + 1;
            sym.coordinate = l + 1;
            word[l * m + s] = unmap_decision(sym, cfg, c);
        }

    BoundResult out;
    double total = 0.0;
    for (int la = 0; la < branches; ++la)
        for (int sa = 0; sa < m; ++sa)
            for (int lb = 0; lb < branches; ++lb)
                for (int sb = 0; sb < m; ++sb) {
                    int e = std::popcount(word[la * m + sa] ^ word[lb * m + sb]);
                    if (e == 0) continue;
                    double pep = (la == lb) ? pep_same[sa * m + sb] : pep_diff[sa * m + sb];
                    total += pep * e;
                    if (keep_pairs) out.contributions.push_back({la, sa, lb, sb, pep, e});
                }
    out.abep = total / (static_cast<double>(eta) * std::pow(2.0, eta));
    return out;
}

}  // namespace smbm
