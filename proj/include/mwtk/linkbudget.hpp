#pragma once

#include <string>
#include <vector>

#include "mwtk/errors.hpp"

namespace mwtk {

// Line-of-sight phased-array link parameters, all linear SI units.
struct LinkBudgetConfig {
    double p_tx_w = 0.0;        // per-element transmit power after back-off
    double g_t = 1.0;           // element gains, linear
    double g_r = 1.0;
    int n_ant = 1;              // elements per array side
    int n_beams = 1;
    int n_pol = 1;
    double b_hz = 0.0;          // channel bandwidth
    double f0_hz = 0.0;         // carrier
    double d_m = 0.0;           // link distance
    double noise_factor = 1.0;  // linear noise factor
    double temperature_k = 290.0;

    void validate() const;
};

// Budget in its literal printed form: transmit power density x effective
// receive area x inverse noise power. The one-way interface loss il enters
// squared overall (once on each side), and the aggregate array scaling is
// N_ant^4 in the numerator against N_ant^1 in the noise term - kept exactly
// as printed, not physically re-derived.
double snr(const LinkBudgetConfig& cfg, double il_linear = 1.0);

struct Capacity {
    double exact_bps = 0.0;   // Nb*Np*B*log2(1 + SNR/Nb)
    double approx_bps = 0.0;  // Nb*Np*B*log2(SNR/Nb), clamped at 0
};

Capacity capacity(const LinkBudgetConfig& cfg, double il_linear = 1.0);

// Closed-form d(capacity)/d(IL_dB) in the high-SNR limit:
// -(2*log2(10)/10) * Nb * Np * B, in bit/s per dB (negative).
double sensitivity(const LinkBudgetConfig& cfg);

struct CapacityPoint {
    double il_db = 0.0;
    double snr_linear = 0.0;
    double c_exact_bps = 0.0;
    double c_approx_bps = 0.0;
};

std::vector<CapacityPoint> capacity_sweep(const LinkBudgetConfig& cfg, double il_start_db,
                                          double il_stop_db, double il_step_db);

// Columns: il_db, snr_db, c_exact_bps, c_approx_bps.
std::string capacity_table_csv(const std::vector<CapacityPoint>& points);

// JSON config with dBm/dB keys: p_tx_dbm, g_t_db, g_r_db, n_ant, n_beams,
// n_pol, b_hz, f0_hz, d_m, noise_figure_db, temperature_k (optional, 290).
LinkBudgetConfig link_config_from_json_text(const std::string& text);

} // namespace mwtk
