#include "mwtk/linkbudget.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <json.hpp>

#include "mwtk/units.hpp"

namespace mwtk {

namespace {

void require(bool cond, const std::string& msg)
{
    if (!cond) throw input_error(msg);
}

std::string fmt_num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

void LinkBudgetConfig::validate() const
{
    require(p_tx_w > 0.0, "link config: p_tx must be > 0");
    require(g_t > 0.0 && g_r > 0.0, "link config: antenna gains must be > 0");
    require(n_ant >= 1 && n_beams >= 1 && n_pol >= 1, "link config: counts must be >= 1");
    require(b_hz > 0.0 && f0_hz > 0.0, "link config: bandwidth and carrier must be > 0");
    require(d_m > 0.0, "link config: distance must be > 0");
    require(noise_factor >= 1.0, "link config: noise factor must be >= 1");
    require(temperature_k > 0.0, "link config: temperature must be > 0");
}

double snr(const LinkBudgetConfig& cfg, double il_linear)
{
    cfg.validate();
    require(il_linear >= 1.0, "snr: il must be a loss (linear value >= 1)");
    const double na = static_cast<double>(cfg.n_ant);
    const double four_pi = 4.0 * std::numbers::pi;
    const double tx_density = cfg.p_tx_w * cfg.g_t * na * na /
                              (four_pi * cfg.d_m * cfg.d_m * il_linear);
    const double rx_area = kSpeedOfLight * kSpeedOfLight * cfg.g_r * na * na /
                           (four_pi * cfg.f0_hz * cfg.f0_hz * il_linear);
    const double noise = kBoltzmann * cfg.temperature_k * cfg.b_hz * cfg.noise_factor * na;
    return tx_density * rx_area / noise;
}

Capacity capacity(const LinkBudgetConfig& cfg, double il_linear)
{
    const double per_beam = snr(cfg, il_linear) / static_cast<double>(cfg.n_beams);
    const double scale = static_cast<double>(cfg.n_beams) * static_cast<double>(cfg.n_pol) *
                         cfg.b_hz;
    Capacity c;
    c.exact_bps = scale * std::log2(1.0 + per_beam);
    c.approx_bps = per_beam > 1.0 ? scale * std::log2(per_beam) : 0.0;
    return c;
}

double sensitivity(const LinkBudgetConfig& cfg)
{
    cfg.validate();
    return -(2.0 * std::log2(10.0) / 10.0) * static_cast<double>(cfg.n_beams) *
           static_cast<double>(cfg.n_pol) * cfg.b_hz;
}

std::vector<CapacityPoint> capacity_sweep(const LinkBudgetConfig& cfg, double il_start_db,
                                          double il_stop_db, double il_step_db)
{
    cfg.validate();
    require(il_start_db >= 0.0, "capacity_sweep: il start must be >= 0 dB");
    require(il_stop_db >= il_start_db, "capacity_sweep: il range must ascend");
    require(il_step_db > 0.0, "capacity_sweep: il step must be > 0");
    std::vector<CapacityPoint> out;
    const double span = il_stop_db - il_start_db;
    const auto count = static_cast<std::size_t>(std::floor(span / il_step_db + 1e-9)) + 1;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double il_db = std::min(il_start_db + static_cast<double>(k) * il_step_db,
                                      il_stop_db);
        const double il = power_from_db(il_db);
        const Capacity c = capacity(cfg, il);
        out.push_back({il_db, snr(cfg, il), c.exact_bps, c.approx_bps});
    }
    return out;
}

std::string capacity_table_csv(const std::vector<CapacityPoint>& points)
{
    std::string out = "il_db,snr_db,c_exact_bps,c_approx_bps\n";
    for (const CapacityPoint& p : points)
        out += fmt_num(p.il_db) + "," + fmt_num(db_from_power(p.snr_linear)) + "," +
               fmt_num(p.c_exact_bps) + "," + fmt_num(p.c_approx_bps) + "\n";
    return out;
}

LinkBudgetConfig link_config_from_json_text(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("link config: invalid json: ") + e.what());
    }
    require(j.is_object(), "link config: expected a json object");

    const std::vector<std::string> needed = {"p_tx_dbm", "g_t_db",  "g_r_db", "n_ant",
                                             "n_beams",  "n_pol",   "b_hz",   "f0_hz",
                                             "d_m",      "noise_figure_db"};
    std::vector<std::string> missing;
    for (const auto& k : needed)
        if (!j.contains(k)) missing.push_back(k);
    if (!missing.empty()) {
        std::string msg = "link config: missing keys:";
        for (const auto& k : missing) msg += " " + k;
        throw input_error(msg);
    }
    for (const auto& [k, v] : j.items()) {
        if (std::find(needed.begin(), needed.end(), k) == needed.end() &&
            k != "temperature_k")
            throw input_error("link config: unknown key: " + k);
        if (!v.is_number()) throw input_error("link config: non-numeric key: " + k);
    }
    auto integer_field = [&](const char* k) {
        const double v = j.at(k).get<double>();
        require(v >= 1.0 && v == std::floor(v), std::string("link config: ") + k +
                                                    " must be an integer >= 1");
        return static_cast<int>(v);
    };

    LinkBudgetConfig cfg;
    cfg.p_tx_w = power_from_db(j.at("p_tx_dbm").get<double>()) * 1e-3;
    cfg.g_t = power_from_db(j.at("g_t_db").get<double>());
    cfg.g_r = power_from_db(j.at("g_r_db").get<double>());
    cfg.n_ant = integer_field("n_ant");
    cfg.n_beams = integer_field("n_beams");
    cfg.n_pol = integer_field("n_pol");
    cfg.b_hz = j.at("b_hz").get<double>();
    cfg.f0_hz = j.at("f0_hz").get<double>();
    cfg.d_m = j.at("d_m").get<double>();
    cfg.noise_factor = power_from_db(j.at("noise_figure_db").get<double>());
    cfg.temperature_k = j.value("temperature_k", 290.0);
    cfg.validate();
    return cfg;
}

} // namespace mwtk
