#include "mwtk/transitions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "mwtk/tline.hpp"
#include "mwtk/units.hpp"

namespace mwtk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool cond, const std::string& msg)
{
    if (!cond) throw input_error(msg);
}

// ABCD of a lossless line of impedance z0 at electrical angle theta (rad)
Mat2 line_abcd(double z0, double theta)
{
    const double c = std::cos(theta), s = std::sin(theta);
    return {cplx{c, 0.0}, cplx{0.0, z0 * s}, cplx{0.0, s / z0}, cplx{c, 0.0}};
}

} // namespace

TwoPortNetwork gsg_model(const GsgParams& p, const FrequencyGrid& grid, double z_ref)
{
    require(p.z1 > 0.0 && p.z2 > 0.0, "gsg_model: line impedances must be > 0");
    require(p.tau1 >= 0.0 && p.tau2 >= 0.0, "gsg_model: delays must be >= 0");
    require(z_ref > 0.0, "gsg_model: z_ref must be > 0");
    // The return line carries the same current at both of its ends (it is the
    // only way back for the signal current), which pins its standing-wave
    // pattern independently of the load and makes it act as a floating series
    // element of impedance 2j*z2*tan(pi*f*tau2) in the loop. That impedance
    // has poles exactly at odd multiples of 1/(2*tau2) - the transmission
    // notches - and vanishes as tau2 -> 0, leaving the bare signal line.
    std::vector<Mat2> abcd;
    abcd.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double f = grid[i];
        const cplx z_loop{0.0, 2.0 * p.z2 * std::tan(std::numbers::pi * f * p.tau2)};
        const Mat2 stub{1.0, z_loop, 0.0, 1.0};
        abcd.push_back(stub * line_abcd(p.z1, kTwoPi * f * p.tau1));
    }
    return abcd_to_s(grid, abcd, z_ref);
}

double gsg_notch_freq(double tau2_s)
{
    require(tau2_s > 0.0, "gsg_notch_freq: tau2 must be > 0");
    return 1.0 / (2.0 * tau2_s);
}

std::vector<double> gsg_notch_harmonics(double tau2_s, int count)
{
    require(count >= 1, "gsg_notch_harmonics: count must be >= 1");
    const double f1 = gsg_notch_freq(tau2_s);
    std::vector<double> out(static_cast<std::size_t>(count));
    // The loop impedance blocks at odd multiples only; even multiples of the
    // base frequency are transparent (the return line is then a full wave).
    for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = f1 * (2 * k + 1);
    return out;
}

double loop_radiation_freq(double tau1_s, double tau2_s)
{
    require(tau1_s >= 0.0 && tau2_s >= 0.0 && tau1_s + tau2_s > 0.0,
            "loop_radiation_freq: delays must be >= 0 with a positive sum");
    return 1.0 / (2.0 * (tau1_s + tau2_s));
}

double pitch_notch_estimate(const GsgGeometry& g)
{
    require(g.h > 0.0 && g.pitch > 0.0, "pitch_notch_estimate: geometry must be > 0");
    require(g.eps_r >= 1.0, "pitch_notch_estimate: eps_r must be >= 1");
    return kChartLightSpeed / std::sqrt(g.eps_r) / (2.0 * (g.h + g.pitch));
}

double siw_effective_width(const SiwGeometry& g)
{
    require(g.W > 0.0 && g.P > 0.0 && g.D >= 0.0, "siw_effective_width: geometry must be > 0");
    require(g.D < g.P, "siw_effective_width: vias overlap (D must be < P)");
    const double w_eff = g.W - g.D * g.D / (0.95 * g.P);
    require(w_eff > 0.0, "siw_effective_width: non-physical geometry (W_eff <= 0)");
    return w_eff;
}

double siw_te10_cutoff(double w_eff_m, double eps_r)
{
    require(w_eff_m > 0.0, "siw_te10_cutoff: width must be > 0");
    require(eps_r >= 1.0, "siw_te10_cutoff: eps_r must be >= 1");
    return kSpeedOfLight / (2.0 * w_eff_m * std::sqrt(eps_r));
}

TwoPortNetwork shunt_capacitor(double c_farad, const FrequencyGrid& grid, double z_ref)
{
    require(c_farad >= 0.0, "shunt_capacitor: capacitance must be >= 0");
    std::vector<Mat2> abcd;
    abcd.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        abcd.push_back({1.0, 0.0, cplx{0.0, kTwoPi * grid[i] * c_farad}, 1.0});
    return abcd_to_s(grid, abcd, z_ref);
}

TwoPortNetwork stripline_transition_model(const StriplineTransitionParams& p,
                                          const FrequencyGrid& grid, double z_ref)
{
    require(p.c_pad >= 0.0, "stripline model: pad capacitance must be >= 0");
    require(p.z_via > 0.0, "stripline model: via impedance must be > 0");
    require(p.tau_via >= 0.0, "stripline model: via delay must be >= 0");
    const TwoPortNetwork pad = shunt_capacitor(p.c_pad, grid, z_ref);
    const TwoPortNetwork via = renormalize(ideal_line(p.z_via, p.tau_via, grid), z_ref, z_ref);
    return cascade(cascade(pad, via), pad);
}

TwoPortNetwork apply_series_match(const TwoPortNetwork& net, const SeriesLineMatch& match,
                                  int port)
{
    require(port == 1 || port == 2, "apply_series_match: port must be 1 or 2");
    require(match.z0 > 0.0, "apply_series_match: z0 must be > 0");
    require(match.theta_deg >= 0.0, "apply_series_match: theta must be >= 0");
    require(match.f0_hz > 0.0, "apply_series_match: f0 must be > 0");
    const double z_port = port == 1 ? net.z_ref1() : net.z_ref2();
    const FrequencyGrid& grid = net.grid();
    std::vector<Mat2> abcd;
    abcd.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double theta = rad_from_deg(match.theta_deg) * grid[i] / match.f0_hz;
        abcd.push_back(line_abcd(match.z0, theta));
    }
    const TwoPortNetwork line = abcd_to_s(grid, abcd, z_port);
    return port == 1 ? cascade(line, net) : cascade(net, line);
}

MatchDesign design_series_match(const TwoPortNetwork& net, double f0_hz,
                                const MatchSearchRange& range)
{
    require(range.z0_min > 0.0 && range.z0_max >= range.z0_min && range.z0_step > 0.0 &&
                range.theta_min >= 0.0 && range.theta_max >= range.theta_min &&
                range.theta_step > 0.0,
            "design_series_match: bad search range");
    const Mat2 s0 = net.s_interp(f0_hz);
    const double zp = net.z_ref1();

    const auto n_z = static_cast<std::size_t>(
        std::floor((range.z0_max - range.z0_min) / range.z0_step + 0.5)) + 1;
    const auto n_th = static_cast<std::size_t>(
        std::floor((range.theta_max - range.theta_min) / range.theta_step + 0.5)) + 1;

    MatchDesign best;
    best.unmatched_s11_mag = std::abs(s0.m11);
    double best_mag = -1.0, best_theta = 0.0, best_z0 = 0.0;

    for (std::size_t iz = 0; iz < n_z; ++iz) {
        const double z0 = std::min(range.z0_min + static_cast<double>(iz) * range.z0_step,
                                   range.z0_max);
        for (std::size_t it = 0; it < n_th; ++it) {
            const double theta_deg =
                std::min(range.theta_min + static_cast<double>(it) * range.theta_step,
                         range.theta_max);
            const Mat2 a = line_abcd(z0, rad_from_deg(theta_deg));
            // line S in the port reference, then one cascade step for S11
            const cplx bz = a.m12 / zp, cz = a.m21 * zp;
            const cplx den = a.m11 + bz + cz + a.m22;
            const cplx l11 = (a.m11 + bz - cz - a.m22) / den;
            const cplx l12 = 2.0 * a.det() / den;
            const cplx l21 = 2.0 / den;
            const cplx l22 = (-a.m11 + bz - cz + a.m22) / den;
            const cplx loop = 1.0 - l22 * s0.m11;
            if (std::abs(loop) < 1e-12) continue;
            const double mag = std::abs(l11 + l12 * l21 * s0.m11 / loop);
            if (best_mag < 0.0 || mag < best_mag ||
                (mag == best_mag &&
                 (theta_deg < best_theta || (theta_deg == best_theta && z0 < best_z0)))) {
                best_mag = mag;
                best_theta = theta_deg;
                best_z0 = z0;
            }
        }
    }
    require(best_mag >= 0.0, "design_series_match: empty search range");
    best.match = SeriesLineMatch{best_z0, best_theta, f0_hz};
    best.matched_s11_mag = best_mag;
    return best;
}

namespace {

using nlohmann::json;

json parse_object(const std::string& text, const char* what)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(std::string(what) + ": invalid json: " + e.what());
    }
    if (!j.is_object()) throw input_error(std::string(what) + ": expected a json object");
    return j;
}

std::vector<double> take_fields(const json& j, const std::vector<std::string>& keys,
                                const char* what)
{
    std::vector<std::string> missing, unknown, bad;
    for (const auto& k : keys)
        if (!j.contains(k)) missing.push_back(k);
    for (const auto& [k, v] : j.items()) {
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) unknown.push_back(k);
        else if (!v.is_number()) bad.push_back(k);
    }
    std::string msg;
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& e : v) s += (s.empty() ? "" : ", ") + e;
        return s;
    };
    if (!missing.empty()) msg += "missing keys: " + join(missing);
    if (!unknown.empty()) msg += (msg.empty() ? "" : "; ") + ("unknown keys: " + join(unknown));
    if (!bad.empty()) msg += (msg.empty() ? "" : "; ") + ("non-numeric keys: " + join(bad));
    if (!msg.empty()) throw input_error(std::string(what) + ": " + msg);
    std::vector<double> out;
    out.reserve(keys.size());
    for (const auto& k : keys) out.push_back(j.at(k).get<double>());
    return out;
}

} // namespace

GsgParams gsg_params_from_json_text(const std::string& text)
{
    const json j = parse_object(text, "gsg params");
    const auto v = take_fields(j, {"z1", "tau1", "z2", "tau2"}, "gsg params");
    GsgParams p{v[0], v[1], v[2], v[3]};
    require(p.z1 > 0.0 && p.z2 > 0.0, "gsg params: z1 and z2 must be > 0");
    require(p.tau1 >= 0.0 && p.tau2 >= 0.0, "gsg params: tau1 and tau2 must be >= 0");
    return p;
}

SiwGeometry siw_geometry_from_json_text(const std::string& text)
{
    const json j = parse_object(text, "siw geometry");
    const auto v = take_fields(j, {"W", "D", "P", "eps_r"}, "siw geometry");
    SiwGeometry g{v[0], v[1], v[2], v[3]};
    require(g.W > 0.0 && g.P > 0.0 && g.D >= 0.0 && g.eps_r >= 1.0,
            "siw geometry: need W > 0, P > 0, D >= 0, eps_r >= 1");
    return g;
}

StriplineTransitionParams stripline_params_from_json_text(const std::string& text)
{
    const json j = parse_object(text, "stripline params");
    const auto v = take_fields(j, {"c_pad", "z_via", "tau_via"}, "stripline params");
    StriplineTransitionParams p{v[0], v[1], v[2]};
    require(p.c_pad >= 0.0, "stripline params: c_pad must be >= 0");
    require(p.z_via > 0.0, "stripline params: z_via must be > 0");
    require(p.tau_via >= 0.0, "stripline params: tau_via must be >= 0");
    return p;
}

} // namespace mwtk
