#pragma once

#include <string>

#include "mwtk/netcore.hpp"

namespace mwtk {

// Round speed of light used by the closed-form pitch estimate, which quotes
// design-chart numbers derived with 3e8 m/s. Everything else uses kSpeedOfLight.
inline constexpr double kChartLightSpeed = 3.0e8;

// Signal-path line (z1, tau1) with the ground-return line (z2, tau2) in the
// same current loop; the return line open-circuits the through path at odd
// multiples of f = 1/(2*tau2).
struct GsgParams {
    double z1 = 0.0;    // ohm
    double tau1 = 0.0;  // s
    double z2 = 0.0;    // ohm
    double tau2 = 0.0;  // s
};

// Pad geometry for the closed-form notch estimate.
struct GsgGeometry {
    double h = 0.0;      // footprint-to-footprint distance, m
    double pitch = 0.0;  // bump pitch, m
    double eps_r = 1.0;  // underfill permittivity
};

// Rectangular via-fenced waveguide: width W, via diameter D, via pitch P.
struct SiwGeometry {
    double W = 0.0;      // m
    double D = 0.0;      // m
    double P = 0.0;      // m
    double eps_r = 1.0;
};

// Shunt pad capacitance - series via line - shunt pad capacitance.
struct StriplineTransitionParams {
    double c_pad = 0.0;    // F
    double z_via = 0.0;    // ohm
    double tau_via = 0.0;  // s
};

// Quarter-wave-style series matching line: z0 at electrical length theta_deg
// defined at f0_hz.
struct SeriesLineMatch {
    double z0 = 0.0;
    double theta_deg = 0.0;
    double f0_hz = 0.0;
};

TwoPortNetwork gsg_model(const GsgParams& p, const FrequencyGrid& grid, double z_ref = 50.0);
double gsg_notch_freq(double tau2_s);
// First `count` notch frequencies: the odd multiples (2k+1)/(2*tau2).
std::vector<double> gsg_notch_harmonics(double tau2_s, int count);
// Destructive recombination of the pad current loop: f = 1/(2*(tau1+tau2)).
double loop_radiation_freq(double tau1_s, double tau2_s);
// Closed-form chart estimate of the first notch from pad geometry.
double pitch_notch_estimate(const GsgGeometry& g);

double siw_effective_width(const SiwGeometry& g);
// TE10 cutoff of the width-w_eff_m guide filled with eps_r.
double siw_te10_cutoff(double w_eff_m, double eps_r);

TwoPortNetwork shunt_capacitor(double c_farad, const FrequencyGrid& grid, double z_ref = 50.0);
TwoPortNetwork stripline_transition_model(const StriplineTransitionParams& p,
                                          const FrequencyGrid& grid, double z_ref = 50.0);

// Insert the series line in front of the given port (1 or 2).
TwoPortNetwork apply_series_match(const TwoPortNetwork& net, const SeriesLineMatch& match,
                                  int port = 1);

struct MatchSearchRange {
    double z0_min = 10.0, z0_max = 100.0, z0_step = 0.5;          // ohm
    double theta_min = 0.0, theta_max = 90.0, theta_step = 0.25;  // deg
};

struct MatchDesign {
    SeriesLineMatch match;
    double matched_s11_mag = 0.0;
    double unmatched_s11_mag = 0.0;
};

// Exhaustive grid search for the line that minimizes |S11| at f0 looking into
// port 1. Ties break toward smaller |S11|, then smaller theta, then smaller z0,
// so a matched load comes back with theta = 0.
MatchDesign design_series_match(const TwoPortNetwork& net, double f0_hz,
                                const MatchSearchRange& range = {});

// JSON parameter files; keys exactly as the struct field names, SI units.
GsgParams gsg_params_from_json_text(const std::string& text);
SiwGeometry siw_geometry_from_json_text(const std::string& text);
StriplineTransitionParams stripline_params_from_json_text(const std::string& text);

} // namespace mwtk
