#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mwtk/netcore.hpp"

namespace mwtk {

// Complex propagation constant per frequency: gamma = alpha + j*beta,
// alpha in Np/m, beta in rad/m. Slightly negative alpha (>= -1e-3 Np/m)
// is tolerated as measurement noise and reported, not rejected.
class PropagationConstant {
public:
    PropagationConstant(FrequencyGrid grid, std::vector<double> alpha_np_per_m,
                        std::vector<double> beta_rad_per_m);

    const FrequencyGrid& grid() const { return grid_; }
    std::size_t size() const { return alpha_.size(); }
    double alpha(std::size_t i) const { return alpha_[i]; }
    double beta(std::size_t i) const { return beta_[i]; }
    const std::vector<double>& alpha() const { return alpha_; }
    const std::vector<double>& beta() const { return beta_; }
    cplx gamma(std::size_t i) const { return {alpha_[i], beta_[i]}; }
    std::vector<std::size_t> negative_alpha_points() const;

private:
    FrequencyGrid grid_;
    std::vector<double> alpha_, beta_;
};

// Lossless line of characteristic impedance z0 and one-way delay tau:
// S21 = exp(-j*2*pi*f*tau) in its own z0 reference.
TwoPortNetwork ideal_line(double z0, double tau_s, const FrequencyGrid& grid);

// Uniform line of physical length with the given propagation constant:
// S21 = exp(-gamma*length) in its z0 reference, S11 = 0.
TwoPortNetwork lossy_line(const PropagationConstant& gamma, double z0, double length_m);

struct HurayParams {
    double nodule_radius_m = 0.0;   // a
    double surface_ratio = 0.0;     // SR, nodule-to-flat area ratio
    double conductivity_s_per_m = 5.8e7;
};

double skin_depth(double f_hz, double conductivity_s_per_m);
// Conductor-loss multiplier K(f) >= 1, monotonically increasing in f,
// K -> 1 + 1.5*SR as f -> infinity.
double huray_factor(double f_hz, const HurayParams& p);

// Scale only the conductor part of the attenuation: alpha' = alpha + (K-1)*alpha_conductor.
PropagationConstant apply_roughness(const PropagationConstant& smooth,
                                    const std::vector<double>& alpha_conductor_np_per_m,
                                    const HurayParams& p);
// Convenience: the whole alpha is conductor loss.
PropagationConstant apply_roughness(const PropagationConstant& smooth, const HurayParams& p);

// Recover gamma from a matched-line S21 over length_m, with continuity-based
// phase unwrapping from the lowest frequency up. Throws numeric_error on zero
// transmission or when the grid is too coarse to unwrap unambiguously.
PropagationConstant extract_gamma(const TwoPortNetwork& line, double length_m);

PropagationConstant average_gamma(const PropagationConstant& a, const PropagationConstant& b);

// CSV exchange format: header freq_hz,alpha_db_per_mm,beta_deg_per_mm.
std::string gamma_to_csv(const PropagationConstant& g);
PropagationConstant gamma_from_csv(std::istream& in);
PropagationConstant gamma_from_csv_file(const std::string& path);

} // namespace mwtk
