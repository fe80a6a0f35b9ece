#include "mwtk/tline.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mwtk/units.hpp"

namespace mwtk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAlphaNoiseFloor = -1e-3; // Np/m, tolerated measurement noise

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

PropagationConstant::PropagationConstant(FrequencyGrid grid, std::vector<double> alpha_np_per_m,
                                         std::vector<double> beta_rad_per_m)
    : grid_(std::move(grid)), alpha_(std::move(alpha_np_per_m)), beta_(std::move(beta_rad_per_m))
{
    require(alpha_.size() == grid_.size() && beta_.size() == grid_.size(),
            "propagation constant: data size must match grid");
    for (double a : alpha_)
        require(std::isfinite(a) && a >= kAlphaNoiseFloor,
                "propagation constant: alpha below the -1e-3 Np/m noise floor");
    for (double b : beta_)
        require(std::isfinite(b), "propagation constant: non-finite beta");
}

std::vector<std::size_t> PropagationConstant::negative_alpha_points() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < alpha_.size(); ++i)
        if (alpha_[i] < 0.0) out.push_back(i);
    return out;
}

TwoPortNetwork ideal_line(double z0, double tau_s, const FrequencyGrid& grid)
{
    require(std::isfinite(z0) && z0 > 0.0, "ideal_line: z0 must be > 0");
    require(std::isfinite(tau_s) && tau_s >= 0.0, "ideal_line: delay must be >= 0");
    std::vector<Mat2> s;
    s.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const cplx t = std::polar(1.0, -kTwoPi * grid[i] * tau_s);
        s.push_back({0.0, t, t, 0.0});
    }
    return TwoPortNetwork(grid, std::move(s), z0, z0);
}

TwoPortNetwork lossy_line(const PropagationConstant& gamma, double z0, double length_m)
{
    require(std::isfinite(z0) && z0 > 0.0, "lossy_line: z0 must be > 0");
    require(std::isfinite(length_m) && length_m >= 0.0, "lossy_line: length must be >= 0");
    std::vector<Mat2> s;
    s.reserve(gamma.size());
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        const cplx t = std::exp(-gamma.gamma(i) * length_m);
        s.push_back({0.0, t, t, 0.0});
    }
    return TwoPortNetwork(gamma.grid(), std::move(s), z0, z0);
}

double skin_depth(double f_hz, double conductivity_s_per_m)
{
    require(f_hz > 0.0, "skin_depth: frequency must be > 0");
    require(conductivity_s_per_m > 0.0, "skin_depth: conductivity must be > 0");
    return 1.0 / std::sqrt(std::numbers::pi * f_hz * kMu0 * conductivity_s_per_m);
}

double huray_factor(double f_hz, const HurayParams& p)
{
    require(p.nodule_radius_m > 0.0, "huray_factor: nodule radius must be > 0");
    require(p.surface_ratio >= 0.0, "huray_factor: surface ratio must be >= 0");
    const double delta = skin_depth(f_hz, p.conductivity_s_per_m);
    const double x = delta / p.nodule_radius_m;
    return 1.0 + 1.5 * p.surface_ratio / (1.0 + x + 0.5 * x * x);
}

PropagationConstant apply_roughness(const PropagationConstant& smooth,
                                    const std::vector<double>& alpha_conductor_np_per_m,
                                    const HurayParams& p)
{
    require(alpha_conductor_np_per_m.size() == smooth.size(),
            "apply_roughness: conductor-loss split size must match grid");
    std::vector<double> alpha(smooth.size());
    for (std::size_t i = 0; i < smooth.size(); ++i) {
        const double ac = alpha_conductor_np_per_m[i];
        require(std::isfinite(ac) && ac >= 0.0 && ac <= std::max(smooth.alpha(i), 0.0) + 1e-12,
                "apply_roughness: conductor loss must lie within the total attenuation");
        const double k = huray_factor(smooth.grid()[i], p);
        alpha[i] = smooth.alpha(i) + (k - 1.0) * ac;
    }
    return PropagationConstant(smooth.grid(), std::move(alpha), smooth.beta());
}

PropagationConstant apply_roughness(const PropagationConstant& smooth, const HurayParams& p)
{
    std::vector<double> ac(smooth.size());
    for (std::size_t i = 0; i < smooth.size(); ++i) ac[i] = std::max(smooth.alpha(i), 0.0);
    return apply_roughness(smooth, ac, p);
}

PropagationConstant extract_gamma(const TwoPortNetwork& line, double length_m)
{
    require(std::isfinite(length_m) && length_m > 0.0, "extract_gamma: length must be > 0");
    const std::size_t n = line.size();
    std::vector<double> alpha(n), beta(n);
    double prev_phase = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!line.valid(i))
            throw numeric_error("extract_gamma: flagged invalid point at " +
                                fmt_num(line.grid()[i]) + " Hz breaks phase continuity");
        const cplx s21 = line.s(i).m21;
        const double mag = std::abs(s21);
        if (mag == 0.0)
            throw numeric_error("extract_gamma: zero transmission at " +
                                fmt_num(line.grid()[i]) + " Hz");
        alpha[i] = -std::log(mag) / length_m;
        const double raw = std::arg(s21);
        double phase;
        if (i == 0) {
            phase = raw;
        } else {
            const double step = std::remainder(raw - prev_phase, kTwoPi);
            if (std::abs(step) > 0.95 * std::numbers::pi)
                throw numeric_error("extract_gamma: phase step of " +
                                    fmt_num(deg_from_rad(step)) + " deg at " +
                                    fmt_num(line.grid()[i]) +
                                    " Hz; the grid is too coarse to unwrap");
            phase = prev_phase + step;
        }
        prev_phase = phase;
        beta[i] = -phase / length_m;
    }
    return PropagationConstant(line.grid(), std::move(alpha), std::move(beta));
}

PropagationConstant average_gamma(const PropagationConstant& a, const PropagationConstant& b)
{
    require(a.grid() == b.grid(), "average_gamma: frequency grids differ");
    std::vector<double> alpha(a.size()), beta(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        alpha[i] = 0.5 * (a.alpha(i) + b.alpha(i));
        beta[i] = 0.5 * (a.beta(i) + b.beta(i));
    }
    return PropagationConstant(a.grid(), std::move(alpha), std::move(beta));
}

std::string gamma_to_csv(const PropagationConstant& g)
{
    std::string out = "freq_hz,alpha_db_per_mm,beta_deg_per_mm\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        out += fmt_num(g.grid()[i]) + "," + fmt_num(g.alpha(i) * kDbPerNeper / 1000.0) + "," +
               fmt_num(deg_from_rad(g.beta(i)) / 1000.0) + "\n";
    }
    return out;
}

namespace {

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

PropagationConstant gamma_from_csv(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::vector<double> freq, alpha, beta;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!have_header) {
            if (split_csv(line) != std::vector<std::string>{"freq_hz", "alpha_db_per_mm",
                                                            "beta_deg_per_mm"})
                throw input_error("gamma csv: line " + std::to_string(lineno) +
                                  ": expected header freq_hz,alpha_db_per_mm,beta_deg_per_mm");
            have_header = true;
            continue;
        }
        const std::vector<std::string> cols = split_csv(line);
        if (cols.size() != 3)
            throw input_error("gamma csv: line " + std::to_string(lineno) +
                              ": expected 3 columns, got " + std::to_string(cols.size()));
        double v[3];
        for (int c = 0; c < 3; ++c) {
            char* end = nullptr;
            v[c] = std::strtod(cols[c].c_str(), &end);
            if (end != cols[c].c_str() + cols[c].size() || cols[c].empty() ||
                !std::isfinite(v[c]))
                throw input_error("gamma csv: line " + std::to_string(lineno) +
                                  ": bad number '" + cols[c] + "'");
        }
        freq.push_back(v[0]);
        alpha.push_back(v[1] * 1000.0 / kDbPerNeper);
        beta.push_back(rad_from_deg(v[2] * 1000.0));
    }
    if (!have_header) throw input_error("gamma csv: missing header");
    if (freq.empty()) throw input_error("gamma csv: no data rows");
    return PropagationConstant(FrequencyGrid(std::move(freq)), std::move(alpha),
                               std::move(beta));
}

PropagationConstant gamma_from_csv_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw input_error("cannot open file: " + path);
    return gamma_from_csv(f);
}

} // namespace mwtk
