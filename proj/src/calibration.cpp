#include "mwtk/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mwtk/units.hpp"

namespace mwtk {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require(bool cond, const std::string& msg)
{
    if (!cond) throw input_error(msg);
}

Mat2 nan_mat()
{
    const cplx n{kNaN, kNaN};
    return {n, n, n, n};
}

double frob_dist(const Mat2& a, const Mat2& b)
{
    return std::abs(a.m11 - b.m11) + std::abs(a.m12 - b.m12) + std::abs(a.m21 - b.m21) +
           std::abs(a.m22 - b.m22);
}

// One eigenvector of m for eigenvalue lambda, normalized and phase-fixed so
// the dominant component is real positive (deterministic orientation).
bool eigenvector(const Mat2& m, const cplx& lambda, cplx& x, cplx& y)
{
    const cplx r1x = m.m12, r1y = lambda - m.m11;
    const cplx r2x = lambda - m.m22, r2y = m.m21;
    const double n1 = std::norm(r1x) + std::norm(r1y);
    const double n2 = std::norm(r2x) + std::norm(r2y);
    if (n1 >= n2) { x = r1x; y = r1y; } else { x = r2x; y = r2y; }
    const double n = std::sqrt(std::norm(x) + std::norm(y));
    if (!(n > 0.0) || !std::isfinite(n)) return false;
    x /= n;
    y /= n;
    const cplx dom = std::abs(x) >= std::abs(y) ? x : y;
    const cplx phase = dom / std::abs(dom);
    x /= phase;
    y /= phase;
    return true;
}

struct PointSolve {
    Mat2 t_a = Mat2::identity(); // det-normalized to 1
    Mat2 t_b = Mat2::identity();
    cplx lambda{1.0, 0.0};       // e^{-gamma*delta_length}
    bool solved = false;
    bool conditioned = true;
};

struct SolveState {
    bool have_prev = false;
    cplx prev_lambda{};
    cplx prev_reflect{};
    Mat2 prev_t_a{};
};

PointSolve solve_point(const Mat2& s_thru, const Mat2& s_line, const cplx& gm1, const cplx& gm2,
                       ReflectKind kind, SolveState& st)
{
    PointSolve out;
    bool ok1 = false, ok2 = false, ok3 = false;
    const Mat2 t_thru = s_to_t(s_thru, ok1);
    const Mat2 t_line = s_to_t(s_line, ok2);
    if (!ok1 || !ok2) return out;
    const Mat2 t_thru_inv = t_thru.inverse(ok3);
    if (!ok3) return out;
    const Mat2 m = t_line * t_thru_inv;

    const cplx tr = m.m11 + m.m22;
    if (std::abs(tr - 2.0) < 1e-9 * std::max(1.0, std::abs(tr)))
        out.conditioned = false; // line barely distinct from thru

    const cplx disc = std::sqrt(tr * tr - 4.0 * m.det());
    const cplx la = 0.5 * (tr + disc);
    const cplx lb = 0.5 * (tr - disc);
    const double lmax = std::max({std::abs(la), std::abs(lb), 1.0});
    if (std::abs(la - lb) <= 1e-6 * lmax) out.conditioned = false;

    cplx lambda;
    if (std::abs(std::abs(la) - std::abs(lb)) > 1e-6 * lmax) {
        lambda = std::abs(la) < std::abs(lb) ? la : lb; // passive root
    } else if (st.have_prev) {
        lambda = std::abs(la - st.prev_lambda) <= std::abs(lb - st.prev_lambda) ? la : lb;
    } else {
        const double aa = std::arg(la);
        lambda = (aa < 0.0 && aa > -std::numbers::pi) ? la : lb;
    }
    const cplx lambda_other = std::abs(lambda - la) == 0.0 ? lb : la;

    cplx v1x, v1y, v2x, v2y;
    if (!eigenvector(m, lambda, v1x, v1y) || !eigenvector(m, lambda_other, v2x, v2y))
        return out;

    const Mat2 v{v1x, v2x, v1y, v2y};
    bool vok = false;
    const Mat2 v_inv = v.inverse(vok);
    if (!vok) {
        out.conditioned = false;
        return out;
    }
    const Mat2 g = v_inv * t_thru;

    // reflect seen through both boxes pins the column scale ratio rho = q/p
    const cplx den_a = gm1 * v1y - v1x;           // port-1 reflect denominator
    const cplx den_b = g.m11 + g.m12 * gm2;       // port-2 reflect denominator
    const cplx num_b = g.m21 + g.m22 * gm2;
    const cplx num_a = v2x - gm1 * v2y;
    if (std::abs(den_a) == 0.0 || std::abs(den_b) == 0.0 || std::abs(num_a) == 0.0)
        return out;
    if (std::abs(den_a) < 1e-10 || std::abs(den_b) < 1e-10 * std::max(1.0, std::abs(num_b)))
        out.conditioned = false;

    const cplx rho2 = (num_b * den_a) / (den_b * num_a);
    cplx rho = std::sqrt(rho2);
    if (!(std::abs(rho) > 0.0) || !std::isfinite(std::abs(rho))) return out;

    const auto reflect_of = [&](const cplx& r) { return r * num_a / den_a; };
    const cplx target = st.have_prev
                            ? st.prev_reflect
                            : cplx{kind == ReflectKind::Short ? -1.0 : 1.0, 0.0};
    if (std::abs(reflect_of(-rho) - target) < std::abs(reflect_of(rho) - target)) rho = -rho;

    Mat2 t_a{v1x, rho * v2x, v1y, rho * v2y};
    const cplx det_a = t_a.det();
    if (!(std::abs(det_a) > 0.0) || !std::isfinite(std::abs(det_a))) return out;
    t_a = t_a * (1.0 / std::sqrt(det_a));
    if (st.have_prev && frob_dist(t_a * cplx{-1.0, 0.0}, st.prev_t_a) < frob_dist(t_a, st.prev_t_a))
        t_a = t_a * cplx{-1.0, 0.0};

    bool aok = false;
    const Mat2 t_a_inv = t_a.inverse(aok);
    if (!aok) return out;

    out.t_a = t_a;
    out.t_b = t_a_inv * t_thru;
    out.lambda = lambda;
    out.solved = true;

    st.have_prev = true;
    st.prev_lambda = lambda;
    st.prev_reflect = reflect_of(rho);
    st.prev_t_a = t_a;
    return out;
}

// Linear interpolation of matrix entries across flagged runs; end runs copy
// the nearest good point.
void interpolate_runs(std::vector<Mat2>& data, const std::vector<std::uint8_t>& good)
{
    const std::size_t n = data.size();
    std::size_t i = 0;
    while (i < n) {
        if (good[i]) { ++i; continue; }
        std::size_t j = i;
        while (j < n && !good[j]) ++j;
        const bool has_left = i > 0;
        const bool has_right = j < n;
        for (std::size_t k = i; k < j; ++k) {
            if (has_left && has_right) {
                const double t = static_cast<double>(k - (i - 1)) /
                                 static_cast<double>(j - (i - 1));
                const Mat2 &a = data[i - 1], &b = data[j];
                auto lerp = [t](const cplx& u, const cplx& w) { return u + (w - u) * t; };
                data[k] = {lerp(a.m11, b.m11), lerp(a.m12, b.m12), lerp(a.m21, b.m21),
                           lerp(a.m22, b.m22)};
            } else if (has_left) {
                data[k] = data[i - 1];
            } else if (has_right) {
                data[k] = data[j];
            }
        }
        i = j;
    }
}

void interpolate_scalar_runs(std::vector<double>& data, const std::vector<std::uint8_t>& good)
{
    const std::size_t n = data.size();
    std::size_t i = 0;
    while (i < n) {
        if (good[i]) { ++i; continue; }
        std::size_t j = i;
        while (j < n && !good[j]) ++j;
        for (std::size_t k = i; k < j; ++k) {
            if (i > 0 && j < n) {
                const double t = static_cast<double>(k - (i - 1)) /
                                 static_cast<double>(j - (i - 1));
                data[k] = data[i - 1] + (data[j] - data[i - 1]) * t;
            } else if (i > 0) {
                data[k] = data[i - 1];
            } else if (j < n) {
                data[k] = data[j];
            }
        }
        i = j;
    }
}

TwoPortNetwork boxes_to_network(const FrequencyGrid& grid, const std::vector<Mat2>& t,
                                const std::vector<std::uint8_t>& usable, double z1, double z2)
{
    std::vector<Mat2> s(t.size());
    std::vector<std::uint8_t> valid(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        bool ok = false;
        const Mat2 m = usable[i] ? t_to_s(t[i], ok) : nan_mat();
        s[i] = ok ? m : nan_mat();
        valid[i] = ok ? 1 : 0;
    }
    return TwoPortNetwork(grid, std::move(s), z1, z2, std::move(valid));
}

} // namespace

ErrorBoxes trl_calibrate(const TrlStandards& std_meas, bool interpolate_flagged)
{
    const TwoPortNetwork& thru = std_meas.thru;
    const TwoPortNetwork& line = std_meas.line;
    require(thru.grid() == line.grid() && thru.grid() == std_meas.reflect_port1.grid() &&
                thru.grid() == std_meas.reflect_port2.grid(),
            "trl_calibrate: all standards must share one frequency grid");
    require(thru.z_ref1() == thru.z_ref2() && line.z_ref1() == line.z_ref2() &&
                thru.z_ref1() == line.z_ref1() &&
                thru.z_ref1() == std_meas.reflect_port1.z_ref() &&
                thru.z_ref1() == std_meas.reflect_port2.z_ref(),
            "trl_calibrate: all standards must share one reference impedance");
    require(std_meas.delta_length > 0.0, "trl_calibrate: delta_length must be > 0");

    const std::size_t n = thru.size();
    std::vector<Mat2> t_a(n), t_b(n);
    std::vector<cplx> lambda(n, cplx{1.0, 0.0});
    std::vector<std::uint8_t> solved(n, 0), conditioned(n, 1);

    SolveState st;
    for (std::size_t i = 0; i < n; ++i) {
        if (!thru.valid(i) || !line.valid(i)) {
            conditioned[i] = 0;
            t_a[i] = Mat2::identity();
            t_b[i] = Mat2::identity();
            continue;
        }
        const PointSolve p = solve_point(thru.s(i), line.s(i), std_meas.reflect_port1[i],
                                         std_meas.reflect_port2[i], std_meas.reflect_kind, st);
        t_a[i] = p.t_a;
        t_b[i] = p.t_b;
        lambda[i] = p.lambda;
        solved[i] = p.solved ? 1 : 0;
        if (!p.solved || !p.conditioned) conditioned[i] = 0;
    }

    if (std::none_of(solved.begin(), solved.end(), [](std::uint8_t v) { return v != 0; }))
        throw numeric_error("trl_calibrate: calibration degenerate at every frequency");

    // propagation constant from the passive eigenvalue, phase unwrapped across
    // solved points; unsolved points are bridged by interpolation
    std::vector<double> alpha(n, 0.0), phase(n, 0.0);
    {
        bool have = false;
        double prev_phase = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!solved[i]) continue;
            alpha[i] = -std::log(std::abs(lambda[i])) / std_meas.delta_length;
            const double raw = std::arg(lambda[i]);
            phase[i] = have ? prev_phase + std::remainder(raw - prev_phase, 2.0 * std::numbers::pi)
                            : raw;
            prev_phase = phase[i];
            have = true;
        }
        interpolate_scalar_runs(alpha, solved);
        interpolate_scalar_runs(phase, solved);
    }

    // electrical-length conditioning: flag within 20 deg of a multiple of 180
    for (std::size_t i = 0; i < n; ++i) {
        const double theta_deg = std::abs(deg_from_rad(phase[i]));
        const double m = std::fmod(theta_deg, 180.0);
        if (m <= 20.0 || m >= 160.0) conditioned[i] = 0;
    }

    std::vector<double> beta(n);
    std::vector<std::uint8_t> alpha_ok(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        beta[i] = -phase[i] / std_meas.delta_length;
        if (!(alpha[i] >= -1e-3)) {
            alpha_ok[i] = 0; // passivity-violating estimate: conditioning failure
            conditioned[i] = 0;
        }
    }
    if (std::none_of(alpha_ok.begin(), alpha_ok.end(), [](std::uint8_t v) { return v != 0; }))
        throw numeric_error("trl_calibrate: no passive propagation estimate at any frequency");
    interpolate_scalar_runs(alpha, alpha_ok);

    std::vector<std::uint8_t> usable = solved;
    if (interpolate_flagged) {
        std::vector<std::uint8_t> good(n);
        for (std::size_t i = 0; i < n; ++i) good[i] = (solved[i] && conditioned[i]) ? 1 : 0;
        if (std::any_of(good.begin(), good.end(), [](std::uint8_t v) { return v != 0; })) {
            interpolate_runs(t_a, good);
            interpolate_runs(t_b, good);
            usable.assign(n, 1);
        }
    }

    ErrorBoxes out{
        boxes_to_network(thru.grid(), t_a, usable, thru.z_ref1(), thru.z_ref2()),
        boxes_to_network(thru.grid(), t_b, usable, thru.z_ref1(), thru.z_ref2()),
        PropagationConstant(thru.grid(), std::move(alpha), std::move(beta)),
        std::move(conditioned)};
    return out;
}

TwoPortNetwork apply_cal(const ErrorBoxes& e, const TwoPortNetwork& raw)
{
    require(e.port1.grid() == raw.grid(), "apply_cal: grids differ");
    const std::size_t n = raw.size();
    std::vector<Mat2> s(n);
    std::vector<std::uint8_t> valid(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool ok_a = false, ok_b = false, ok_r = false, inv_a = false, inv_b = false,
             ok_out = false;
        Mat2 out = nan_mat();
        if (raw.valid(i) && e.port1.valid(i) && e.port2.valid(i)) {
            const Mat2 t_a = s_to_t(e.port1.s(i), ok_a);
            const Mat2 t_b = s_to_t(e.port2.s(i), ok_b);
            const Mat2 t_raw = s_to_t(raw.s(i), ok_r);
            if (ok_a && ok_b && ok_r) {
                const Mat2 a_inv = t_a.inverse(inv_a);
                const Mat2 b_inv = t_b.inverse(inv_b);
                if (inv_a && inv_b) out = t_to_s(a_inv * t_raw * b_inv, ok_out);
            }
        }
        s[i] = ok_out ? out : nan_mat();
        valid[i] = ok_out ? 1 : 0;
    }
    return TwoPortNetwork(raw.grid(), std::move(s), raw.z_ref1(), raw.z_ref2(),
                          std::move(valid));
}

namespace {

TwoPortNetwork shift_planes(const TwoPortNetwork& net, const PropagationConstant& gamma,
                            double l1_m, double l2_m, double sign)
{
    require(net.grid() == gamma.grid(), "plane shift: grids differ");
    require(l1_m >= 0.0 && l2_m >= 0.0, "plane shift: lengths must be >= 0");
    std::vector<Mat2> s;
    s.reserve(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
        const cplx e1 = std::exp(sign * gamma.gamma(i) * l1_m);
        const cplx e2 = std::exp(sign * gamma.gamma(i) * l2_m);
        const Mat2& m = net.s(i);
        s.push_back({m.m11 * e1 * e1, m.m12 * e1 * e2, m.m21 * e1 * e2, m.m22 * e2 * e2});
    }
    return TwoPortNetwork(net.grid(), std::move(s), net.z_ref1(), net.z_ref2(), net.valid());
}

} // namespace

TwoPortNetwork deembed_line(const TwoPortNetwork& net, const PropagationConstant& gamma,
                            double l1_m, double l2_m)
{
    return shift_planes(net, gamma, l1_m, l2_m, +1.0);
}

TwoPortNetwork embed_line(const TwoPortNetwork& net, const PropagationConstant& gamma,
                          double l1_m, double l2_m)
{
    return shift_planes(net, gamma, l1_m, l2_m, -1.0);
}

namespace {

// least-squares line removal over the valid points of the in-phase reflection
void detrended_reflection(const TwoPortNetwork& net, int port, std::vector<double>& freq,
                          std::vector<double>& x)
{
    require(port == 1 || port == 2, "ripple: port must be 1 or 2");
    freq.clear();
    x.clear();
    for (std::size_t i = 0; i < net.size(); ++i) {
        if (!net.valid(i)) continue;
        freq.push_back(net.grid()[i]);
        x.push_back(port == 1 ? net.s(i).m11.real() : net.s(i).m22.real());
    }
    require(x.size() >= 2, "ripple: need at least two valid points");
    const std::size_t n = x.size();
    double fm = 0.0, xm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        fm += freq[i];
        xm += x[i];
    }
    fm /= static_cast<double>(n);
    xm /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (freq[i] - fm) * (freq[i] - fm);
        sxy += (freq[i] - fm) * (x[i] - xm);
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    for (std::size_t i = 0; i < n; ++i) x[i] -= xm + slope * (freq[i] - fm);
}

} // namespace

RippleReport ripple_spacing_diagnostic(const TwoPortNetwork& net, int port, double eps_r)
{
    require(eps_r >= 1.0, "ripple: eps_r must be >= 1");
    std::vector<double> freq, x;
    detrended_reflection(net, port, freq, x);

    // below this the "peaks" are rounding noise, not a standing-wave pattern
    const auto [fmn, fmx] = std::minmax_element(x.begin(), x.end());
    if (0.5 * (*fmx - *fmn) < 1e-12)
        throw numeric_error("ripple: reflection trace is flat to numerical noise; "
                            "no detectable periodicity");

    std::vector<double> peaks;
    for (std::size_t i = 1; i + 1 < x.size(); ++i)
        if (x[i] > x[i - 1] && x[i] > x[i + 1]) peaks.push_back(freq[i]);

    if (peaks.size() < 3)
        throw numeric_error("ripple: no detectable periodicity (need at least three peaks, "
                            "found " + std::to_string(peaks.size()) + ")");

    RippleReport r;
    r.peak_count = peaks.size();
    r.spacing_hz = (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
    r.implied_length_m = kSpeedOfLight / (2.0 * r.spacing_hz * std::sqrt(eps_r));
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    r.amplitude = 0.5 * (*mx - *mn);
    return r;
}

double ripple_amplitude(const TwoPortNetwork& net, int port)
{
    std::vector<double> freq, x;
    detrended_reflection(net, port, freq, x);
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    return 0.5 * (*mx - *mn);
}

} // namespace mwtk
