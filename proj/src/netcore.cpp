#include "mwtk/netcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mwtk/units.hpp"

namespace mwtk {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Mat2 nan_mat()
{
    const cplx n{kNaN, kNaN};
    return {n, n, n, n};
}

bool finite(const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

double scale_of(const Mat2& m)
{
    return std::max({std::abs(m.m11), std::abs(m.m12), std::abs(m.m21), std::abs(m.m22)});
}

void require(bool cond, const std::string& msg)
{
    if (!cond) throw input_error(msg);
}

void require_same_grid(const FrequencyGrid& a, const FrequencyGrid& b, const char* what)
{
    if (a != b) throw input_error(std::string(what) + ": frequency grids differ");
}

bool valid_z_ref(double z) { return std::isfinite(z) && z > 0.0; }

} // namespace

Mat2 Mat2::operator*(const Mat2& o) const
{
    return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
            m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
}

Mat2 Mat2::operator+(const Mat2& o) const
{
    return {m11 + o.m11, m12 + o.m12, m21 + o.m21, m22 + o.m22};
}

Mat2 Mat2::inverse(bool& ok) const
{
    const cplx d = det();
    const double s = scale_of(*this);
    // relative singularity test; exact zeros always trip it
    ok = finite() && std::abs(d) > 1e-18 * s * s && std::abs(d) > 0.0;
    if (!ok) return nan_mat();
    return {m22 / d, -m12 / d, -m21 / d, m11 / d};
}

bool Mat2::finite() const
{
    return mwtk::finite(m11) && mwtk::finite(m12) && mwtk::finite(m21) && mwtk::finite(m22);
}

FrequencyGrid::FrequencyGrid(std::vector<double> hz) : hz_(std::move(hz))
{
    require(!hz_.empty(), "frequency grid: empty");
    double prev = 0.0;
    for (double f : hz_) {
        require(std::isfinite(f) && f > 0.0, "frequency grid: points must be finite and > 0");
        require(f > prev, "frequency grid: points must be strictly ascending");
        prev = f;
    }
}

FrequencyGrid FrequencyGrid::linspace(double start_hz, double stop_hz, std::size_t npoints)
{
    require(npoints >= 1, "linspace: need at least one point");
    if (npoints == 1) {
        require(start_hz == stop_hz, "linspace: single point needs start == stop");
        return FrequencyGrid({start_hz});
    }
    require(stop_hz > start_hz, "linspace: stop must exceed start");
    std::vector<double> hz(npoints);
    const double step = (stop_hz - start_hz) / static_cast<double>(npoints - 1);
    for (std::size_t i = 0; i < npoints; ++i)
        hz[i] = start_hz + step * static_cast<double>(i);
    hz.back() = stop_hz;
    return FrequencyGrid(std::move(hz));
}

TwoPortNetwork::TwoPortNetwork(FrequencyGrid grid, std::vector<Mat2> s,
                               double z_ref1, double z_ref2)
    : TwoPortNetwork(std::move(grid), std::move(s), z_ref1, z_ref2, {})
{
}

TwoPortNetwork::TwoPortNetwork(FrequencyGrid grid, std::vector<Mat2> s,
                               double z_ref1, double z_ref2, std::vector<std::uint8_t> valid)
    : grid_(std::move(grid)), s_(std::move(s)), z_ref1_(z_ref1), z_ref2_(z_ref2),
      valid_(std::move(valid))
{
    require(s_.size() == grid_.size(), "two-port: S data size must match grid");
    require(valid_z_ref(z_ref1_) && valid_z_ref(z_ref2_),
            "two-port: reference impedances must be real and > 0");
    if (valid_.empty()) valid_.assign(s_.size(), 1);
    require(valid_.size() == s_.size(), "two-port: validity mask size must match grid");
    for (std::size_t i = 0; i < s_.size(); ++i)
        if (valid_[i] && !s_[i].finite())
            throw input_error("two-port: non-finite S data at an unflagged point");
}

bool TwoPortNetwork::all_valid() const
{
    return std::all_of(valid_.begin(), valid_.end(), [](std::uint8_t v) { return v != 0; });
}

std::vector<std::size_t> TwoPortNetwork::invalid_points() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < valid_.size(); ++i)
        if (!valid_[i]) out.push_back(i);
    return out;
}

const Mat2& TwoPortNetwork::s_at(double f_hz) const
{
    const auto& hz = grid_.hz();
    auto it = std::lower_bound(hz.begin(), hz.end(), f_hz);
    if (it != hz.end() && std::abs(*it - f_hz) <= 1e-12 * f_hz)
        return s_[static_cast<std::size_t>(it - hz.begin())];
    if (it != hz.begin() && std::abs(*(it - 1) - f_hz) <= 1e-12 * f_hz)
        return s_[static_cast<std::size_t>(it - 1 - hz.begin())];
    throw input_error("two-port: frequency not on grid");
}

Mat2 TwoPortNetwork::s_interp(double f_hz) const
{
    const auto& hz = grid_.hz();
    require(f_hz >= hz.front() && f_hz <= hz.back(), "two-port: frequency outside grid span");
    auto it = std::lower_bound(hz.begin(), hz.end(), f_hz);
    if (it == hz.begin()) return s_.front();
    const std::size_t hi = static_cast<std::size_t>(it - hz.begin());
    if (hi == hz.size()) return s_.back();
    const std::size_t lo = hi - 1;
    const double t = (f_hz - hz[lo]) / (hz[hi] - hz[lo]);
    auto lerp = [t](const cplx& a, const cplx& b) { return a + (b - a) * t; };
    const Mat2 &a = s_[lo], &b = s_[hi];
    return {lerp(a.m11, b.m11), lerp(a.m12, b.m12), lerp(a.m21, b.m21), lerp(a.m22, b.m22)};
}

OnePortNetwork::OnePortNetwork(FrequencyGrid grid, std::vector<cplx> gamma, double z_ref)
    : grid_(std::move(grid)), gamma_(std::move(gamma)), z_ref_(z_ref)
{
    require(gamma_.size() == grid_.size(), "one-port: data size must match grid");
    require(valid_z_ref(z_ref_), "one-port: reference impedance must be real and > 0");
    for (const cplx& g : gamma_)
        require(finite(g), "one-port: non-finite reflection data");
}

TwoPortNetwork make_network(FrequencyGrid grid, std::vector<Mat2> s,
                            double z_ref1, double z_ref2)
{
    return TwoPortNetwork(std::move(grid), std::move(s), z_ref1, z_ref2);
}

TwoPortNetwork make_thru(const FrequencyGrid& grid, double z_ref)
{
    std::vector<Mat2> s(grid.size(), Mat2{0.0, 1.0, 1.0, 0.0});
    return TwoPortNetwork(grid, std::move(s), z_ref, z_ref);
}

AbcdSweep s_to_abcd(const TwoPortNetwork& net)
{
    require(net.z_ref1() == net.z_ref2(),
            "s_to_abcd: chain parameters need equal reference impedances on both ports");
    const double z0 = net.z_ref1();
    AbcdSweep out{net.grid(), {}, z0, {}};
    out.abcd.reserve(net.size());
    out.valid.reserve(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
        const Mat2& s = net.s(i);
        const cplx den = 2.0 * s.m21;
        if (!net.valid(i) || std::abs(den) == 0.0) {
            out.abcd.push_back(nan_mat());
            out.valid.push_back(0);
            continue;
        }
        const cplx a = ((1.0 + s.m11) * (1.0 - s.m22) + s.m12 * s.m21) / den;
        const cplx b = z0 * ((1.0 + s.m11) * (1.0 + s.m22) - s.m12 * s.m21) / den;
        const cplx c = ((1.0 - s.m11) * (1.0 - s.m22) - s.m12 * s.m21) / (den * z0);
        const cplx d = ((1.0 - s.m11) * (1.0 + s.m22) + s.m12 * s.m21) / den;
        out.abcd.push_back({a, b, c, d});
        out.valid.push_back(1);
    }
    return out;
}

TwoPortNetwork abcd_to_s(const FrequencyGrid& grid, const std::vector<Mat2>& abcd, double z_ref)
{
    require(valid_z_ref(z_ref), "abcd_to_s: reference impedance must be real and > 0");
    require(abcd.size() == grid.size(), "abcd_to_s: data size must match grid");
    std::vector<Mat2> s;
    std::vector<std::uint8_t> valid;
    s.reserve(grid.size());
    valid.reserve(grid.size());
    for (const Mat2& m : abcd) {
        const cplx bz = m.m12 / z_ref;
        const cplx cz = m.m21 * z_ref;
        const cplx den = m.m11 + bz + cz + m.m22;
        const double sc = std::max({std::abs(m.m11), std::abs(bz), std::abs(cz),
                                    std::abs(m.m22), 1e-300});
        if (!m.finite() || std::abs(den) <= 1e-15 * sc) {
            s.push_back(nan_mat());
            valid.push_back(0);
            continue;
        }
        s.push_back({(m.m11 + bz - cz - m.m22) / den,
                     2.0 * m.det() / den,
                     2.0 / den,
                     (-m.m11 + bz - cz + m.m22) / den});
        valid.push_back(1);
    }
    return TwoPortNetwork(grid, std::move(s), z_ref, z_ref, std::move(valid));
}

TwoPortNetwork abcd_to_s(const AbcdSweep& sweep, double z_ref)
{
    require(sweep.valid.empty() || sweep.valid.size() == sweep.abcd.size(),
            "abcd_to_s: validity mask size must match data");
    TwoPortNetwork net = abcd_to_s(sweep.grid, sweep.abcd, z_ref);
    if (sweep.valid.empty()) return net;
    std::vector<Mat2> s = net.s();
    std::vector<std::uint8_t> valid = net.valid();
    for (std::size_t i = 0; i < valid.size(); ++i) {
        if (!sweep.valid[i]) {
            valid[i] = 0;
            s[i] = nan_mat();
        }
    }
    return TwoPortNetwork(net.grid(), std::move(s), z_ref, z_ref, std::move(valid));
}

ZSweep s_to_z(const TwoPortNetwork& net)
{
    const double r1 = std::sqrt(net.z_ref1());
    const double r2 = std::sqrt(net.z_ref2());
    ZSweep out{net.grid(), {}, net.z_ref1(), net.z_ref2(), {}};
    out.z.reserve(net.size());
    out.valid.reserve(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
        const Mat2& s = net.s(i);
        const Mat2 eye_minus{1.0 - s.m11, -s.m12, -s.m21, 1.0 - s.m22};
        const Mat2 eye_plus{1.0 + s.m11, s.m12, s.m21, 1.0 + s.m22};
        bool ok = false;
        const Mat2 inv = eye_minus.inverse(ok);
        if (!net.valid(i) || !ok) {
            out.z.push_back(nan_mat());
            out.valid.push_back(0);
            continue;
        }
        const Mat2 m = inv * eye_plus;
        out.z.push_back({r1 * m.m11 * r1, r1 * m.m12 * r2, r2 * m.m21 * r1, r2 * m.m22 * r2});
        out.valid.push_back(1);
    }
    return out;
}

TwoPortNetwork z_to_s(const ZSweep& sweep)
{
    require(valid_z_ref(sweep.z_ref1) && valid_z_ref(sweep.z_ref2),
            "z_to_s: reference impedances must be real and > 0");
    require(sweep.z.size() == sweep.grid.size(), "z_to_s: data size must match grid");
    require(sweep.valid.empty() || sweep.valid.size() == sweep.z.size(),
            "z_to_s: validity mask size must match data");
    const double r1 = std::sqrt(sweep.z_ref1);
    const double r2 = std::sqrt(sweep.z_ref2);
    std::vector<Mat2> s;
    std::vector<std::uint8_t> valid;
    s.reserve(sweep.z.size());
    valid.reserve(sweep.z.size());
    for (std::size_t i = 0; i < sweep.z.size(); ++i) {
        const Mat2& z = sweep.z[i];
        const bool in_ok = sweep.valid.empty() || sweep.valid[i];
        const Mat2 minus{z.m11 - sweep.z_ref1, z.m12, z.m21, z.m22 - sweep.z_ref2};
        const Mat2 plus{z.m11 + sweep.z_ref1, z.m12, z.m21, z.m22 + sweep.z_ref2};
        bool ok = false;
        const Mat2 inv = plus.inverse(ok);
        if (!in_ok || !z.finite() || !ok) {
            s.push_back(nan_mat());
            valid.push_back(0);
            continue;
        }
        const Mat2 m = minus * inv;
        // S = R^-1 (Z - Z0)(Z + Z0)^-1 R with R = diag(sqrt(z_ref))
        s.push_back({m.m11, m.m12 * r2 / r1, m.m21 * r1 / r2, m.m22});
        valid.push_back(1);
    }
    return TwoPortNetwork(sweep.grid, std::move(s), sweep.z_ref1, sweep.z_ref2,
                          std::move(valid));
}

Mat2 s_to_t(const Mat2& s, bool& ok)
{
    ok = s.finite() && std::abs(s.m21) > 0.0;
    if (!ok) return nan_mat();
    // [b1; a1] = T [a2; b2]
    return {-s.det() / s.m21, s.m11 / s.m21, -s.m22 / s.m21, 1.0 / s.m21};
}

Mat2 t_to_s(const Mat2& t, bool& ok)
{
    ok = t.finite() && std::abs(t.m22) > 0.0;
    if (!ok) return nan_mat();
    return {t.m12 / t.m22, t.det() / t.m22, 1.0 / t.m22, -t.m21 / t.m22};
}

TwoPortNetwork cascade(const TwoPortNetwork& a, const TwoPortNetwork& b)
{
    require_same_grid(a.grid(), b.grid(), "cascade");
    require(a.z_ref2() == b.z_ref1(),
            "cascade: junction reference impedances must match");
    std::vector<Mat2> s;
    std::vector<std::uint8_t> valid;
    s.reserve(a.size());
    valid.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Mat2 &sa = a.s(i), &sb = b.s(i);
        const cplx loop = 1.0 - sa.m22 * sb.m11;
        if (!a.valid(i) || !b.valid(i) ||
            std::abs(loop) <= 1e-15 * std::max(1.0, std::abs(sa.m22 * sb.m11))) {
            s.push_back(nan_mat());
            valid.push_back(0);
            continue;
        }
        s.push_back({sa.m11 + sa.m12 * sa.m21 * sb.m11 / loop,
                     sa.m12 * sb.m12 / loop,
                     sa.m21 * sb.m21 / loop,
                     sb.m22 + sb.m12 * sb.m21 * sa.m22 / loop});
        valid.push_back(1);
    }
    return TwoPortNetwork(a.grid(), std::move(s), a.z_ref1(), b.z_ref2(), std::move(valid));
}

TwoPortNetwork series_connect(const TwoPortNetwork& a, const TwoPortNetwork& b)
{
    require_same_grid(a.grid(), b.grid(), "series_connect");
    require(a.z_ref1() == b.z_ref1() && a.z_ref2() == b.z_ref2(),
            "series_connect: both networks must share the same reference impedances");
    const ZSweep za = s_to_z(a);
    const ZSweep zb = s_to_z(b);
    ZSweep sum{a.grid(), {}, a.z_ref1(), a.z_ref2(), {}};
    sum.z.reserve(a.size());
    sum.valid.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!za.valid[i] || !zb.valid[i]) {
            sum.z.push_back(nan_mat());
            sum.valid.push_back(0);
            continue;
        }
        sum.z.push_back(za.z[i] + zb.z[i]);
        sum.valid.push_back(1);
    }
    return z_to_s(sum);
}

TwoPortNetwork renormalize(const TwoPortNetwork& net, double new_z_ref1, double new_z_ref2)
{
    require(valid_z_ref(new_z_ref1) && valid_z_ref(new_z_ref2),
            "renormalize: reference impedances must be real and > 0");
    const double r1 = net.z_ref1(), r2 = net.z_ref2();
    const double p1 = (r1 + new_z_ref1) / (2.0 * std::sqrt(r1 * new_z_ref1));
    const double q1 = (r1 - new_z_ref1) / (2.0 * std::sqrt(r1 * new_z_ref1));
    const double p2 = (r2 + new_z_ref2) / (2.0 * std::sqrt(r2 * new_z_ref2));
    const double q2 = (r2 - new_z_ref2) / (2.0 * std::sqrt(r2 * new_z_ref2));
    std::vector<Mat2> s;
    std::vector<std::uint8_t> valid;
    s.reserve(net.size());
    valid.reserve(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
        const Mat2& m = net.s(i);
        // new waves: a' = P a + Q b, b' = Q a + P b  =>  S' = (Q + P S)(P + Q S)^-1
        const Mat2 num{q1 + p1 * m.m11, p1 * m.m12, p2 * m.m21, q2 + p2 * m.m22};
        const Mat2 den{p1 + q1 * m.m11, q1 * m.m12, q2 * m.m21, p2 + q2 * m.m22};
        bool ok = false;
        const Mat2 inv = den.inverse(ok);
        if (!net.valid(i) || !ok) {
            s.push_back(nan_mat());
            valid.push_back(0);
            continue;
        }
        s.push_back(num * inv);
        valid.push_back(1);
    }
    return TwoPortNetwork(net.grid(), std::move(s), new_z_ref1, new_z_ref2, std::move(valid));
}

StabilityProfile stability_k(const TwoPortNetwork& net)
{
    StabilityProfile out{net.grid(), {}, {}, {}};
    out.k.reserve(net.size());
    out.delta_mag.reserve(net.size());
    out.defined.reserve(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
        const Mat2& s = net.s(i);
        const double cross = std::abs(s.m12 * s.m21);
        if (!net.valid(i) || cross == 0.0) {
            out.k.push_back(kNaN);
            out.delta_mag.push_back(net.valid(i) ? std::abs(s.det()) : kNaN);
            out.defined.push_back(0);
            continue;
        }
        const double d = std::abs(s.det());
        const double k = (1.0 - std::norm(s.m11) - std::norm(s.m22) + d * d) / (2.0 * cross);
        out.k.push_back(k);
        out.delta_mag.push_back(d);
        out.defined.push_back(1);
    }
    return out;
}

GainProfile gmax(const TwoPortNetwork& net)
{
    const StabilityProfile st = stability_k(net);
    GainProfile out{net.grid(), {}, {}, {}};
    out.gmax_db.reserve(net.size());
    out.stable.reserve(net.size());
    out.defined.reserve(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
        if (!st.defined[i]) {
            out.gmax_db.push_back(kNaN);
            out.stable.push_back(0);
            out.defined.push_back(0);
            continue;
        }
        const Mat2& s = net.s(i);
        const double ratio = std::abs(s.m21) / std::abs(s.m12);
        const double k = st.k[i];
        double g;
        bool stable;
        if (k >= 1.0) {
            // k - sqrt(k^2-1) computed in its cancellation-free form
            g = ratio / (k + std::sqrt(k * k - 1.0));
            stable = true;
        } else {
            g = ratio; // maximum stable gain
            stable = false;
        }
        out.gmax_db.push_back(db_from_power(std::max(g, 1e-60)));
        out.stable.push_back(stable ? 1 : 0);
        out.defined.push_back(1);
    }
    return out;
}

} // namespace mwtk
