// Regenerates the calibration fixtures committed under tests/fixtures/.
// Everything is closed-form and deterministic, so rerunning reproduces the
// same bytes. Usage: make_cal_fixtures [output_dir]
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "mwtk/netcore.hpp"
#include "mwtk/tline.hpp"
#include "mwtk/touchstone.hpp"
#include "mwtk/units.hpp"

using namespace mwtk;

namespace {

constexpr double kEpsREff = 2.56;
constexpr double kDeltaL = 2.17e-4; // m; 25..71 deg of line across the band

Mat2 t_of_s(const Mat2& s)
{
    return {-s.det() / s.m21, s.m11 / s.m21, -s.m22 / s.m21, cplx{1.0, 0.0} / s.m21};
}

Mat2 s_of_t(const Mat2& t)
{
    return {t.m12 / t.m22, t.det() / t.m22, cplx{1.0, 0.0} / t.m22, -t.m21 / t.m22};
}

cplx osc(double f, double mag, double tau_ps)
{
    return std::polar(mag, -2.0 * std::numbers::pi * f * tau_ps * 1e-12);
}

Mat2 box_a(double f)
{
    return {osc(f, 0.18, 0.45), osc(f, 0.92, 2.1), osc(f, 0.88, 1.9), osc(f, 0.12, -0.3)};
}

Mat2 box_b(double f)
{
    return {osc(f, 0.10, -0.25), osc(f, 0.90, 1.7), osc(f, 0.94, 2.3), osc(f, 0.20, 0.6)};
}

Mat2 dut_truth(double f)
{
    const cplx t = osc(f, 0.55, 3.0);
    return {osc(f, 0.25, 0.8), t, t, osc(f, 0.30, 1.1)};
}

cplx gamma_of(double f)
{
    const double alpha = 1.2 + 14.0 * std::sqrt(f / 170e9);
    const double beta = 2.0 * std::numbers::pi * f * std::sqrt(kEpsREff) / kSpeedOfLight;
    return {alpha, beta};
}

cplx reflect_truth(double f)
{
    const double beta = gamma_of(f).imag();
    return -std::polar(0.96, -2.0 * beta * 1e-4);
}

void write_manifest(const std::filesystem::path& path, const std::string& reflect1)
{
    std::ofstream out(path);
    out << "{\n"
        << "  \"thru\": \"thru.s2p\",\n"
        << "  \"line\": \"line.s2p\",\n"
        << "  \"reflect_port1\": \"" << reflect1 << "\",\n"
        << "  \"reflect_port2\": \"reflect2.s1p\",\n"
        << "  \"delta_length_m\": 2.17e-4,\n"
        << "  \"reflect_kind\": \"short\"\n"
        << "}\n";
}

void emit_set(const std::filesystem::path& dir, bool identity_boxes)
{
    std::filesystem::create_directories(dir);
    std::vector<double> f(56);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = 60e9 + 2e9 * static_cast<double>(i);
    const FrequencyGrid grid(f);
    const std::size_t n = grid.size();

    std::vector<Mat2> thru(n), line(n), raw(n), truth(n);
    std::vector<cplx> r1(n), r2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double fi = grid[i];
        const Mat2 sa = identity_boxes ? Mat2{0.0, 1.0, 1.0, 0.0} : box_a(fi);
        const Mat2 sb = identity_boxes ? Mat2{0.0, 1.0, 1.0, 0.0} : box_b(fi);
        const Mat2 ta = t_of_s(sa);
        const Mat2 tb = t_of_s(sb);
        const cplx lam = std::exp(-gamma_of(fi) * kDeltaL);
        const cplx g = reflect_truth(fi);

        truth[i] = dut_truth(fi);
        thru[i] = s_of_t(ta * tb);
        line[i] = s_of_t(ta * Mat2{lam, 0.0, 0.0, 1.0 / lam} * tb);
        raw[i] = s_of_t(ta * t_of_s(truth[i]) * tb);
        r1[i] = sa.m11 + sa.m12 * sa.m21 * g / (1.0 - sa.m22 * g);
        r2[i] = sb.m22 + sb.m12 * sb.m21 * g / (1.0 - sb.m11 * g);
    }

    const TouchstoneOptions opt{FreqUnit::GHz, SFormat::RI, 50.0};
    const auto p = [&](const char* name) { return (dir / name).string(); };
    write_touchstone_file(p("thru.s2p"), TwoPortNetwork(grid, thru, 50.0, 50.0), opt,
                          {"synthetic calibration fixture: thru standard"});
    write_touchstone_file(p("line.s2p"), TwoPortNetwork(grid, line, 50.0, 50.0), opt,
                          {"synthetic calibration fixture: line standard, 0.217 mm longer"});
    write_touchstone_file(p("reflect1.s1p"), OnePortNetwork(grid, r1, 50.0), opt,
                          {"synthetic calibration fixture: offset short, port 1"});
    write_touchstone_file(p("reflect2.s1p"), OnePortNetwork(grid, r2, 50.0), opt,
                          {"synthetic calibration fixture: offset short, port 2"});
    write_touchstone_file(p("dut_raw.s2p"), TwoPortNetwork(grid, raw, 50.0, 50.0), opt,
                          {"synthetic calibration fixture: dut as measured"});
    write_touchstone_file(p("dut_reference.s2p"), TwoPortNetwork(grid, truth, 50.0, 50.0), opt,
                          {"synthetic calibration fixture: dut truth at the line planes"});
    write_manifest(dir / "manifest.json", "reflect1.s1p");
    write_manifest(dir / "manifest_bad.json", "missing.s1p");
}

} // namespace

int main(int argc, char** argv)
{
    const std::filesystem::path base = argc > 1 ? argv[1] : "fixtures";
    emit_set(base / "trl", false);
    emit_set(base / "trl_identity", true);
    std::cout << "fixtures written under " << base.string() << "\n";
    return 0;
}
