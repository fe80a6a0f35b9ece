#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "mwtk/tline.hpp"
#include "mwtk/units.hpp"

using namespace mwtk;

namespace {

PropagationConstant microstripish_gamma(const FrequencyGrid& grid)
{
    // smooth dielectric-plus-conductor style loss and near-TEM phase
    std::vector<double> alpha(grid.size()), beta(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double f = grid[i];
        alpha[i] = 2.0 + 30.0 * std::sqrt(f / 200e9);
        beta[i] = 2.0 * std::numbers::pi * f * 1.8 / kSpeedOfLight;
    }
    return {grid, alpha, beta};
}

} // namespace

TEST_CASE("propagation constant tolerates noise-level negative alpha only")
{
    const FrequencyGrid g({1e9, 2e9});
    CHECK_NOTHROW(PropagationConstant(g, {0.0, -1e-4}, {10.0, 20.0}));
    const PropagationConstant p(g, {0.0, -1e-4}, {10.0, 20.0});
    CHECK(p.negative_alpha_points() == std::vector<std::size_t>{1});
    CHECK_THROWS_AS(PropagationConstant(g, {0.0, -1e-2}, {10.0, 20.0}), input_error);
    CHECK_THROWS_AS(PropagationConstant(g, {0.0}, {10.0, 20.0}), input_error);
}

TEST_CASE("ideal line phase and magnitude")
{
    const double tau = 2e-12;
    const FrequencyGrid g({10e9, 50e9, 250e9});
    const TwoPortNetwork line = ideal_line(50.0, tau, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const cplx s21 = line.s(i).m21;
        CHECK(std::abs(s21) == doctest::Approx(1.0).epsilon(1e-12));
        const cplx expect = std::exp(cplx{0.0, -2.0 * std::numbers::pi * g[i] * tau});
        CHECK(std::abs(s21 - expect) < 1e-12);
        CHECK(std::abs(line.s(i).m11) == 0.0);
        CHECK(line.s(i).m12 == s21);
    }
    CHECK_THROWS_AS(ideal_line(0.0, tau, g), input_error);
    CHECK_THROWS_AS(ideal_line(50.0, -1e-12, g), input_error);
}

TEST_CASE("0.1 dB/mm equals the canonical Np/m value")
{
    const double np_per_m = 0.1 * 1000.0 / kDbPerNeper;
    CHECK(np_per_m == doctest::Approx(11.51292546497023).epsilon(1e-12));

    // a line with that attenuation drops |S21| by exactly 0.1 dB per millimetre
    const FrequencyGrid g({100e9});
    const PropagationConstant gamma(g, {np_per_m}, {4000.0});
    const TwoPortNetwork line = lossy_line(gamma, 50.0, 10e-3);
    CHECK(db_from_mag(std::abs(line.s(0).m21)) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("skin depth scales as inverse square root of frequency")
{
    const double d1 = skin_depth(1e9, 5.8e7);
    const double d4 = skin_depth(4e9, 5.8e7);
    CHECK(d4 == doctest::Approx(d1 / 2.0).epsilon(1e-12));
    CHECK(d1 == doctest::Approx(1.0 / std::sqrt(std::numbers::pi * 1e9 * kMu0 * 5.8e7))
                    .epsilon(1e-12));
    CHECK_THROWS_AS(skin_depth(-1.0, 5.8e7), input_error);
    CHECK_THROWS_AS(skin_depth(1e9, 0.0), input_error);
}

TEST_CASE("roughness factor: worked point, limits, monotonicity")
{
    HurayParams p;
    p.nodule_radius_m = 250e-9;
    p.surface_ratio = 4.0;

    // where the skin depth equals the nodule radius the factor is exactly
    // 1 + 1.5*4/(1 + 1 + 1/2) = 3.4
    const double f_eq = 1.0 / (std::numbers::pi * kMu0 * p.conductivity_s_per_m *
                               p.nodule_radius_m * p.nodule_radius_m);
    CHECK(f_eq == doctest::Approx(69.87667837402606e9).epsilon(1e-12));
    CHECK(huray_factor(f_eq, p) == doctest::Approx(3.4).epsilon(1e-12));

    CHECK(std::abs(huray_factor(1.0, p) - 1.0) < 1e-6);
    CHECK(std::abs(huray_factor(1e30, p) - 7.0) < 1e-6);

    double prev = 0.0;
    for (int k = 0; k <= 120; ++k) {
        const double f = 1e6 * std::pow(10.0, k / 20.0); // 1 MHz .. 1 THz
        const double cur = huray_factor(f, p);
        CHECK(cur > prev);
        CHECK(cur >= 1.0);
        CHECK(cur <= 1.0 + 1.5 * p.surface_ratio);
        prev = cur;
    }
}

TEST_CASE("apply_roughness scales only the conductor part")
{
    const FrequencyGrid g({10e9, 100e9});
    const PropagationConstant smooth(g, {5.0, 20.0}, {300.0, 3000.0});
    const std::vector<double> cond{4.0, 18.0};
    HurayParams p;
    p.nodule_radius_m = 250e-9;
    p.surface_ratio = 4.0;

    const PropagationConstant rough = apply_roughness(smooth, cond, p);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double k = huray_factor(g[i], p);
        CHECK(rough.alpha(i) == doctest::Approx(smooth.alpha(i) + (k - 1.0) * cond[i])
                                    .epsilon(1e-12));
        CHECK(rough.beta(i) == smooth.beta(i));
        CHECK(rough.alpha(i) >= smooth.alpha(i));
    }

    // conductor loss cannot exceed the total attenuation
    CHECK_THROWS_AS(apply_roughness(smooth, {6.0, 18.0}, p), input_error);
    CHECK_THROWS_AS(apply_roughness(smooth, {4.0}, p), input_error);

    const PropagationConstant all_cond = apply_roughness(smooth, p);
    CHECK(all_cond.alpha(0) ==
          doctest::Approx(smooth.alpha(0) * huray_factor(g[0], p)).epsilon(1e-12));
}

TEST_CASE("gamma extraction inverts the line model across phase wraps")
{
    // 0.4 rad/GHz * 299 GHz span ~ 19 full turns over the sweep
    const FrequencyGrid g = FrequencyGrid::linspace(1e9, 300e9, 300);
    const PropagationConstant truth = microstripish_gamma(g);
    const double length = 2.3e-3;
    const TwoPortNetwork line = lossy_line(truth, 50.0, length);

    const PropagationConstant got = extract_gamma(line, length);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(got.alpha(i) == doctest::Approx(truth.alpha(i)).epsilon(1e-9));
        CHECK(got.beta(i) == doctest::Approx(truth.beta(i)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(extract_gamma(line, 0.0), input_error);
}

TEST_CASE("gamma extraction rejects steps too close to half a turn")
{
    // adjacent points 3.1 rad apart cannot be unwrapped unambiguously
    const FrequencyGrid g({10e9, 11e9});
    std::vector<Mat2> s(2);
    s[0] = {0.0, cplx{1.0, 0.0}, cplx{1.0, 0.0}, 0.0};
    const cplx t = std::polar(1.0, -3.1);
    s[1] = {0.0, t, t, 0.0};
    const TwoPortNetwork line(g, s, 50.0, 50.0);
    CHECK_THROWS_AS(extract_gamma(line, 1e-3), numeric_error);

    // while 2.9 rad (just under the guard band) unwraps fine
    const cplx t2 = std::polar(1.0, -2.9);
    std::vector<Mat2> s2 = s;
    s2[1] = {0.0, t2, t2, 0.0};
    const TwoPortNetwork ok(g, s2, 50.0, 50.0);
    const PropagationConstant got = extract_gamma(ok, 1e-3);
    CHECK(got.beta(1) == doctest::Approx(2900.0).epsilon(1e-12));
}

TEST_CASE("gamma extraction rejects zero transmission and flagged points")
{
    const FrequencyGrid g({1e9, 2e9});
    std::vector<Mat2> s(2, Mat2{0.0, 1.0, 1.0, 0.0});
    s[1].m21 = 0.0;
    const TwoPortNetwork dead(g, s, 50.0, 50.0);
    CHECK_THROWS_AS(extract_gamma(dead, 1e-3), numeric_error);

    const cplx nan{std::nan(""), std::nan("")};
    std::vector<Mat2> sf(2, Mat2{0.0, 1.0, 1.0, 0.0});
    sf[0] = {nan, nan, nan, nan};
    const TwoPortNetwork flagged(g, sf, 50.0, 50.0, {0, 1});
    CHECK_THROWS_AS(extract_gamma(flagged, 1e-3), numeric_error);
}

TEST_CASE("average_gamma is the pointwise mean")
{
    const FrequencyGrid g({1e9, 2e9});
    const PropagationConstant a(g, {2.0, 4.0}, {100.0, 200.0});
    const PropagationConstant b(g, {4.0, 8.0}, {300.0, 400.0});
    const PropagationConstant m = average_gamma(a, b);
    CHECK(m.alpha(0) == 3.0);
    CHECK(m.alpha(1) == 6.0);
    CHECK(m.beta(0) == 200.0);
    CHECK(m.beta(1) == 300.0);

    const PropagationConstant c(FrequencyGrid({1e9, 3e9}), {2.0, 4.0}, {100.0, 200.0});
    CHECK_THROWS_AS(average_gamma(a, c), input_error);
}

TEST_CASE("gamma CSV round trip and unit conversions")
{
    const FrequencyGrid g({1e9, 10e9, 100e9});
    const PropagationConstant p(g, {1.5, 11.51292546497023, 40.0}, {200.0, 2000.0, 20000.0});
    const std::string csv = gamma_to_csv(p);

    std::istringstream head(csv);
    std::string first;
    std::getline(head, first);
    CHECK(first == "freq_hz,alpha_db_per_mm,beta_deg_per_mm");

    // 11.51292546497023 Np/m is exactly 0.1 dB/mm
    std::string second, third;
    std::getline(head, second);
    std::getline(head, third);
    double f, adb, bdeg;
    CHECK(std::sscanf(third.c_str(), "%lf,%lf,%lf", &f, &adb, &bdeg) == 3);
    CHECK(adb == doctest::Approx(0.1).epsilon(1e-12));

    std::istringstream back(csv);
    const PropagationConstant q = gamma_from_csv(back);
    CHECK(q.grid() == p.grid());
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(q.alpha(i) == doctest::Approx(p.alpha(i)).epsilon(1e-9));
        CHECK(q.beta(i) == doctest::Approx(p.beta(i)).epsilon(1e-9));
    }
}

TEST_CASE("gamma CSV rejects malformed input")
{
    auto parse = [](const std::string& text) {
        std::istringstream is(text);
        return gamma_from_csv(is);
    };
    CHECK_THROWS_AS(parse("wrong,header,names\n1e9,0.1,10\n"), input_error);
    CHECK_THROWS_AS(parse("freq_hz,alpha_db_per_mm,beta_deg_per_mm\n"), input_error);
    CHECK_THROWS_AS(parse("freq_hz,alpha_db_per_mm,beta_deg_per_mm\n1e9,0.1\n"), input_error);
    CHECK_THROWS_AS(parse("freq_hz,alpha_db_per_mm,beta_deg_per_mm\n1e9,x,10\n"), input_error);
    CHECK_THROWS_AS(gamma_from_csv_file("no_such.csv"), input_error);
}
