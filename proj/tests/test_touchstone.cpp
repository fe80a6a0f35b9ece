#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mwtk/netcore.hpp"
#include "mwtk/touchstone.hpp"

using namespace mwtk;

namespace {

TwoPortNetwork random_net(std::mt19937& rng, std::size_t npoints)
{
    std::uniform_real_distribution<double> mag(0.01, 1.0);
    std::uniform_real_distribution<double> ph(-3.14, 3.14);
    std::vector<double> f(npoints);
    for (std::size_t i = 0; i < npoints; ++i) f[i] = 1e9 + 0.7e9 * static_cast<double>(i);
    std::vector<Mat2> s(npoints);
    for (auto& m : s) {
        m.m11 = std::polar(mag(rng), ph(rng));
        m.m12 = std::polar(mag(rng), ph(rng));
        m.m21 = std::polar(mag(rng), ph(rng));
        m.m22 = std::polar(mag(rng), ph(rng));
    }
    return {FrequencyGrid(f), s, 50.0, 50.0};
}

double max_rel_err(const TwoPortNetwork& a, const TwoPortNetwork& b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Mat2& ma = a.s(i);
        const Mat2& mb = b.s(i);
        const cplx da[4] = {ma.m11, ma.m12, ma.m21, ma.m22};
        const cplx db[4] = {mb.m11, mb.m12, mb.m21, mb.m22};
        for (int k = 0; k < 4; ++k)
            worst = std::max(worst, std::abs(da[k] - db[k]) / std::abs(da[k]));
    }
    return worst;
}

} // namespace

TEST_CASE("writer emits canonical text for a thru")
{
    const FrequencyGrid g({1e9, 2e9});
    const std::string text = write_touchstone(make_thru(g));
    CHECK(text == "# GHz S MA R 50\n"
                  "1 0 0 1 0 1 0 0 0\n"
                  "2 0 0 1 0 1 0 0 0\n");
}

TEST_CASE("writer honours unit, format, and comments")
{
    const FrequencyGrid g({1e9});
    const TouchstoneOptions opt{FreqUnit::MHz, SFormat::RI, 50.0};
    const std::string text = write_touchstone(make_thru(g), opt, {"made by hand"});
    CHECK(text == "! made by hand\n"
                  "# MHz S RI R 50\n"
                  "1000 0 0 1 0 1 0 0 0\n");
}

TEST_CASE("writer takes the resistance from the network itself")
{
    const FrequencyGrid g({1e9});
    const std::string text = write_touchstone(make_thru(g, 75.0));
    CHECK(text.find("# GHz S MA R 75") == 0);
}

TEST_CASE("dB columns with angle: worked magnitude")
{
    // -3.0103 dB at 90 degrees is magnitude 0.70711 straight up the imaginary axis
    const std::string text = "# Hz S DB R 50\n"
                             "1e8 -3.0103 90 0 0 0 0 0 0\n";
    const TouchstoneData d = parse_touchstone(text);
    REQUIRE(d.nports == 2);
    const cplx s11 = d.two_port->s(0).m11;
    CHECK(std::abs(s11.real()) < 1e-9);
    CHECK(s11.imag() == doctest::Approx(0.707106777656652).epsilon(1e-12));
}

TEST_CASE("data columns are S11 S21 S12 S22")
{
    const std::string text = "# GHz S RI R 50\n"
                             "1  0.1 0  0.5 0  0.25 0  0.2 0\n";
    const TouchstoneData d = parse_touchstone(text);
    const Mat2& s = d.two_port->s(0);
    CHECK(s.m11 == cplx{0.1, 0.0});
    CHECK(s.m21 == cplx{0.5, 0.0});   // second pair in the file
    CHECK(s.m12 == cplx{0.25, 0.0});  // third pair in the file
    CHECK(s.m22 == cplx{0.2, 0.0});

    // and the writer puts them back in the same order
    const std::string out = write_touchstone(*d.two_port,
                                             TouchstoneOptions{FreqUnit::GHz, SFormat::RI, 50.0});
    std::istringstream is(out);
    std::string header, line;
    std::getline(is, header);
    std::getline(is, line);
    std::istringstream ls(line);
    std::vector<double> v(9);
    for (auto& x : v) ls >> x;
    CHECK(v[3] == 0.5);   // S21 re
    CHECK(v[5] == 0.25);  // S12 re
}

TEST_CASE("round trip in all three formats stays within 1e-9 relative")
{
    std::mt19937 rng(99);
    const TwoPortNetwork net = random_net(rng, 100);
    for (SFormat fmt : {SFormat::RI, SFormat::MA, SFormat::DB}) {
        for (FreqUnit unit : {FreqUnit::Hz, FreqUnit::kHz, FreqUnit::MHz, FreqUnit::GHz}) {
            const TouchstoneOptions opt{unit, fmt, 50.0};
            const TouchstoneData back = parse_touchstone(write_touchstone(net, opt));
            REQUIRE(back.nports == 2);
            REQUIRE(back.two_port->size() == net.size());
            for (std::size_t i = 0; i < net.size(); ++i)
                CHECK(back.two_port->grid()[i] ==
                      doctest::Approx(net.grid()[i]).epsilon(1e-12));
            CHECK(max_rel_err(*back.two_port, net) < 1e-9);
        }
    }
}

TEST_CASE("one-port round trip")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> mag(0.05, 1.0);
    std::uniform_real_distribution<double> ph(-3.0, 3.0);
    std::vector<double> f{1e9, 3e9, 7e9};
    std::vector<cplx> gamma;
    for (std::size_t i = 0; i < f.size(); ++i) gamma.push_back(std::polar(mag(rng), ph(rng)));
    const OnePortNetwork net(FrequencyGrid(f), gamma, 50.0);

    for (SFormat fmt : {SFormat::RI, SFormat::MA, SFormat::DB}) {
        const TouchstoneData back =
            parse_touchstone(write_touchstone(net, TouchstoneOptions{FreqUnit::GHz, fmt, 50.0}));
        REQUIRE(back.nports == 1);
        for (std::size_t i = 0; i < f.size(); ++i) {
            CHECK(std::abs((*back.one_port)[i] - gamma[i]) / std::abs(gamma[i]) < 1e-9);
        }
    }
}

TEST_CASE("comments and blank lines are ignored, option line is case-insensitive")
{
    const std::string text = "! header comment\n"
                             "\n"
                             "# ghz s ri r 75\n"
                             "1 0 0 0.5 0 0.5 0 0 0 ! trailing comment\n"
                             "\n"
                             "2 0 0 0.4 0 0.4 0 0 0\n";
    const TouchstoneData d = parse_touchstone(text);
    CHECK(d.options.resistance == 75.0);
    CHECK(d.options.format == SFormat::RI);
    CHECK(d.two_port->z_ref1() == 75.0);
    CHECK(d.two_port->size() == 2);
    CHECK(d.two_port->grid()[1] == 2e9);
}

TEST_CASE("parser defaults follow the format specification")
{
    // no unit/format tokens: GHz, MA, R 50
    const TouchstoneData d = parse_touchstone("# S\n1 0 0 1 0 1 0 0 0\n");
    CHECK(d.options.unit == FreqUnit::GHz);
    CHECK(d.options.format == SFormat::MA);
    CHECK(d.options.resistance == 50.0);
    CHECK(d.two_port->grid()[0] == 1e9);
}

TEST_CASE("malformed files fail with the offending line number")
{
    auto line_of = [](const std::string& text) {
        try {
            parse_touchstone(text);
        } catch (const touchstone_error& e) {
            return e.line();
        }
        return std::size_t{0};
    };

    // data before any option line
    CHECK(line_of("1 0 0 1 0 1 0 0 0\n") == 1);
    // second option line
    CHECK(line_of("# GHz S MA R 50\n# GHz S RI R 50\n") == 2);
    // unsupported parameter type
    CHECK(line_of("# GHz Y MA R 50\n") == 1);
    // unknown token on the option line
    CHECK(line_of("# GHz S XX R 50\n") == 1);
    // v2 keyword
    CHECK(line_of("[Version] 2.0\n") == 1);
    // wrong column count
    CHECK(line_of("# GHz S MA R 50\n1 0 0 1 0\n") == 2);
    // non-numeric field
    CHECK(line_of("# GHz S MA R 50\n1 0 0 one 0 1 0 0 0\n") == 2);
    // non-ascending frequency
    CHECK(line_of("# GHz S MA R 50\n2 0 0 1 0 1 0 0 0\n1 0 0 1 0 1 0 0 0\n") == 3);
    // nonpositive frequency
    CHECK(line_of("# GHz S MA R 50\n0 0 0 1 0 1 0 0 0\n") == 2);
    // R without a value
    CHECK(line_of("# GHz S MA R\n") == 1);

    // the message itself names the line
    try {
        parse_touchstone("# GHz S MA R 50\n1 0 0 1 0\n");
        FAIL("expected touchstone_error");
    } catch (const touchstone_error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("empty data section is an error")
{
    CHECK_THROWS_AS(parse_touchstone("# GHz S MA R 50\n"), touchstone_error);
    CHECK_THROWS_AS(parse_touchstone("! only comments\n"), touchstone_error);
}

TEST_CASE("mixed port count is an error")
{
    CHECK_THROWS_AS(parse_touchstone("# GHz S MA R 50\n"
                                     "1 0 0 1 0 1 0 0 0\n"
                                     "2 0.5 0\n"),
                    touchstone_error);
}

TEST_CASE("writer refuses unequal references and invalid points")
{
    const FrequencyGrid g({1e9, 2e9});
    std::vector<Mat2> s(2, Mat2{0.0, 1.0, 1.0, 0.0});
    const TwoPortNetwork unequal(g, s, 50.0, 75.0);
    CHECK_THROWS_AS(write_touchstone(unequal), input_error);

    const cplx nan{std::nan(""), std::nan("")};
    std::vector<Mat2> sn = s;
    sn[1] = {nan, nan, nan, nan};
    const TwoPortNetwork flagged(g, sn, 50.0, 50.0, {1, 0});
    CHECK_THROWS_AS(write_touchstone(flagged), input_error);
}

TEST_CASE("file round trip through disk")
{
    std::mt19937 rng(3);
    const TwoPortNetwork net = random_net(rng, 20);
    const std::string path = "touchstone_roundtrip_test.s2p";
    write_touchstone_file(path, net, TouchstoneOptions{FreqUnit::GHz, SFormat::DB, 50.0});
    const TouchstoneData back = parse_touchstone_file(path);
    CHECK(max_rel_err(*back.two_port, net) < 1e-9);
    std::remove(path.c_str());
    CHECK_THROWS_AS(parse_touchstone_file("no_such_file.s2p"), input_error);
}
