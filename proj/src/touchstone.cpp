#include "mwtk/touchstone.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mwtk/units.hpp"

namespace mwtk {

namespace {

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_ws(const std::string& line)
{
    std::vector<std::string> out;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

bool parse_double(const std::string& tok, double& out)
{
    const char* begin = tok.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + tok.size() && end != begin;
}

std::string fmt_num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

cplx value_from_pair(SFormat fmt, double a, double b)
{
    switch (fmt) {
    case SFormat::RI: return {a, b};
    case SFormat::MA: return std::polar(a, rad_from_deg(b));
    case SFormat::DB: return std::polar(mag_from_db(a), rad_from_deg(b));
    }
    return {};
}

void pair_from_value(SFormat fmt, const cplx& v, double& a, double& b)
{
    switch (fmt) {
    case SFormat::RI:
        a = v.real();
        b = v.imag();
        return;
    case SFormat::MA:
        a = std::abs(v);
        b = deg_from_rad(std::arg(v));
        return;
    case SFormat::DB: {
        const double mag = std::abs(v);
        a = mag > 0.0 ? std::max(db_from_mag(mag), -600.0) : -600.0;
        b = deg_from_rad(std::arg(v));
        return;
    }
    }
}

struct OptionLine {
    TouchstoneOptions opts;
    bool seen = false;
};

void parse_option_line(const std::vector<std::string>& toks, std::size_t lineno, OptionLine& o)
{
    if (o.seen)
        throw touchstone_error("multiple option lines", lineno);
    o.seen = true;
    for (std::size_t i = 1; i < toks.size(); ++i) {
        const std::string t = lower(toks[i]);
        if (t == "hz") o.opts.unit = FreqUnit::Hz;
        else if (t == "khz") o.opts.unit = FreqUnit::kHz;
        else if (t == "mhz") o.opts.unit = FreqUnit::MHz;
        else if (t == "ghz") o.opts.unit = FreqUnit::GHz;
        else if (t == "s") { /* scattering parameters, the only supported kind */ }
        else if (t == "y" || t == "z" || t == "h" || t == "g")
            throw touchstone_error("unsupported parameter type '" + toks[i] +
                                   "' (only S is supported)", lineno);
        else if (t == "ri") o.opts.format = SFormat::RI;
        else if (t == "ma") o.opts.format = SFormat::MA;
        else if (t == "db") o.opts.format = SFormat::DB;
        else if (t == "r") {
            if (i + 1 >= toks.size())
                throw touchstone_error("option line: R without a resistance value", lineno);
            double r = 0.0;
            if (!parse_double(toks[++i], r) || !(r > 0.0) || !std::isfinite(r))
                throw touchstone_error("option line: bad reference resistance '" + toks[i] + "'",
                                       lineno);
            o.opts.resistance = r;
        } else {
            throw touchstone_error("option line: unrecognized token '" + toks[i] + "'", lineno);
        }
    }
}

} // namespace

double freq_unit_scale(FreqUnit u)
{
    switch (u) {
    case FreqUnit::Hz: return 1.0;
    case FreqUnit::kHz: return 1e3;
    case FreqUnit::MHz: return 1e6;
    case FreqUnit::GHz: return 1e9;
    }
    return 1.0;
}

std::string freq_unit_name(FreqUnit u)
{
    switch (u) {
    case FreqUnit::Hz: return "Hz";
    case FreqUnit::kHz: return "kHz";
    case FreqUnit::MHz: return "MHz";
    case FreqUnit::GHz: return "GHz";
    }
    return "Hz";
}

std::string sformat_name(SFormat f)
{
    switch (f) {
    case SFormat::RI: return "RI";
    case SFormat::MA: return "MA";
    case SFormat::DB: return "DB";
    }
    return "MA";
}

SFormat sformat_from_name(const std::string& name)
{
    const std::string t = lower(name);
    if (t == "ri") return SFormat::RI;
    if (t == "ma") return SFormat::MA;
    if (t == "db") return SFormat::DB;
    throw input_error("unknown data format '" + name + "' (expected ri, ma or db)");
}

touchstone_error::touchstone_error(const std::string& msg, std::size_t line)
    : input_error("touchstone: line " + std::to_string(line) + ": " + msg), line_(line)
{
}

TouchstoneData parse_touchstone(std::istream& in)
{
    OptionLine opt;
    std::vector<double> freqs_raw;
    std::vector<std::vector<cplx>> rows;
    std::size_t values_per_row = 0;
    std::size_t lineno = 0;
    std::string line;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t bang = line.find('!');
        if (bang != std::string::npos) line.erase(bang);
        std::vector<std::string> toks = split_ws(line);
        if (toks.empty()) continue;

        if (toks[0][0] == '[')
            throw touchstone_error("keyword blocks are not supported (Touchstone v1 only)",
                                   lineno);
        if (toks[0][0] == '#') {
            if (toks[0].size() > 1) toks.insert(toks.begin() + 1, toks[0].substr(1));
            if (!rows.empty())
                throw touchstone_error("option line after data", lineno);
            parse_option_line(toks, lineno, opt);
            continue;
        }

        if (!opt.seen)
            throw touchstone_error("data before the option line", lineno);

        if (values_per_row == 0) {
            if (toks.size() != 3 && toks.size() != 9)
                throw touchstone_error("expected 3 (one-port) or 9 (two-port) values, got " +
                                       std::to_string(toks.size()), lineno);
            values_per_row = toks.size();
        } else if (toks.size() != values_per_row) {
            throw touchstone_error("expected " + std::to_string(values_per_row) +
                                   " values, got " + std::to_string(toks.size()), lineno);
        }

        std::vector<double> nums(toks.size());
        for (std::size_t i = 0; i < toks.size(); ++i)
            if (!parse_double(toks[i], nums[i]) || !std::isfinite(nums[i]))
                throw touchstone_error("bad number '" + toks[i] + "'", lineno);

        const double f = nums[0] * freq_unit_scale(opt.opts.unit);
        if (!(f > 0.0))
            throw touchstone_error("frequency must be > 0", lineno);
        if (!freqs_raw.empty() && f <= freqs_raw.back())
            throw touchstone_error("frequencies must be strictly ascending", lineno);
        freqs_raw.push_back(f);

        std::vector<cplx> vals;
        for (std::size_t i = 1; i + 1 < nums.size(); i += 2)
            vals.push_back(value_from_pair(opt.opts.format, nums[i], nums[i + 1]));
        rows.push_back(std::move(vals));
    }

    if (!opt.seen)
        throw touchstone_error("missing option line", lineno == 0 ? 1 : lineno);
    if (rows.empty())
        throw touchstone_error("no data lines", lineno == 0 ? 1 : lineno);

    TouchstoneData out;
    out.options = opt.opts;
    FrequencyGrid grid(freqs_raw);
    if (values_per_row == 3) {
        out.nports = 1;
        std::vector<cplx> gamma;
        gamma.reserve(rows.size());
        for (const auto& r : rows) gamma.push_back(r[0]);
        out.one_port.emplace(std::move(grid), std::move(gamma), opt.opts.resistance);
    } else {
        out.nports = 2;
        std::vector<Mat2> s;
        s.reserve(rows.size());
        // file order per point: S11 S21 S12 S22
        for (const auto& r : rows) s.push_back({r[0], r[2], r[1], r[3]});
        out.two_port.emplace(std::move(grid), std::move(s), opt.opts.resistance,
                             opt.opts.resistance);
    }
    return out;
}

TouchstoneData parse_touchstone(const std::string& text)
{
    std::istringstream iss(text);
    return parse_touchstone(iss);
}

TouchstoneData parse_touchstone_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw input_error("cannot open file: " + path);
    return parse_touchstone(f);
}

namespace {

std::string header(const TouchstoneOptions& options, double resistance,
                   const std::vector<std::string>& comments)
{
    std::string out;
    for (const std::string& c : comments) out += "! " + c + "\n";
    out += "# " + freq_unit_name(options.unit) + " S " + sformat_name(options.format) + " R " +
           fmt_num(resistance) + "\n";
    return out;
}

void append_pair(std::string& line, SFormat fmt, const cplx& v)
{
    double a = 0.0, b = 0.0;
    pair_from_value(fmt, v, a, b);
    line += " " + fmt_num(a) + " " + fmt_num(b);
}

} // namespace

std::string write_touchstone(const TwoPortNetwork& net, const TouchstoneOptions& options,
                             const std::vector<std::string>& comments)
{
    if (net.z_ref1() != net.z_ref2())
        throw input_error("touchstone: the format carries a single reference resistance; "
                          "renormalize to equal port references first");
    if (!net.all_valid())
        throw input_error("touchstone: network has flagged invalid points; "
                          "drop them before writing");
    const double scale = freq_unit_scale(options.unit);
    std::string out = header(options, net.z_ref1(), comments);
    for (std::size_t i = 0; i < net.size(); ++i) {
        std::string line = fmt_num(net.grid()[i] / scale);
        const Mat2& s = net.s(i);
        append_pair(line, options.format, s.m11);
        append_pair(line, options.format, s.m21);
        append_pair(line, options.format, s.m12);
        append_pair(line, options.format, s.m22);
        out += line + "\n";
    }
    return out;
}

std::string write_touchstone(const OnePortNetwork& net, const TouchstoneOptions& options,
                             const std::vector<std::string>& comments)
{
    const double scale = freq_unit_scale(options.unit);
    std::string out = header(options, net.z_ref(), comments);
    for (std::size_t i = 0; i < net.size(); ++i) {
        std::string line = fmt_num(net.grid()[i] / scale);
        append_pair(line, options.format, net[i]);
        out += line + "\n";
    }
    return out;
}

namespace {

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path);
    if (!f) throw input_error("cannot write file: " + path);
    f << text;
    f.close();
    if (!f) throw input_error("write failed: " + path);
}

} // namespace

void write_touchstone_file(const std::string& path, const TwoPortNetwork& net,
                           const TouchstoneOptions& options,
                           const std::vector<std::string>& comments)
{
    write_text_file(path, write_touchstone(net, options, comments));
}

void write_touchstone_file(const std::string& path, const OnePortNetwork& net,
                           const TouchstoneOptions& options,
                           const std::vector<std::string>& comments)
{
    write_text_file(path, write_touchstone(net, options, comments));
}

} // namespace mwtk
