// mwtk - two-port network toolkit command line front end
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mwtk/calibration.hpp"
#include "mwtk/errors.hpp"
#include "mwtk/linkbudget.hpp"
#include "mwtk/netcore.hpp"
#include "mwtk/tline.hpp"
#include "mwtk/touchstone.hpp"
#include "mwtk/transitions.hpp"
#include "mwtk/units.hpp"

namespace {

using nlohmann::json;

std::string fmt_num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string read_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw mwtk::input_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void emit(const std::string& out_path, const std::string& text)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw mwtk::input_error("cannot write file: " + out_path);
    f << text;
    f.close();
    if (!f) throw mwtk::input_error("write failed: " + out_path);
}

mwtk::TwoPortNetwork load_two_port(const std::string& path)
{
    const mwtk::TouchstoneData d = mwtk::parse_touchstone_file(path);
    if (d.nports != 2) throw mwtk::input_error(path + ": expected a 2-port file");
    return *d.two_port;
}

mwtk::OnePortNetwork load_one_port(const std::string& path)
{
    const mwtk::TouchstoneData d = mwtk::parse_touchstone_file(path);
    if (d.nports != 1) throw mwtk::input_error(path + ": expected a 1-port file");
    return *d.one_port;
}

// s-parameter files cannot carry per-point validity, so flagged points are
// dropped from the written grid (reported on stderr)
mwtk::TwoPortNetwork drop_invalid(const mwtk::TwoPortNetwork& net)
{
    if (net.all_valid()) return net;
    std::vector<double> hz;
    std::vector<mwtk::Mat2> s;
    for (std::size_t i = 0; i < net.size(); ++i) {
        if (!net.valid(i)) continue;
        hz.push_back(net.grid()[i]);
        s.push_back(net.s(i));
    }
    if (hz.empty())
        throw mwtk::numeric_error("all frequency points are flagged invalid; nothing to write");
    std::cerr << "note: dropped " << (net.size() - hz.size())
              << " flagged invalid point(s) from the output grid\n";
    return mwtk::TwoPortNetwork(mwtk::FrequencyGrid(std::move(hz)), std::move(s),
                                net.z_ref1(), net.z_ref2());
}

mwtk::FrequencyGrid parse_grid_flag(const std::string& text)
{
    double start = 0.0, stop = 0.0;
    long npoints = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%ld%c", &start, &stop, &npoints, &extra) != 3 ||
        npoints < 1)
        throw mwtk::input_error("bad --grid '" + text + "' (expected start:stop:npoints in GHz)");
    return mwtk::FrequencyGrid::linspace(start * 1e9, stop * 1e9,
                                         static_cast<std::size_t>(npoints));
}

struct IlSweep {
    double start = 0.0, stop = 0.0, step = 0.0;
};

IlSweep parse_il_sweep(const std::string& text)
{
    IlSweep s;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &s.start, &s.stop, &s.step, &extra) != 3)
        throw mwtk::input_error("bad --il-sweep '" + text +
                                "' (expected start:stop:step in dB)");
    return s;
}

std::string kv_table(const std::vector<std::pair<std::string, std::string>>& rows, bool as_json)
{
    if (!as_json) {
        std::string out = "name,value\n";
        for (const auto& [k, v] : rows) out += k + "," + v + "\n";
        return out;
    }
    json j = json::object();
    for (const auto& [k, v] : rows) {
        char* end = nullptr;
        const double num = std::strtod(v.c_str(), &end);
        if (end == v.c_str() + v.size() && !v.empty()) j[k] = num;
        else j[k] = v;
    }
    return j.dump(2) + "\n";
}

// ---- subcommand implementations ----

int cmd_convert(const std::string& in, const std::string& format, const std::string& unit,
                const std::string& out)
{
    const mwtk::TouchstoneData d = mwtk::parse_touchstone_file(in);
    mwtk::TouchstoneOptions opts = d.options;
    opts.format = mwtk::sformat_from_name(format);
    if (!unit.empty()) {
        std::string u = unit;
        for (char& c : u) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (u == "hz") opts.unit = mwtk::FreqUnit::Hz;
        else if (u == "khz") opts.unit = mwtk::FreqUnit::kHz;
        else if (u == "mhz") opts.unit = mwtk::FreqUnit::MHz;
        else if (u == "ghz") opts.unit = mwtk::FreqUnit::GHz;
        else throw mwtk::input_error("bad --unit '" + unit + "'");
    }
    const std::string text = d.nports == 2 ? mwtk::write_touchstone(*d.two_port, opts)
                                           : mwtk::write_touchstone(*d.one_port, opts);
    emit(out, text);
    return 0;
}

int cmd_gmax(const std::string& in, bool as_json, const std::string& out)
{
    const mwtk::TwoPortNetwork net = load_two_port(in);
    const mwtk::GainProfile g = mwtk::gmax(net);
    if (!as_json) {
        std::string text = "freq_hz,gmax_db,stable,flag\n";
        for (std::size_t i = 0; i < g.grid.size(); ++i) {
            const char* flag = g.defined[i] ? "ok" : (net.valid(i) ? "unilateral" : "invalid");
            text += fmt_num(g.grid[i]) + "," +
                    (g.defined[i] ? fmt_num(g.gmax_db[i]) : std::string("nan")) + "," +
                    (g.stable[i] ? "1" : "0") + "," + flag + "\n";
        }
        emit(out, text);
        return 0;
    }
    json rows = json::array();
    for (std::size_t i = 0; i < g.grid.size(); ++i) {
        json row;
        row["freq_hz"] = g.grid[i];
        if (g.defined[i]) row["gmax_db"] = g.gmax_db[i];
        else row["gmax_db"] = nullptr;
        row["stable"] = g.stable[i] != 0;
        row["flag"] = g.defined[i] ? "ok" : (net.valid(i) ? "unilateral" : "invalid");
        rows.push_back(row);
    }
    emit(out, rows.dump(2) + "\n");
    return 0;
}

int cmd_notch(const std::string& mode, double tau1_ps, double tau2_ps, double h_um,
              double pitch_um, double eps, int harmonics, bool as_json, const std::string& out)
{
    std::vector<std::pair<std::string, std::string>> rows;
    if (mode == "gsg-delay") {
        if (!(tau2_ps > 0.0)) throw mwtk::input_error("gsg-delay mode needs --tau2-ps > 0");
        const std::vector<double> f = mwtk::gsg_notch_harmonics(tau2_ps * 1e-12, harmonics);
        rows.emplace_back("notch_hz", fmt_num(f[0]));
        for (std::size_t k = 1; k < f.size(); ++k)
            rows.emplace_back("harmonic_" + std::to_string(k + 1) + "_hz", fmt_num(f[k]));
    } else if (mode == "gsg-pitch") {
        if (!(h_um > 0.0) || !(pitch_um > 0.0))
            throw mwtk::input_error("gsg-pitch mode needs --h-um and --pitch-um > 0");
        const mwtk::GsgGeometry g{h_um * 1e-6, pitch_um * 1e-6, eps};
        rows.emplace_back("pitch_notch_hz", fmt_num(mwtk::pitch_notch_estimate(g)));
    } else if (mode == "loop") {
        if (!(tau1_ps >= 0.0) || !(tau2_ps >= 0.0))
            throw mwtk::input_error("loop mode needs --tau1-ps and --tau2-ps");
        rows.emplace_back("loop_radiation_hz",
                          fmt_num(mwtk::loop_radiation_freq(tau1_ps * 1e-12, tau2_ps * 1e-12)));
    } else {
        throw mwtk::input_error("bad --mode '" + mode +
                                "' (expected gsg-delay, gsg-pitch or loop)");
    }
    emit(out, kv_table(rows, as_json));
    return 0;
}

int cmd_siw(double w_um, double d_um, double p_um, double eps, bool as_json,
            const std::string& out)
{
    const mwtk::SiwGeometry g{w_um * 1e-6, d_um * 1e-6, p_um * 1e-6, eps};
    const double w_eff = mwtk::siw_effective_width(g);
    std::vector<std::pair<std::string, std::string>> rows;
    rows.emplace_back("w_eff_m", fmt_num(w_eff));
    rows.emplace_back("f_cutoff_hz", fmt_num(mwtk::siw_te10_cutoff(w_eff, g.eps_r)));
    emit(out, kv_table(rows, as_json));
    return 0;
}

int cmd_model(const std::string& gsg_path, const std::string& stripline_path,
              const std::string& grid_flag, double z_ref, const std::string& format,
              double match_f0_ghz, double match_z0, double match_theta, int match_port,
              const std::string& out)
{
    if (gsg_path.empty() == stripline_path.empty())
        throw mwtk::input_error("pass exactly one of --gsg or --stripline");
    const mwtk::FrequencyGrid grid = parse_grid_flag(grid_flag);

    mwtk::TwoPortNetwork net =
        !gsg_path.empty()
            ? mwtk::gsg_model(mwtk::gsg_params_from_json_text(read_file(gsg_path)), grid, z_ref)
            : mwtk::stripline_transition_model(
                  mwtk::stripline_params_from_json_text(read_file(stripline_path)), grid, z_ref);

    if (match_f0_ghz > 0.0) {
        const double f0 = match_f0_ghz * 1e9;
        const bool have_z0 = match_z0 > 0.0, have_theta = match_theta >= 0.0;
        if (have_z0 != have_theta)
            throw mwtk::input_error("pass both --match-z0 and --match-theta, or neither "
                                    "to search for them");
        mwtk::SeriesLineMatch match{match_z0, match_theta, f0};
        if (!have_z0) {
            const mwtk::MatchDesign d = mwtk::design_series_match(net, f0);
            match = d.match;
            std::cerr << "series match: z0 = " << fmt_num(match.z0)
                      << " ohm, theta = " << fmt_num(match.theta_deg)
                      << " deg at " << fmt_num(f0) << " Hz; |S11| "
                      << fmt_num(d.unmatched_s11_mag) << " -> " << fmt_num(d.matched_s11_mag)
                      << "\n";
        }
        net = mwtk::apply_series_match(net, match, match_port);
    } else if (match_z0 > 0.0 || match_theta >= 0.0) {
        throw mwtk::input_error("--match-z0/--match-theta need --match-f0-ghz");
    }

    mwtk::TouchstoneOptions opts;
    opts.format = mwtk::sformat_from_name(format);
    emit(out, mwtk::write_touchstone(drop_invalid(net), opts));
    return 0;
}

mwtk::TrlStandards load_trl_manifest(const std::string& manifest_path)
{
    json j;
    try {
        j = json::parse(read_file(manifest_path));
    } catch (const json::parse_error& e) {
        throw mwtk::input_error("manifest: invalid json: " + std::string(e.what()));
    }
    if (!j.is_object()) throw mwtk::input_error("manifest: expected a json object");
    const std::vector<std::string> needed = {"thru", "line", "reflect_port1", "reflect_port2",
                                             "delta_length_m", "reflect_kind"};
    std::string missing;
    for (const auto& k : needed)
        if (!j.contains(k)) missing += (missing.empty() ? "" : ", ") + k;
    if (!missing.empty()) throw mwtk::input_error("manifest: missing keys: " + missing);

    const std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();
    auto resolve = [&](const std::string& key) {
        if (!j.at(key).is_string())
            throw mwtk::input_error("manifest: key '" + key + "' must be a file path string");
        std::filesystem::path p = j.at(key).get<std::string>();
        if (p.is_relative()) p = base / p;
        return p.string();
    };

    const std::string kind_text = j.at("reflect_kind").is_string()
                                      ? j.at("reflect_kind").get<std::string>()
                                      : std::string();
    mwtk::ReflectKind kind;
    if (kind_text == "short") kind = mwtk::ReflectKind::Short;
    else if (kind_text == "open") kind = mwtk::ReflectKind::Open;
    else throw mwtk::input_error("manifest: reflect_kind must be \"short\" or \"open\"");

    if (!j.at("delta_length_m").is_number())
        throw mwtk::input_error("manifest: delta_length_m must be a number");

    return mwtk::TrlStandards{load_two_port(resolve("thru")),
                              load_one_port(resolve("reflect_port1")),
                              load_one_port(resolve("reflect_port2")),
                              load_two_port(resolve("line")),
                              j.at("delta_length_m").get<double>(),
                              kind};
}

int cmd_trl(const std::string& manifest_path, const std::string& dut_path,
            const std::string& out, const std::string& gamma_out, bool interpolate_flagged,
            const std::string& format)
{
    const mwtk::TrlStandards standards = load_trl_manifest(manifest_path);
    const mwtk::ErrorBoxes boxes = mwtk::trl_calibrate(standards, interpolate_flagged);

    std::size_t flagged = 0;
    for (std::uint8_t c : boxes.well_conditioned)
        if (!c) ++flagged;
    if (flagged > 0)
        std::cerr << "note: " << flagged << " of " << boxes.well_conditioned.size()
                  << " frequency points flagged ill-conditioned\n";

    const mwtk::TwoPortNetwork dut = load_two_port(dut_path);
    const mwtk::TwoPortNetwork cal = mwtk::apply_cal(boxes, dut);

    mwtk::TouchstoneOptions opts;
    opts.format = mwtk::sformat_from_name(format);
    const std::vector<std::string> comments = {
        "TRL-calibrated data: reference impedance is the line characteristic impedance",
        "(unknown); the R value below is nominal, not a measured 50 ohm reference."};
    emit(out, mwtk::write_touchstone(drop_invalid(cal), opts, comments));
    if (!gamma_out.empty()) emit(gamma_out, mwtk::gamma_to_csv(boxes.gamma_est));
    return 0;
}

int cmd_deembed(const std::string& in, const std::string& gamma_path, double l1_mm,
                double l2_mm, double ripple_eps, int ripple_port, const std::string& format,
                const std::string& out)
{
    const mwtk::TwoPortNetwork net = load_two_port(in);
    const mwtk::PropagationConstant gamma = mwtk::gamma_from_csv_file(gamma_path);
    const mwtk::TwoPortNetwork shifted =
        mwtk::deembed_line(net, gamma, l1_mm * 1e-3, l2_mm * 1e-3);

    mwtk::TouchstoneOptions opts;
    opts.format = mwtk::sformat_from_name(format);
    emit(out, mwtk::write_touchstone(drop_invalid(shifted), opts));

    if (ripple_eps > 0.0) {
        // diagnostic table goes to stdout when the network itself went to a file
        std::vector<std::pair<std::string, std::string>> rows;
        try {
            const mwtk::RippleReport before =
                mwtk::ripple_spacing_diagnostic(net, ripple_port, ripple_eps);
            rows.emplace_back("spacing_before_hz", fmt_num(before.spacing_hz));
            rows.emplace_back("implied_length_before_m", fmt_num(before.implied_length_m));
        } catch (const mwtk::numeric_error&) {
            rows.emplace_back("spacing_before_hz", "none");
        }
        rows.emplace_back("amplitude_before", fmt_num(mwtk::ripple_amplitude(net, ripple_port)));
        try {
            const mwtk::RippleReport after =
                mwtk::ripple_spacing_diagnostic(shifted, ripple_port, ripple_eps);
            rows.emplace_back("spacing_after_hz", fmt_num(after.spacing_hz));
            rows.emplace_back("implied_length_after_m", fmt_num(after.implied_length_m));
        } catch (const mwtk::numeric_error&) {
            rows.emplace_back("spacing_after_hz", "none");
        }
        rows.emplace_back("amplitude_after",
                          fmt_num(mwtk::ripple_amplitude(shifted, ripple_port)));
        if (out.empty()) std::cout << "\n";
        std::cout << kv_table(rows, false);
    }
    return 0;
}

int cmd_linkbudget(const std::string& config_path, const std::string& il_sweep_flag,
                   bool sensitivity_only, bool as_json, const std::string& out)
{
    const mwtk::LinkBudgetConfig cfg =
        mwtk::link_config_from_json_text(read_file(config_path));
    if (sensitivity_only) {
        std::vector<std::pair<std::string, std::string>> rows;
        rows.emplace_back("sensitivity_bps_per_db", fmt_num(mwtk::sensitivity(cfg)));
        emit(out, kv_table(rows, as_json));
        return 0;
    }
    IlSweep sweep{0.0, 0.0, 1.0};
    if (!il_sweep_flag.empty()) sweep = parse_il_sweep(il_sweep_flag);
    const std::vector<mwtk::CapacityPoint> points =
        mwtk::capacity_sweep(cfg, sweep.start, sweep.stop, sweep.step);
    if (!as_json) {
        emit(out, mwtk::capacity_table_csv(points));
        return 0;
    }
    json rows = json::array();
    for (const mwtk::CapacityPoint& p : points) {
        json row;
        row["il_db"] = p.il_db;
        row["snr_db"] = mwtk::db_from_power(p.snr_linear);
        row["c_exact_bps"] = p.c_exact_bps;
        row["c_approx_bps"] = p.c_approx_bps;
        rows.push_back(row);
    }
    emit(out, rows.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mwtk: two-port network toolkit for chip-to-package transitions"};
    app.require_subcommand(1);

    // convert
    auto* convert = app.add_subcommand("convert", "rewrite a touchstone file in another format");
    std::string cv_in, cv_format = "ma", cv_unit, cv_out;
    convert->add_option("input", cv_in, "input .s1p/.s2p")->required();
    convert->add_option("--format", cv_format, "output data format: ri, ma or db");
    convert->add_option("--unit", cv_unit, "output frequency unit: hz, khz, mhz or ghz");
    convert->add_option("-o,--output", cv_out, "output path (default stdout)");

    // gmax
    auto* gm = app.add_subcommand("gmax", "maximum available/stable gain profile of a 2-port");
    std::string gm_in, gm_out;
    bool gm_json = false;
    gm->add_option("input", gm_in, "input .s2p")->required();
    gm->add_flag("--json", gm_json, "emit json instead of csv");
    gm->add_option("-o,--output", gm_out, "output path (default stdout)");

    // notch
    auto* nt = app.add_subcommand("notch", "closed-form notch/radiation frequency predictors");
    std::string nt_mode, nt_out;
    double nt_tau1 = -1.0, nt_tau2 = -1.0, nt_h = 0.0, nt_pitch = 0.0, nt_eps = 1.0;
    int nt_harmonics = 1;
    bool nt_json = false;
    nt->add_option("--mode", nt_mode, "gsg-delay, gsg-pitch or loop")->required();
    nt->add_option("--tau1-ps", nt_tau1, "signal-path delay, ps");
    nt->add_option("--tau2-ps", nt_tau2, "return-path delay, ps");
    nt->add_option("--h-um", nt_h, "footprint-to-footprint distance, um");
    nt->add_option("--pitch-um", nt_pitch, "bump pitch, um");
    nt->add_option("--eps", nt_eps, "relative permittivity");
    nt->add_option("--harmonics", nt_harmonics, "number of notch harmonics to report");
    nt->add_flag("--json", nt_json, "emit json instead of csv");
    nt->add_option("-o,--output", nt_out, "output path (default stdout)");

    // siw
    auto* sw = app.add_subcommand("siw", "via-fence waveguide effective width and TE10 cutoff");
    double sw_w = 0.0, sw_d = 0.0, sw_p = 0.0, sw_eps = 1.0;
    std::string sw_out;
    bool sw_json = false;
    sw->add_option("--w-um", sw_w, "via center-to-center width, um")->required();
    sw->add_option("--d-um", sw_d, "via diameter, um")->required();
    sw->add_option("--p-um", sw_p, "same-side via pitch, um")->required();
    sw->add_option("--eps", sw_eps, "fill permittivity")->required();
    sw->add_flag("--json", sw_json, "emit json instead of csv");
    sw->add_option("-o,--output", sw_out, "output path (default stdout)");

    // model
    auto* md = app.add_subcommand("model", "emit the s2p of a transition circuit model");
    std::string md_gsg, md_stripline, md_grid = "1:400:400", md_format = "ma", md_out;
    double md_zref = 50.0, md_f0 = 0.0, md_z0 = 0.0, md_theta = -1.0;
    int md_port = 1;
    md->add_option("--gsg", md_gsg, "gsg parameter json (keys z1, tau1, z2, tau2)");
    md->add_option("--stripline", md_stripline,
                   "stripline parameter json (keys c_pad, z_via, tau_via)");
    md->add_option("--grid", md_grid, "frequency sweep start:stop:npoints in GHz");
    md->add_option("--zref", md_zref, "port reference impedance, ohm");
    md->add_option("--format", md_format, "output data format: ri, ma or db");
    md->add_option("--match-f0-ghz", md_f0, "design/apply a series matching line at this frequency");
    md->add_option("--match-z0", md_z0, "matching line impedance, ohm (searched when omitted)");
    md->add_option("--match-theta", md_theta, "matching line electrical length at f0, deg");
    md->add_option("--match-port", md_port, "port the matching line is inserted at (1 or 2)");
    md->add_option("-o,--output", md_out, "output path (default stdout)");

    // trl
    auto* tr = app.add_subcommand("trl", "TRL-calibrate a raw DUT measurement");
    std::string tr_manifest, tr_dut, tr_out, tr_gamma, tr_format = "ma";
    bool tr_interp = false;
    tr->add_option("--manifest", tr_manifest,
                   "json manifest: thru, line, reflect_port1, reflect_port2, delta_length_m, "
                   "reflect_kind")
        ->required();
    tr->add_option("--dut", tr_dut, "raw DUT .s2p")->required();
    tr->add_option("-o,--output", tr_out, "calibrated .s2p path (default stdout)");
    tr->add_option("--gamma-out", tr_gamma, "write the estimated propagation constant csv here");
    tr->add_flag("--interpolate-flagged", tr_interp,
                 "interpolate error boxes across ill-conditioned points");
    tr->add_option("--format", tr_format, "output data format: ri, ma or db");

    // deembed
    auto* de = app.add_subcommand("deembed", "shift reference planes by known line lengths");
    std::string de_in, de_gamma, de_format = "ma", de_out;
    double de_l1 = 0.0, de_l2 = 0.0, de_eps = 0.0;
    int de_port = 1;
    de->add_option("input", de_in, "input .s2p")->required();
    de->add_option("--gamma", de_gamma, "propagation constant csv")->required();
    de->add_option("--l1-mm", de_l1, "line length removed at port 1, mm");
    de->add_option("--l2-mm", de_l2, "line length removed at port 2, mm");
    de->add_option("--ripple-eps", de_eps,
                   "report reflection-ripple spacing before/after using this eps_r");
    de->add_option("--ripple-port", de_port, "port for the ripple report (1 or 2)");
    de->add_option("--format", de_format, "output data format: ri, ma or db");
    de->add_option("-o,--output", de_out, "output path (default stdout)");

    // linkbudget
    auto* lb = app.add_subcommand("linkbudget", "SNR/capacity tables and loss sensitivity");
    std::string lb_config, lb_sweep, lb_out;
    bool lb_sens = false, lb_json = false;
    lb->add_option("--config", lb_config, "link budget json config")->required();
    lb->add_option("--il-sweep", lb_sweep, "interface loss sweep start:stop:step in dB");
    lb->add_flag("--sensitivity", lb_sens, "report the closed-form capacity sensitivity only");
    lb->add_flag("--json", lb_json, "emit json instead of csv");
    lb->add_option("-o,--output", lb_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (convert->parsed()) return cmd_convert(cv_in, cv_format, cv_unit, cv_out);
        if (gm->parsed()) return cmd_gmax(gm_in, gm_json, gm_out);
        if (nt->parsed())
            return cmd_notch(nt_mode, nt_tau1, nt_tau2, nt_h, nt_pitch, nt_eps, nt_harmonics,
                             nt_json, nt_out);
        if (sw->parsed()) return cmd_siw(sw_w, sw_d, sw_p, sw_eps, sw_json, sw_out);
        if (md->parsed())
            return cmd_model(md_gsg, md_stripline, md_grid, md_zref, md_format, md_f0, md_z0,
                             md_theta, md_port, md_out);
        if (tr->parsed())
            return cmd_trl(tr_manifest, tr_dut, tr_out, tr_gamma, tr_interp, tr_format);
        if (de->parsed())
            return cmd_deembed(de_in, de_gamma, de_l1, de_l2, de_eps, de_port, de_format,
                               de_out);
        if (lb->parsed()) return cmd_linkbudget(lb_config, lb_sweep, lb_sens, lb_json, lb_out);
    } catch (const mwtk::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mwtk::numeric_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
