#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mwtk/netcore.hpp"

namespace mwtk {

enum class FreqUnit { Hz, kHz, MHz, GHz };
enum class SFormat { RI, MA, DB };

double freq_unit_scale(FreqUnit u);
std::string freq_unit_name(FreqUnit u);
std::string sformat_name(SFormat f);
SFormat sformat_from_name(const std::string& name); // case-insensitive "ri"/"ma"/"db"

struct TouchstoneOptions {
    FreqUnit unit = FreqUnit::GHz;
    SFormat format = SFormat::MA;
    double resistance = 50.0;
};

// Parsed .s1p/.s2p content. Exactly one of one_port/two_port is set.
struct TouchstoneData {
    int nports = 0;
    TouchstoneOptions options;
    std::optional<OnePortNetwork> one_port;
    std::optional<TwoPortNetwork> two_port;
};

// Malformed file; the message names the offending line.
class touchstone_error : public input_error {
public:
    touchstone_error(const std::string& msg, std::size_t line);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

TouchstoneData parse_touchstone(std::istream& in);
TouchstoneData parse_touchstone(const std::string& text);
TouchstoneData parse_touchstone_file(const std::string& path);

// Data lines carry 2-port entries in the order S11 S21 S12 S22; angles in degrees.
// Port references must be equal (the format has a single R) and the emitted R is
// taken from the network, not from options. comments, if given, are emitted as
// leading '!' lines.
std::string write_touchstone(const TwoPortNetwork& net, const TouchstoneOptions& options = {},
                             const std::vector<std::string>& comments = {});
std::string write_touchstone(const OnePortNetwork& net, const TouchstoneOptions& options = {},
                             const std::vector<std::string>& comments = {});
void write_touchstone_file(const std::string& path, const TwoPortNetwork& net,
                           const TouchstoneOptions& options = {},
                           const std::vector<std::string>& comments = {});
void write_touchstone_file(const std::string& path, const OnePortNetwork& net,
                           const TouchstoneOptions& options = {},
                           const std::vector<std::string>& comments = {});

} // namespace mwtk
