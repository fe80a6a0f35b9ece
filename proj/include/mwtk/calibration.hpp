#pragma once

#include "mwtk/netcore.hpp"
#include "mwtk/tline.hpp"

namespace mwtk {

enum class ReflectKind { Short, Open };

// Raw (uncalibrated) thru-reflect-line measurements, all on one grid and one
// VNA reference impedance. delta_length is line length minus thru length.
struct TrlStandards {
    TwoPortNetwork thru;
    OnePortNetwork reflect_port1;
    OnePortNetwork reflect_port2;
    TwoPortNetwork line;
    double delta_length = 0.0; // m
    ReflectKind reflect_kind = ReflectKind::Short;
};

// Eight-term error model split into two cascade boxes:
// measured = port1 * dut * port2 in cascade-matrix form.
// The calibrated reference impedance is the (unknown) line characteristic
// impedance; the numeric z_ref carried over from the raw data is nominal only.
struct ErrorBoxes {
    TwoPortNetwork port1;
    TwoPortNetwork port2;
    PropagationConstant gamma_est;
    // Per-point conditioning: 0 near degenerate spots (thru ~ line, or line
    // electrical length within 20 deg of a multiple of 180 deg).
    std::vector<std::uint8_t> well_conditioned;
};

// Solve the eight-term model from TRL standards. The propagation constant
// comes from the eigenvalues of M_line * M_thru^-1; the reflect sign ambiguity
// is resolved by reflect_kind at the lowest frequency and tracked by
// continuity upward. With interpolate_flagged, error boxes at flagged points
// are rebuilt by linear interpolation from well-conditioned neighbors;
// otherwise they keep their (possibly noisy) solved values and hard failures
// stay flagged invalid.
ErrorBoxes trl_calibrate(const TrlStandards& std_meas, bool interpolate_flagged = false);

// Strip the error boxes off a raw measurement: dut = port1^-1 * raw * port2^-1.
TwoPortNetwork apply_cal(const ErrorBoxes& e, const TwoPortNetwork& raw);

// Shift reference planes outward by matched-line lengths l1 (port 1) and l2
// (port 2): S21 *= exp(+gamma*(l1+l2)), S11 *= exp(+2*gamma*l1), etc.
TwoPortNetwork deembed_line(const TwoPortNetwork& net, const PropagationConstant& gamma,
                            double l1_m, double l2_m);
// Inverse of deembed_line: add matched line back in front of the ports.
TwoPortNetwork embed_line(const TwoPortNetwork& net, const PropagationConstant& gamma,
                          double l1_m, double l2_m);

struct RippleReport {
    double spacing_hz = 0.0;        // average peak-to-peak period in frequency
    double implied_length_m = 0.0;  // c / (2 * spacing * sqrt(eps_r))
    std::size_t peak_count = 0;
    double amplitude = 0.0;         // half peak-to-peak of the detrended trace
};

// Dominant periodicity of the reflection trace at the given port (1 or 2),
// measured on the detrended in-phase component Re(S11)/Re(S22) so that a
// rotating constant-magnitude reflection still exposes its period. Throws
// numeric_error when fewer than three ripple peaks exist in the span.
RippleReport ripple_spacing_diagnostic(const TwoPortNetwork& net, int port, double eps_r);

// Half peak-to-peak of the detrended in-phase reflection; no periodicity needed.
double ripple_amplitude(const TwoPortNetwork& net, int port);

} // namespace mwtk
