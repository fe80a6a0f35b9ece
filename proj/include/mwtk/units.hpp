#pragma once

#include <cmath>
#include <numbers>

namespace mwtk {

// Physical constants (SI)
inline constexpr double kSpeedOfLight = 299792458.0;          // m/s
inline constexpr double kBoltzmann    = 1.380649e-23;         // J/K
inline constexpr double kMu0          = 4e-7 * std::numbers::pi; // H/m, non-magnetic media

// Wave-amplitude dB per neper: 20/ln(10)
inline constexpr double kDbPerNeper = 8.685889638065035;

inline double db_from_mag(double mag)   { return 20.0 * std::log10(mag); }
inline double mag_from_db(double db)    { return std::pow(10.0, db / 20.0); }
inline double db_from_power(double p)   { return 10.0 * std::log10(p); }
inline double power_from_db(double db)  { return std::pow(10.0, db / 10.0); }

inline double rad_from_deg(double deg)  { return deg * std::numbers::pi / 180.0; }
inline double deg_from_rad(double rad)  { return rad * 180.0 / std::numbers::pi; }

} // namespace mwtk
