#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "mwtk/errors.hpp"

namespace mwtk {

using cplx = std::complex<double>;

// 2x2 complex matrix, [m11 m12; m21 m22]
struct Mat2 {
    cplx m11{}, m12{}, m21{}, m22{};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    cplx det() const { return m11 * m22 - m12 * m21; }
    Mat2 operator*(const Mat2& o) const;
    Mat2 operator+(const Mat2& o) const;
    Mat2 operator*(const cplx& k) const { return {m11 * k, m12 * k, m21 * k, m22 * k}; }
    // Inverse; ok=false when the matrix is numerically singular (result is garbage then).
    Mat2 inverse(bool& ok) const;
    bool finite() const;
};

// Strictly ascending positive frequency points, Hz.
class FrequencyGrid {
public:
    explicit FrequencyGrid(std::vector<double> hz);
    static FrequencyGrid linspace(double start_hz, double stop_hz, std::size_t npoints);

    std::size_t size() const { return hz_.size(); }
    double operator[](std::size_t i) const { return hz_[i]; }
    const std::vector<double>& hz() const { return hz_; }
    double front() const { return hz_.front(); }
    double back() const { return hz_.back(); }

    bool operator==(const FrequencyGrid& o) const { return hz_ == o.hz_; }
    bool operator!=(const FrequencyGrid& o) const { return !(*this == o); }

private:
    std::vector<double> hz_;
};

// Frequency-swept 2x2 S-parameter block with real reference impedances per port.
// Points where an operation was degenerate carry valid(i)==false and NaN data;
// validity propagates through every network operation.
class TwoPortNetwork {
public:
    TwoPortNetwork(FrequencyGrid grid, std::vector<Mat2> s, double z_ref1, double z_ref2);
    TwoPortNetwork(FrequencyGrid grid, std::vector<Mat2> s, double z_ref1, double z_ref2,
                   std::vector<std::uint8_t> valid);

    const FrequencyGrid& grid() const { return grid_; }
    std::size_t size() const { return s_.size(); }
    const Mat2& s(std::size_t i) const { return s_[i]; }
    const std::vector<Mat2>& s() const { return s_; }
    double z_ref1() const { return z_ref1_; }
    double z_ref2() const { return z_ref2_; }

    bool valid(std::size_t i) const { return valid_[i] != 0; }
    const std::vector<std::uint8_t>& valid() const { return valid_; }
    bool all_valid() const;
    std::vector<std::size_t> invalid_points() const;

    // S matrix at an exact grid frequency (input_error if absent).
    const Mat2& s_at(double f_hz) const;
    // Entry-wise linear interpolation inside the grid span (input_error outside).
    Mat2 s_interp(double f_hz) const;

private:
    FrequencyGrid grid_;
    std::vector<Mat2> s_;
    double z_ref1_, z_ref2_;
    std::vector<std::uint8_t> valid_;
};

// One-port reflection sweep (e.g. a reflect standard).
class OnePortNetwork {
public:
    OnePortNetwork(FrequencyGrid grid, std::vector<cplx> gamma, double z_ref);

    const FrequencyGrid& grid() const { return grid_; }
    std::size_t size() const { return gamma_.size(); }
    cplx operator[](std::size_t i) const { return gamma_[i]; }
    const std::vector<cplx>& gamma() const { return gamma_; }
    double z_ref() const { return z_ref_; }

private:
    FrequencyGrid grid_;
    std::vector<cplx> gamma_;
    double z_ref_;
};

TwoPortNetwork make_network(FrequencyGrid grid, std::vector<Mat2> s,
                            double z_ref1, double z_ref2);
// Ideal thru: S11=S22=0, S21=S12=1 at every point.
TwoPortNetwork make_thru(const FrequencyGrid& grid, double z_ref = 50.0);

// ABCD (chain) sweep. Defined only for equal port reference impedances.
struct AbcdSweep {
    FrequencyGrid grid;
    std::vector<Mat2> abcd;
    double z_ref;                      // reference the originating S-data used
    std::vector<std::uint8_t> valid;
};

// Impedance-matrix sweep.
struct ZSweep {
    FrequencyGrid grid;
    std::vector<Mat2> z;
    double z_ref1, z_ref2;
    std::vector<std::uint8_t> valid;
};

AbcdSweep s_to_abcd(const TwoPortNetwork& net);
TwoPortNetwork abcd_to_s(const AbcdSweep& sweep, double z_ref);
TwoPortNetwork abcd_to_s(const FrequencyGrid& grid, const std::vector<Mat2>& abcd, double z_ref);

ZSweep s_to_z(const TwoPortNetwork& net);
TwoPortNetwork z_to_s(const ZSweep& sweep);

// Wave cascade (transfer) matrix [b1;a1] = T [a2;b2]. ok=false when S21==0 / T22==0.
Mat2 s_to_t(const Mat2& s, bool& ok);
Mat2 t_to_s(const Mat2& t, bool& ok);

// a's port 2 feeding b's port 1; the junction reference impedances must match.
TwoPortNetwork cascade(const TwoPortNetwork& a, const TwoPortNetwork& b);
// Series-series interconnection: Z_total = Z_a + Z_b.
TwoPortNetwork series_connect(const TwoPortNetwork& a, const TwoPortNetwork& b);
// Re-reference the S data to new (real, positive) port impedances.
TwoPortNetwork renormalize(const TwoPortNetwork& net, double new_z_ref1, double new_z_ref2);

struct StabilityProfile {
    FrequencyGrid grid;
    std::vector<double> k;            // Rollett stability factor
    std::vector<double> delta_mag;    // |S11*S22 - S12*S21|
    std::vector<std::uint8_t> defined; // false where |S12*S21| == 0 or input invalid
};

struct GainProfile {
    FrequencyGrid grid;
    std::vector<double> gmax_db;      // MAG where k>=1, MSG where k<1; NaN where undefined
    std::vector<std::uint8_t> stable;  // k >= 1
    std::vector<std::uint8_t> defined; // false -> unilateral (|S12*S21|==0) or invalid input
};

StabilityProfile stability_k(const TwoPortNetwork& net);
GainProfile gmax(const TwoPortNetwork& net);

} // namespace mwtk
