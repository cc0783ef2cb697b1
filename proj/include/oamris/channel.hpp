// Line-of-sight channel synthesis between array elements.
#pragma once

#include <complex>
#include <iosfwd>

#include <Eigen/Dense>

#include "oamris/geometry.hpp"

namespace oamris {

struct ChannelParams {
    double beta = 1.0;        // dimensionless attenuation scalar
    double wavelength = 0.1;  // carrier wavelength [m]

    void validate() const;
};

// The five LoS channel matrices. Row index is always the receive element,
// column index the transmit element.
struct ChannelSet {
    Eigen::MatrixXcd h_ab;  // N x N, Alice -> Bob
    Eigen::MatrixXcd h_ar;  // Q x N, Alice -> RIS
    Eigen::MatrixXcd h_rb;  // N x Q, RIS -> Bob
    Eigen::MatrixXcd h_ae;  // N x N, Alice -> Eve
    Eigen::MatrixXcd h_re;  // N x Q, RIS -> Eve

    int n() const { return static_cast<int>(h_ab.rows()); }
    int q() const { return static_cast<int>(h_ar.rows()); }

    // Copy with the RIS removed (Q = 0); reflected-path products vanish.
    ChannelSet without_ris() const;
};

// Free-space spherical-wave coefficient between two points.
// Coincident points are a degenerate geometry and throw std::domain_error.
std::complex<double> los_coefficient(const Eigen::Vector3d& tx, const Eigen::Vector3d& rx,
                                     const ChannelParams& params);

// Entrywise synthesis of all five matrices. The OpenMP build and the serial
// reference evaluate identical per-entry expressions, so results are
// bit-exact equal.
ChannelSet build_channels(const SceneGeometry& g, const ChannelParams& params);
ChannelSet build_channels_serial(const SceneGeometry& g, const ChannelParams& params);

// Debug dump: one line per entry as "matrix,row,col,re,im".
void write_channel_csv(const ChannelSet& ch, std::ostream& out);

}  // namespace oamris
