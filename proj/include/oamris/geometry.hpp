// Scene geometry: element coordinates of the Alice/Bob/Eve UCAs and the RIS panel.
#pragma once

#include <Eigen/Dense>

namespace oamris {

// Positions and orientations of the three uniform circular arrays and the
// rectangular RIS. Alice's UCA center is pinned to the origin; Eve's center
// is derived from the (distance, theta, phi) direction parameters.
struct SceneGeometry {
    int n = 8;                 // UCA element count, shared by Alice/Bob/Eve
    double r_alice = 0.2;      // UCA radii [m]
    double r_bob = 0.2;
    double r_eve = 0.2;
    double alpha_alice = 0.0;  // first-element phase offsets [rad]
    double alpha_bob = 0.0;
    double alpha_eve = 0.0;
    Eigen::Vector3d bob_center{0.0, 0.0, 20.0};  // u_B [m]
    Eigen::Vector3d ris_center{2.0, 0.0, 20.0};  // u_R [m]
    double eve_distance = 10.0;  // Alice center -> Eve center [m]
    double eve_theta = 0.0;      // azimuth of the Alice->Eve line from the x-axis [rad]
    double eve_phi = 0.0;        // polar angle of the Alice->Eve line from the z-axis [rad]
    double eve_rot_x = 0.0;      // Eve attitude rotation about +x [rad]
    double eve_rot_y = 0.0;      // Eve attitude rotation about +y [rad]
    int ris_ny = 10;             // RIS elements along y
    int ris_nz = 15;             // RIS elements along z
    double ris_dy = 0.05;        // RIS element spacing along y [m]
    double ris_dz = 0.05;        // RIS element spacing along z [m]

    int ris_count() const { return ris_ny * ris_nz; }
    Eigen::Vector3d eve_center() const;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// Right-handed rotation matrices about +x and +y.
Eigen::Matrix3d rotation_x(double angle);
Eigen::Matrix3d rotation_y(double angle);

// Element coordinates. Indices are 1-based, matching the array numbering;
// out-of-range indices throw std::out_of_range.
Eigen::Vector3d alice_element(const SceneGeometry& g, int n);
Eigen::Vector3d bob_element(const SceneGeometry& g, int m);
Eigen::Vector3d eve_element(const SceneGeometry& g, int v);

// RIS element q in 1..Q with Q = ris_ny*ris_nz; the linear index runs over
// the y grid fastest, then z.
Eigen::Vector3d ris_element(const SceneGeometry& g, int q);

}  // namespace oamris
