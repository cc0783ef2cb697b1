#include "oamris/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace oamris {

namespace {

void check_index(int i, int hi, const char* what) {
    if (i < 1 || i > hi)
        throw std::out_of_range(std::string(what) + " index " + std::to_string(i) +
                                " outside 1.." + std::to_string(hi));
}

// Azimuthal angle of the i-th element (1-based) on an N-element UCA.
double azimuth(int i, int n, double alpha) {
    return 2.0 * std::numbers::pi * (i - 1) / n + alpha;
}

Eigen::Vector3d circle_point(double radius, double angle) {
    return {radius * std::cos(angle), radius * std::sin(angle), 0.0};
}

}  // namespace

Eigen::Matrix3d rotation_x(double angle) {
    return Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitX()).toRotationMatrix();
}

Eigen::Matrix3d rotation_y(double angle) {
    return Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitY()).toRotationMatrix();
}

Eigen::Vector3d SceneGeometry::eve_center() const {
    const double sp = std::sin(eve_phi);
    return eve_distance * Eigen::Vector3d(sp * std::cos(eve_theta), sp * std::sin(eve_theta),
                                          std::cos(eve_phi));
}

void SceneGeometry::validate() const {
    if (n < 2) throw std::invalid_argument("scene.n: UCA element count must be >= 2");
    if (r_alice <= 0.0) throw std::invalid_argument("scene.r_alice: radius must be > 0");
    if (r_bob <= 0.0) throw std::invalid_argument("scene.r_bob: radius must be > 0");
    if (r_eve <= 0.0) throw std::invalid_argument("scene.r_eve: radius must be > 0");
    if (eve_distance <= 0.0) throw std::invalid_argument("scene.eve_distance: must be > 0");
    if (ris_ny < 1) throw std::invalid_argument("scene.ris_ny: must be >= 1");
    if (ris_nz < 1) throw std::invalid_argument("scene.ris_nz: must be >= 1");
    if (ris_dy <= 0.0) throw std::invalid_argument("scene.ris_dy: must be > 0");
    if (ris_dz <= 0.0) throw std::invalid_argument("scene.ris_dz: must be > 0");
}

Eigen::Vector3d alice_element(const SceneGeometry& g, int n) {
    check_index(n, g.n, "alice element");
    return circle_point(g.r_alice, azimuth(n, g.n, g.alpha_alice));
}

Eigen::Vector3d bob_element(const SceneGeometry& g, int m) {
    check_index(m, g.n, "bob element");
    return g.bob_center + circle_point(g.r_bob, azimuth(m, g.n, g.alpha_bob));
}

Eigen::Vector3d eve_element(const SceneGeometry& g, int v) {
    check_index(v, g.n, "eve element");
    const Eigen::Vector3d local = circle_point(g.r_eve, azimuth(v, g.n, g.alpha_eve));
    return g.eve_center() + rotation_y(g.eve_rot_y) * rotation_x(g.eve_rot_x) * local;
}

Eigen::Vector3d ris_element(const SceneGeometry& g, int q) {
    check_index(q, g.ris_count(), "ris element");
    const int qy = (q - 1) % g.ris_ny + 1;  // y index runs fastest
    const int qz = (q - 1) / g.ris_ny + 1;
    const double off_y = g.ris_dy * (qy + (-1.0 - g.ris_ny) / 2.0);
    const double off_z = g.ris_dz * (qz + (-1.0 - g.ris_nz) / 2.0);
    return g.ris_center + Eigen::Vector3d(0.0, off_y, off_z);
}

}  // namespace oamris
