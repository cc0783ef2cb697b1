#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oamris/channel.hpp"

using namespace oamris;
using Eigen::Vector3d;

TEST_CASE("los coefficient at reference distances") {
    ChannelParams params;
    params.beta = 1.0;
    params.wavelength = 0.1;
    const Vector3d origin(0, 0, 0);

    const auto at = [&](double d) { return los_coefficient(origin, Vector3d(0, 0, d), params); };
    const std::complex<double> h1 = at(params.wavelength);
    CHECK(h1.real() == doctest::Approx(1.0 / (4 * std::numbers::pi)).epsilon(1e-12));
    CHECK(h1.imag() == doctest::Approx(0.0));

    const std::complex<double> h2 = at(2 * params.wavelength);
    CHECK(h2.real() == doctest::Approx(1.0 / (8 * std::numbers::pi)).epsilon(1e-12));

    const std::complex<double> h3 = at(params.wavelength / 2);
    CHECK(h3.real() == doctest::Approx(-1.0 / (2 * std::numbers::pi)).epsilon(1e-12));
    CHECK(std::abs(h3.imag()) < 1e-12);
}

TEST_CASE("los magnitude, phase, and beta scaling") {
    ChannelParams params;
    params.beta = 2.5;
    params.wavelength = 0.1;
    const Vector3d a(0.1, -0.2, 0.0), b(1.0, 2.0, 17.0);
    const double d = (b - a).norm();
    const std::complex<double> h = los_coefficient(a, b, params);
    CHECK(std::abs(h) ==
          doctest::Approx(params.beta * params.wavelength / (4 * std::numbers::pi * d))
              .epsilon(1e-12));
    const double expected_phase =
        std::remainder(-2 * std::numbers::pi * d / params.wavelength, 2 * std::numbers::pi);
    CHECK(std::remainder(std::arg(h) - expected_phase, 2 * std::numbers::pi) ==
          doctest::Approx(0.0).epsilon(1e-9));

    ChannelParams unit = params;
    unit.beta = 1.0;
    const std::complex<double> h_unit = los_coefficient(a, b, unit);
    CHECK(std::abs(h - params.beta * h_unit) < 1e-15);

    // reciprocity: the coefficient only depends on the distance
    CHECK(los_coefficient(b, a, params) == h);
}

TEST_CASE("coincident elements are a degenerate geometry") {
    const Vector3d p(1, 2, 3);
    CHECK_THROWS_AS((void)los_coefficient(p, p, ChannelParams{}), std::domain_error);
}

TEST_CASE("coaxial aligned UCAs give a circulant direct channel") {
    const SceneGeometry g;  // Alice at origin, Bob at [0,0,20], same radii/offsets
    const ChannelSet ch = build_channels_serial(g, ChannelParams{});
    const int n = g.n;
    double worst = 0.0;
    for (int m = 0; m < n; ++m)
        for (int c = 0; c < n; ++c)
            for (int s = 1; s < n; ++s)
                worst = std::max(worst,
                                 std::abs(ch.h_ab(m, c) - ch.h_ab((m + s) % n, (c + s) % n)));
    CHECK(worst < 1e-12);
}

TEST_CASE("matrix shapes follow the scene") {
    SceneGeometry g;
    g.ris_ny = 1;
    g.ris_nz = 1;
    const ChannelSet ch = build_channels_serial(g, ChannelParams{});
    CHECK(ch.h_ar.rows() == 1);
    CHECK(ch.h_ar.cols() == g.n);
    CHECK(ch.h_rb.rows() == g.n);
    CHECK(ch.h_rb.cols() == 1);
    CHECK(ch.n() == g.n);
    CHECK(ch.q() == 1);

    const ChannelSet no_ris = ch.without_ris();
    CHECK(no_ris.q() == 0);
    CHECK(no_ris.h_ab == ch.h_ab);
}

TEST_CASE("openmp build matches the serial reference bit-exactly") {
    SceneGeometry g;
    g.ris_ny = 6;
    g.ris_nz = 7;
    const ChannelParams params;
    const ChannelSet a = build_channels(g, params);
    const ChannelSet b = build_channels_serial(g, params);
    CHECK(a.h_ab == b.h_ab);
    CHECK(a.h_ar == b.h_ar);
    CHECK(a.h_rb == b.h_rb);
    CHECK(a.h_ae == b.h_ae);
    CHECK(a.h_re == b.h_re);

    const ChannelSet c = build_channels(g, params);  // deterministic
    CHECK(a.h_re == c.h_re);
}

TEST_CASE("channel csv dump carries every entry") {
    SceneGeometry g;
    g.n = 2;
    g.ris_ny = 1;
    g.ris_nz = 1;
    const ChannelSet ch = build_channels_serial(g, ChannelParams{});
    std::ostringstream out;
    write_channel_csv(ch, out);
    const std::string text = out.str();
    CHECK(text.rfind("matrix,row,col,re,im\n", 0) == 0);
    // 4 + 2 + 2 + 4 + 2 entries plus the header
    int lines = 0;
    for (char c : text) lines += c == '\n';
    CHECK(lines == 1 + 14);
}
