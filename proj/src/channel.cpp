#include "oamris/channel.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace oamris {

void ChannelParams::validate() const {
    if (beta <= 0.0) throw std::invalid_argument("channel.beta: must be > 0");
    if (wavelength <= 0.0) throw std::invalid_argument("channel.wavelength: must be > 0");
}

ChannelSet ChannelSet::without_ris() const {
    ChannelSet out;
    out.h_ab = h_ab;
    out.h_ae = h_ae;
    out.h_ar = Eigen::MatrixXcd(0, n());
    out.h_rb = Eigen::MatrixXcd(n(), 0);
    out.h_re = Eigen::MatrixXcd(n(), 0);
    return out;
}

std::complex<double> los_coefficient(const Eigen::Vector3d& tx, const Eigen::Vector3d& rx,
                                     const ChannelParams& params) {
    const double d = (rx - tx).norm();
    if (d == 0.0) throw std::domain_error("los_coefficient: coincident tx/rx elements");
    const double amp = params.beta * params.wavelength / (4.0 * std::numbers::pi * d);
    const double phase = -2.0 * std::numbers::pi * d / params.wavelength;
    return std::polar(amp, phase);
}

namespace {

// Element positions are precomputed once; each matrix entry is then an
// independent evaluation, so the parallel fill is bit-exact equal to the
// serial one.
struct ElementCache {
    std::vector<Eigen::Vector3d> alice, bob, eve, ris;

    explicit ElementCache(const SceneGeometry& g) {
        alice.reserve(g.n);
        bob.reserve(g.n);
        eve.reserve(g.n);
        ris.reserve(g.ris_count());
        for (int i = 1; i <= g.n; ++i) {
            alice.push_back(alice_element(g, i));
            bob.push_back(bob_element(g, i));
            eve.push_back(eve_element(g, i));
        }
        for (int q = 1; q <= g.ris_count(); ++q) ris.push_back(ris_element(g, q));
    }
};

void fill(Eigen::MatrixXcd& m, const std::vector<Eigen::Vector3d>& rx,
          const std::vector<Eigen::Vector3d>& tx, const ChannelParams& params, bool parallel) {
    const int rows = static_cast<int>(rx.size());
    const int cols = static_cast<int>(tx.size());
    m.resize(rows, cols);
#pragma omp parallel for collapse(2) if (parallel)
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) m(r, c) = los_coefficient(tx[c], rx[r], params);
}

ChannelSet build(const SceneGeometry& g, const ChannelParams& params, bool parallel) {
    g.validate();
    params.validate();
    const ElementCache e(g);
    ChannelSet ch;
    fill(ch.h_ab, e.bob, e.alice, params, parallel);
    fill(ch.h_ar, e.ris, e.alice, params, parallel);
    fill(ch.h_rb, e.bob, e.ris, params, parallel);
    fill(ch.h_ae, e.eve, e.alice, params, parallel);
    fill(ch.h_re, e.eve, e.ris, params, parallel);
    return ch;
}

void dump(std::ostream& out, const char* name, const Eigen::MatrixXcd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            out << name << ',' << r << ',' << c << ',' << m(r, c).real() << ','
                << m(r, c).imag() << '\n';
}

}  // namespace

ChannelSet build_channels(const SceneGeometry& g, const ChannelParams& params) {
    return build(g, params, true);
}

ChannelSet build_channels_serial(const SceneGeometry& g, const ChannelParams& params) {
    return build(g, params, false);
}

void write_channel_csv(const ChannelSet& ch, std::ostream& out) {
    out << "matrix,row,col,re,im\n";
    dump(out, "h_ab", ch.h_ab);
    dump(out, "h_ar", ch.h_ar);
    dump(out, "h_rb", ch.h_rb);
    dump(out, "h_ae", ch.h_ae);
    dump(out, "h_re", ch.h_re);
}

}  // namespace oamris
