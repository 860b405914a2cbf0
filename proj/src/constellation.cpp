#include "amc/constellation.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "amc/rng.hpp"

namespace amc {

namespace {

ConstellationSet make_psk(const std::string& id, int m) {
    ConstellationSet c;
    c.format_id = id;
    c.cardinality = m;
    c.symbols.reserve(m);
    for (int k = 0; k < m; ++k) {
        double ang = 2.0 * kPi * k / m;
        c.symbols.emplace_back(std::cos(ang), std::sin(ang));
    }
    return c;
}

ConstellationSet make_qam16() {
    ConstellationSet c;
    c.format_id = "16QAM";
    c.cardinality = 16;
    // {+-1, +-3}^2 grid; mean |I|^2 over the grid is 10.
    const double scale = 1.0 / std::sqrt(10.0);
    for (int re = -3; re <= 3; re += 2)
        for (int im = -3; im <= 3; im += 2)
            c.symbols.emplace_back(re * scale, im * scale);
    return c;
}

ConstellationSet make_qam8() {
    ConstellationSet c;
    c.format_id = "8QAM";
    c.cardinality = 8;
    // Two-ring cross layout: 4 inner points on the diagonals, 4 outer points
    // on the axes with the outer radius set so all nearest-neighbor
    // distances are equal; radii then fixed by unit mean power.
    const double r1 = std::sqrt(2.0 / (3.0 + std::sqrt(3.0)));
    const double r2 = r1 * (1.0 + std::sqrt(3.0)) / std::sqrt(2.0);
    for (int k = 0; k < 4; ++k) {
        double ang = kPi / 4.0 + k * kPi / 2.0;
        c.symbols.emplace_back(r1 * std::cos(ang), r1 * std::sin(ang));
    }
    for (int k = 0; k < 4; ++k) {
        double ang = k * kPi / 2.0;
        c.symbols.emplace_back(r2 * std::cos(ang), r2 * std::sin(ang));
    }
    return c;
}

}  // namespace

ConstellationSet build_constellation(const std::string& format_id) {
    ConstellationSet c;
    if (format_id == "BPSK")
        c = make_psk("BPSK", 2);
    else if (format_id == "QPSK")
        c = make_psk("QPSK", 4);
    else if (format_id == "8PSK")
        c = make_psk("8PSK", 8);
    else if (format_id == "16PSK")
        c = make_psk("16PSK", 16);
    else if (format_id == "8QAM")
        c = make_qam8();
    else if (format_id == "16QAM")
        c = make_qam16();
    else
        throw std::invalid_argument("build_constellation: unsupported format_id '" + format_id + "'");

    double power = 0.0;
    for (const auto& s : c.symbols) power += std::norm(s);
    power /= c.cardinality;
    if (std::abs(power - 1.0) > 1e-12)
        throw std::runtime_error("build_constellation: alphabet '" + format_id + "' is not unit power");
    return c;
}

HypothesisSet build_hypothesis_set(const std::vector<std::string>& format_ids) {
    if (format_ids.empty()) throw std::invalid_argument("build_hypothesis_set: empty format list");
    std::set<std::string> seen;
    HypothesisSet h;
    for (const auto& id : format_ids) {
        if (!seen.insert(id).second)
            throw std::invalid_argument("build_hypothesis_set: duplicate format_id '" + id + "'");
        h.constellations.push_back(build_constellation(id));
    }
    return h;
}

}  // namespace amc
