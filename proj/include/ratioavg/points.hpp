#pragma once

#include <complex>
#include <numbers>
#include <random>

#include "ratioavg/closed_form.hpp"

namespace ratioavg {

/// Modulus ranges for random evaluation points; phases are uniform.
struct PointRanges {
    double x_min = 1.0, x_max = 1.0;
    double y_min = 0.0, y_max = 0.7;
};

inline std::complex<double> random_phase_point(std::mt19937_64& rng, double r_min, double r_max) {
    std::uniform_real_distribution<double> radius(r_min, r_max);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const double r = radius(rng);
    return std::polar(r, angle(rng));
}

inline TorusPoint random_torus_point(std::mt19937_64& rng, int p, int q, const PointRanges& ranges) {
    TorusPoint pt;
    for (int k = 0; k < p; ++k) pt.x.push_back(random_phase_point(rng, ranges.x_min, ranges.x_max));
    for (int l = 0; l < q; ++l) pt.y.push_back(random_phase_point(rng, ranges.y_min, ranges.y_max));
    return pt;
}

}  // namespace ratioavg
