#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "ratioavg/closed_form.hpp"
#include "ratioavg/family.hpp"

namespace ratioavg {

/// Gauss-Legendre rule on [a, b].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point rule by Newton iteration on P_n; exact for polynomials of degree 2n - 1.
QuadratureRule gauss_legendre(int n, double a, double b);

/// Supported: SO_2, SO_3, SO_4, O_2, O_3, USp_2, USp_4.
struct QuadSpec {
    Family family = Family::SO;
    int N = 2;
    int nodes = 128;  ///< per angle
};

bool quad_supported(Family family, int N);

/// Function of the spectrum of a group element.
using SpectralFunction = std::function<std::complex<double>(std::span<const std::complex<double>>)>;

/// Haar average of f via the Weyl integration formula. Each connected
/// component's density is normalized numerically on the same nodes.
/// Throws UnsupportedGroup outside the supported list.
std::complex<double> quad_integrate(const QuadSpec& spec, const SpectralFunction& f);
std::complex<double> quad_integrate_serial(const QuadSpec& spec, const SpectralFunction& f);

/// Haar average of the characteristic-polynomial ratio at pt.
std::complex<double> quad_average(const QuadSpec& spec, const TorusPoint& pt);
std::complex<double> quad_average_serial(const QuadSpec& spec, const TorusPoint& pt);

}  // namespace ratioavg
