#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ratioavg/family.hpp"

namespace ratioavg {

/// Evaluation point: x_k = e^{-i psi_k} (numerator), y_l = e^{-phi_l}
/// (denominator, strictly inside the unit disk).
struct TorusPoint {
    std::vector<std::complex<double>> x;
    std::vector<std::complex<double>> y;

    int p() const { return static_cast<int>(x.size()); }
    int q() const { return static_cast<int>(y.size()); }

    /// Throws DomainError if some |y_l| >= 1, some x_k = 0, or an entry is not finite.
    void validate() const;
};

struct EvalResult {
    std::complex<double> value;
    /// Set when a near-singular term denominator forced the extrapolated evaluation.
    bool regularized = false;
    /// Largest reciprocal (relative) denominator magnitude met in the terms used.
    double condition_estimate = 0.0;
};

/// Relative threshold below which a term denominator counts as degenerate.
inline constexpr double kDegenerateTolerance = 1e-8;

/// True iff the closed form is asserted for this (family, N, p, q):
/// q - p <= N + 1 for USp, q - p <= N - 1 for SO and O.
bool in_validity_range(Family family, int N, int p, int q);

/// Haar average of prod_k Det(1 - x_k u) / prod_l Det(1 - y_l u) over the
/// family's group, evaluated from the sign-configuration sum.
///
/// Throws DomainError for a bad point or group, RangeViolation outside the
/// validity range, DegenerateConfiguration if the extrapolation fails.
EvalResult ratio_average(Family family, int N, const TorusPoint& pt);

/// Character chi = sum over cosets of e^{w(lambda_N)} prod_beta (1 - e^{-w beta})
/// / prod_alpha (1 - e^{-w alpha}) at logarithmic coordinates (psi, phi),
/// Re phi_j > 0. Half-integer exponentials are taken from psi, phi directly.
/// Family O or USp, psi.size() == phi.size() == n.
EvalResult character_chi(Family family, int N, std::span<const std::complex<double>> psi,
                         std::span<const std::complex<double>> phi);

/// e^{lambda_N} at (psi, phi).
std::complex<double> highest_weight_exponential(int N, std::span<const std::complex<double>> psi,
                                                std::span<const std::complex<double>> phi);

/// SO_N average assembled from two O_N averages: the second at x_1 -> 1/x_1,
/// weighted by (-1)^N x_1^N. Requires p >= 1.
EvalResult so_from_o(int N, const TorusPoint& pt);

/// x = e^{-i psi}, y = e^{-phi}.
TorusPoint torus_point_from_logs(std::span<const std::complex<double>> psi,
                                 std::span<const std::complex<double>> phi);

}  // namespace ratioavg
