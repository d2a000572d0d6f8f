#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ratioavg/closed_form.hpp"
#include "ratioavg/family.hpp"
#include "ratioavg/rng.hpp"

namespace ratioavg {

/// Haar-distributed group element. O and SO samples are real orthogonal;
/// USp samples are 2m x 2m complex with columns ordered (u_1..u_m, v_1..v_m)
/// so that u^T J u = J for J = [[0, I], [-I, 0]].
struct GroupElement {
    GroupSpec group;
    Eigen::MatrixXcd matrix;

    /// max |u^dagger u - Id|.
    double unitarity_residual() const;
    /// max |u^T J u - J| for USp, max |Im u| for O and SO.
    double structure_residual() const;
    std::complex<double> determinant() const;
    std::vector<std::complex<double>> eigenvalues() const;
};

/// Standard skew form on C^N, N even.
Eigen::MatrixXd symplectic_form(int N);

/// Draws one Haar sample from the stream. Throws DomainError for a bad group.
GroupElement sample(const GroupSpec& group, Philox4x32& stream);

/// Sample number `index` of the sequence keyed by `seed`.
GroupElement sample_at(const GroupSpec& group, std::uint64_t seed, std::uint64_t index);

/// Eigenvalues of a Haar sample, from the real Schur form for O and SO.
std::vector<std::complex<double>> spectrum(const GroupElement& u);

/// prod_k prod_a (1 - x_k l_a) / prod_l prod_a (1 - y_l l_a) over the spectrum.
std::complex<double> integrand(const TorusPoint& pt, std::span<const std::complex<double>> eigenvalues);
std::complex<double> integrand(const TorusPoint& pt, const GroupElement& u);

struct MCEstimate {
    std::complex<double> mean;
    double stderr_re = 0.0;
    double stderr_im = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Samples are reduced in fixed blocks of this size; block results are merged
/// in block order, so the estimate does not depend on the worker count.
inline constexpr std::uint64_t kMCBlock = 4096;

/// Monte Carlo estimate of the Haar average of the integrand at each point,
/// all points sharing one sample sequence. workers <= 0 selects the OpenMP default.
std::vector<MCEstimate> mc_estimate_batch(const GroupSpec& group, std::span<const TorusPoint> pts,
                                          std::uint64_t samples, std::uint64_t seed, int workers);

/// Single-threaded reference for mc_estimate_batch; bit-identical output.
std::vector<MCEstimate> mc_estimate_batch_serial(const GroupSpec& group, std::span<const TorusPoint> pts,
                                                 std::uint64_t samples, std::uint64_t seed);

MCEstimate mc_estimate(const GroupSpec& group, const TorusPoint& pt, std::uint64_t samples, std::uint64_t seed,
                       int workers);

/// Mean and standard error of an arbitrary per-sample statistic, with the same
/// block reduction as mc_estimate. Used for trace and determinant probes.
template <typename Statistic>
MCEstimate mc_statistic(const GroupSpec& group, std::uint64_t samples, std::uint64_t seed, int workers,
                        Statistic&& stat);

}  // namespace ratioavg

#include "ratioavg/detail/mc_reduce.hpp"
