#include "ratioavg/haar.hpp"

#include <algorithm>
#include <cmath>

#include "ratioavg/error.hpp"

namespace ratioavg {

namespace {

using cplx = std::complex<double>;

Eigen::MatrixXd orthogonal_sample(int N, Philox4x32& stream) {
    Eigen::MatrixXd g(N, N);
    for (int c = 0; c < N; ++c)
        for (int r = 0; r < N; ++r) g(r, c) = stream.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const auto& r = qr.matrixQR();
    // Fix the QR phase ambiguity so that Q is Haar distributed.
    for (int i = 0; i < N; ++i)
        if (r(i, i) < 0.0) q.col(i) = -q.col(i);
    return q;
}

// Structure-preserving Gram-Schmidt: each Gaussian column u_k comes with its
// partner v_k = -J conj(u_k); two orthogonalization passes per column.
Eigen::MatrixXcd symplectic_sample(int N, Philox4x32& stream) {
    const int m = N / 2;
    Eigen::MatrixXcd u(N, N);
    for (int k = 0; k < m; ++k) {
        Eigen::VectorXcd col(N);
        for (int r = 0; r < N; ++r) {
            const double re = stream.normal();
            col(r) = cplx(re, stream.normal());
        }
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < k; ++j) {
                col -= u.col(j) * u.col(j).dot(col);
                col -= u.col(m + j) * u.col(m + j).dot(col);
            }
        col /= col.norm();
        u.col(k) = col;
        // -J conj(u) with J = [[0, I], [-I, 0]]: top = -conj(lower), bottom = conj(upper).
        u.col(m + k).head(m) = -col.tail(m).conjugate();
        u.col(m + k).tail(m) = col.head(m).conjugate();
    }
    return u;
}

}  // namespace

Eigen::MatrixXd symplectic_form(int N) {
    if (N < 2 || N % 2 != 0) fail(ErrorCode::DomainError, "symplectic form needs even N >= 2");
    const int m = N / 2;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N, N);
    J.topRightCorner(m, m) = Eigen::MatrixXd::Identity(m, m);
    J.bottomLeftCorner(m, m) = -Eigen::MatrixXd::Identity(m, m);
    return J;
}

double GroupElement::unitarity_residual() const {
    const Eigen::MatrixXcd d = matrix.adjoint() * matrix - Eigen::MatrixXcd::Identity(group.N, group.N);
    return d.cwiseAbs().maxCoeff();
}

double GroupElement::structure_residual() const {
    if (group.family != Family::USp) return matrix.imag().cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd J = symplectic_form(group.N).cast<cplx>();
    return (matrix.transpose() * J * matrix - J).cwiseAbs().maxCoeff();
}

cplx GroupElement::determinant() const { return matrix.determinant(); }

std::vector<cplx> GroupElement::eigenvalues() const { return spectrum(*this); }

GroupElement sample(const GroupSpec& group, Philox4x32& stream) {
    validate(group);
    GroupElement u{group, {}};
    if (group.family == Family::USp) {
        u.matrix = symplectic_sample(group.N, stream);
        return u;
    }
    Eigen::MatrixXd q = orthogonal_sample(group.N, stream);
    // Left translation by a fixed reflection maps O^- onto SO and keeps Haar measure.
    if (group.family == Family::SO && q.determinant() < 0.0) q.col(0) = -q.col(0);
    u.matrix = q.cast<cplx>();
    return u;
}

GroupElement sample_at(const GroupSpec& group, std::uint64_t seed, std::uint64_t index) {
    Philox4x32 stream(seed, index);
    return sample(group, stream);
}

std::vector<cplx> spectrum(const GroupElement& u) {
    const int N = u.group.N;
    std::vector<cplx> out(static_cast<std::size_t>(N));
    if (N == 1) {
        out[0] = u.matrix(0, 0);
        return out;
    }
    if (u.group.family == Family::USp) {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u.matrix, false);
        for (int i = 0; i < N; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    } else {
        Eigen::EigenSolver<Eigen::MatrixXd> es(u.matrix.real(), false);
        for (int i = 0; i < N; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    }
    return out;
}

cplx integrand(const TorusPoint& pt, std::span<const cplx> eigenvalues) {
    cplx num{1.0, 0.0}, den{1.0, 0.0};
    for (const auto& l : eigenvalues) {
        for (const auto& x : pt.x) num *= 1.0 - x * l;
        for (const auto& y : pt.y) den *= 1.0 - y * l;
    }
    return num / den;
}

cplx integrand(const TorusPoint& pt, const GroupElement& u) {
    const auto ev = spectrum(u);
    return integrand(pt, ev);
}

namespace {

std::vector<MCEstimate> run_batch(const GroupSpec& group, std::span<const TorusPoint> pts, std::uint64_t samples,
                                  std::uint64_t seed, int workers, bool parallel) {
    validate(group);
    if (samples < 2) fail(ErrorCode::InvalidArgument, "Monte Carlo needs at least 2 samples");
    for (const auto& pt : pts) pt.validate();
    auto moments = detail::reduce_blocks(samples, pts.size(), kMCBlock, workers, parallel,
                                         [&](std::uint64_t i, std::vector<detail::Moments>& slots) {
                                             const GroupElement u = sample_at(group, seed, i);
                                             const auto ev = spectrum(u);
                                             for (std::size_t k = 0; k < pts.size(); ++k)
                                                 slots[k].add(integrand(pts[k], ev));
                                         });
    std::vector<MCEstimate> out;
    out.reserve(pts.size());
    for (const auto& m : moments) out.push_back(detail::finish(m, seed));
    return out;
}

}  // namespace

std::vector<MCEstimate> mc_estimate_batch(const GroupSpec& group, std::span<const TorusPoint> pts,
                                          std::uint64_t samples, std::uint64_t seed, int workers) {
    return run_batch(group, pts, samples, seed, workers, true);
}

std::vector<MCEstimate> mc_estimate_batch_serial(const GroupSpec& group, std::span<const TorusPoint> pts,
                                                 std::uint64_t samples, std::uint64_t seed) {
    return run_batch(group, pts, samples, seed, 1, false);
}

MCEstimate mc_estimate(const GroupSpec& group, const TorusPoint& pt, std::uint64_t samples, std::uint64_t seed,
                       int workers) {
    return mc_estimate_batch(group, std::span<const TorusPoint>(&pt, 1), samples, seed, workers).front();
}

}  // namespace ratioavg
