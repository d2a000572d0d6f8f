#include "ratioavg/quad.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ratioavg/error.hpp"
#include "ratioavg/haar.hpp"
#include "ratioavg/summation.hpp"

namespace ratioavg {

namespace {

using cplx = std::complex<double>;

// One connected piece of the group: dim = 0 (fixed spectrum), 1 or 2 angles on [0, pi].
struct Component {
    double weight = 1.0;
    int dim = 0;
    std::function<double(double, double)> density;
    std::function<void(double, double, std::vector<cplx>&)> eigs;
};

cplx e_i(double t) { return std::polar(1.0, t); }

void rotation_pair(std::vector<cplx>& out, double t, double sign = 1.0) {
    out.push_back(sign * e_i(t));
    out.push_back(sign * e_i(-t));
}

std::vector<Component> components_for(Family family, int N) {
    if (!quad_supported(family, N))
        fail(ErrorCode::UnsupportedGroup, std::string(to_string(family)) + "_" + std::to_string(N) +
                                              " is not supported by the quadrature oracle");
    const auto uniform1 = [](double, double) { return 1.0; };
    const auto so2 = [](double t, double, std::vector<cplx>& o) { rotation_pair(o, t); };
    const auto so3_density = [](double t, double) { return 1.0 - std::cos(t); };
    const auto so3 = [](double t, double, std::vector<cplx>& o) {
        o.push_back(1.0);
        rotation_pair(o, t);
    };
    const auto two_angles = [](double a, double b, std::vector<cplx>& o) {
        rotation_pair(o, a);
        rotation_pair(o, b);
    };
    const auto vandermonde = [](double a, double b) {
        const double d = std::cos(a) - std::cos(b);
        return d * d;
    };

    switch (family) {
    case Family::SO:
        if (N == 2) return {{1.0, 1, uniform1, so2}};
        if (N == 3) return {{1.0, 1, so3_density, so3}};
        return {{1.0, 2, vandermonde, two_angles}};
    case Family::O:
        if (N == 2)
            return {{0.5, 1, uniform1, so2},
                    {0.5, 0, uniform1, [](double, double, std::vector<cplx>& o) { o = {1.0, -1.0}; }}};
        return {{0.5, 1, so3_density, so3},
                {0.5, 1, so3_density, [](double t, double, std::vector<cplx>& o) {
                     o.push_back(-1.0);
                     rotation_pair(o, t, -1.0);
                 }}};
    case Family::USp:
        if (N == 2)
            return {{1.0, 1, [](double t, double) { return std::sin(t) * std::sin(t); }, so2}};
        return {{1.0, 2,
                 [vandermonde](double a, double b) {
                     const double s = std::sin(a) * std::sin(b);
                     return vandermonde(a, b) * s * s;
                 },
                 two_angles}};
    }
    return {};
}

cplx integrate_component(const Component& c, const QuadratureRule& rule, const SpectralFunction& f, bool parallel) {
    std::vector<cplx> ev;
    if (c.dim == 0) {
        c.eigs(0.0, 0.0, ev);
        return f(ev);
    }
    const int n = static_cast<int>(rule.nodes.size());
    if (c.dim == 1) {
        std::vector<cplx> terms(static_cast<std::size_t>(n));
        double mass = 0.0;
        for (int i = 0; i < n; ++i) {
            const double t = rule.nodes[i];
            const double w = rule.weights[i] * c.density(t, 0.0);
            ev.clear();
            c.eigs(t, 0.0, ev);
            terms[static_cast<std::size_t>(i)] = w * f(ev);
            mass += w;
        }
        return pairwise_sum(terms) / mass;
    }
    // Two angles: row partial sums, then an ordered reduction over rows.
    std::vector<cplx> rows(static_cast<std::size_t>(n));
    std::vector<double> row_mass(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < n; ++i) {
        std::vector<cplx> local;
        CompensatedSum acc;
        double mass = 0.0;
        for (int j = 0; j < n; ++j) {
            const double w = rule.weights[i] * rule.weights[j] * c.density(rule.nodes[i], rule.nodes[j]);
            if (w == 0.0) continue;
            local.clear();
            c.eigs(rule.nodes[i], rule.nodes[j], local);
            acc += w * f(local);
            mass += w;
        }
        rows[static_cast<std::size_t>(i)] = acc.value();
        row_mass[static_cast<std::size_t>(i)] = mass;
    }
    double mass = 0.0;
    for (double m : row_mass) mass += m;
    return pairwise_sum(rows) / mass;
}

cplx integrate(const QuadSpec& spec, const SpectralFunction& f, bool parallel) {
    if (spec.nodes < 2) fail(ErrorCode::InvalidArgument, "quadrature needs at least 2 nodes per angle");
    const auto parts = components_for(spec.family, spec.N);
    const QuadratureRule rule = gauss_legendre(spec.nodes, 0.0, std::numbers::pi);
    cplx total{0.0, 0.0};
    for (const auto& c : parts) total += c.weight * integrate_component(c, rule, f, parallel);
    return total;
}

SpectralFunction ratio_of(const TorusPoint& pt) {
    return [&pt](std::span<const cplx> ev) { return integrand(pt, ev); };
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "Gauss-Legendre rule needs n >= 1");
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // Final derivative at the converged root.
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) p0 = 1.0;
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = mid - half * z;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = mid + half * z;
        rule.weights[static_cast<std::size_t>(i)] = half * w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = half * w;
    }
    return rule;
}

bool quad_supported(Family family, int N) {
    switch (family) {
    case Family::SO: return N >= 2 && N <= 4;
    case Family::O: return N == 2 || N == 3;
    case Family::USp: return N == 2 || N == 4;
    }
    return false;
}

cplx quad_integrate(const QuadSpec& spec, const SpectralFunction& f) { return integrate(spec, f, true); }

cplx quad_integrate_serial(const QuadSpec& spec, const SpectralFunction& f) { return integrate(spec, f, false); }

cplx quad_average(const QuadSpec& spec, const TorusPoint& pt) {
    pt.validate();
    return integrate(spec, ratio_of(pt), true);
}

cplx quad_average_serial(const QuadSpec& spec, const TorusPoint& pt) {
    pt.validate();
    return integrate(spec, ratio_of(pt), false);
}

}  // namespace ratioavg
