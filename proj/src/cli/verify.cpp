#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "internal.hpp"
#include "ratioavg/haar.hpp"
#include "ratioavg/points.hpp"
#include "ratioavg/quad.hpp"
#include "ratioavg/series.hpp"

namespace ratioavg::cli {

namespace {

using cplx = std::complex<double>;

struct CheckOutcome {
    bool passed = true;
    std::string detail;
};

struct Tier {
    bool full;
    int workers;
    int quad_points;
    std::uint64_t mc_samples;
    int mc_points;
    int identity_points;
    int series_depth;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

const std::vector<GroupSpec>& quad_groups() {
    static const std::vector<GroupSpec> groups{{Family::SO, 2}, {Family::SO, 3}, {Family::SO, 4}, {Family::O, 2},
                                               {Family::O, 3},  {Family::USp, 2}, {Family::USp, 4}};
    return groups;
}

CheckOutcome golden(const Tier&) {
    struct Case {
        Family f;
        int N;
        TorusPoint pt;
        double expected;
    };
    const std::vector<Case> cases{{Family::SO, 1, {{0.5}, {0.25}}, 2.0 / 3.0},
                                  {Family::O, 1, {{0.5}, {0.25}}, 14.0 / 15.0},
                                  {Family::SO, 2, {{0.5}, {0.25}}, 16.0 / 15.0},
                                  {Family::USp, 2, {{0.5}, {}}, 1.25}};
    double worst = 0.0;
    for (const auto& c : cases) worst = std::max(worst, std::abs(ratio_average(c.f, c.N, c.pt).value - c.expected));
    return {worst < 1e-12, "max error " + fmt(worst)};
}

CheckOutcome closed_form_vs_quad(const Tier& t) {
    std::mt19937_64 rng(11);
    double worst = 0.0;
    for (const auto& g : quad_groups())
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; q <= 3; ++q) {
                if (!in_validity_range(g.family, g.N, p, q)) continue;
                if (!t.full && p + q > 3) continue;
                for (int k = 0; k < t.quad_points; ++k) {
                    const TorusPoint pt = random_torus_point(rng, p, q, PointRanges{1.0, 1.0, 0.0, 0.7});
                    const cplx a = ratio_average(g.family, g.N, pt).value;
                    const cplx b = quad_average(QuadSpec{g.family, g.N, 128}, pt);
                    worst = std::max(worst, std::abs(a - b));
                }
            }
    return {worst < 1e-8, "max |eval - quad| " + fmt(worst)};
}

CheckOutcome closed_form_vs_mc(const Tier& t) {
    std::vector<GroupSpec> groups;
    if (t.full) {
        for (int N = 1; N <= 5; ++N) groups.push_back({Family::O, N});
        for (int N = 1; N <= 5; ++N) groups.push_back({Family::SO, N});
        for (int N : {2, 4, 6}) groups.push_back({Family::USp, N});
    } else {
        groups = {{Family::SO, 3}, {Family::O, 2}, {Family::USp, 2}};
    }
    std::mt19937_64 rng(23);
    double worst_z = 0.0, worst_se = 0.0;
    for (const auto& g : groups) {
        std::vector<TorusPoint> pts;
        for (int n = 1; n <= 2; ++n)
            for (int k = 0; k < t.mc_points; ++k)
                pts.push_back(random_torus_point(rng, n, n, PointRanges{0.1, 0.35, 0.05, 0.35}));
        const auto est = mc_estimate_batch(g, pts, t.mc_samples, 1000 + static_cast<std::uint64_t>(g.N), t.workers);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const cplx exact = ratio_average(g.family, g.N, pts[i]).value;
            const double se = std::max(est[i].stderr_re, est[i].stderr_im);
            const cplx d = exact - est[i].mean;
            // SO_1 is a single point, so both stderrs can be exactly zero.
            const double floor = 1e-14 * std::max(1.0, std::abs(exact));
            const auto z = [&](double dev, double s) { return std::abs(dev) <= floor ? 0.0 : std::abs(dev) / s; };
            worst_z = std::max({worst_z, z(d.real(), est[i].stderr_re), z(d.imag(), est[i].stderr_im)});
            worst_se = std::max(worst_se, se);
        }
    }
    const bool ok = worst_z < 4.0 && (!t.full || worst_se < 5e-3);
    return {ok, "max |eval - mc| / stderr " + fmt(worst_z) + ", max stderr " + fmt(worst_se)};
}

CheckOutcome so_o_identity(const Tier& t) {
    std::mt19937_64 rng(31);
    double worst = 0.0;
    for (int k = 0; k < t.identity_points; ++k) {
        const int N = 1 + k % 5;
        const int n = 1 + (k / 5) % 2;
        const TorusPoint pt = random_torus_point(rng, n, n, PointRanges{0.3, 1.0, 0.0, 0.7});
        const cplx a = so_from_o(N, pt).value;
        const cplx b = ratio_average(Family::SO, N, pt).value;
        worst = std::max(worst, std::abs(a - b));
    }
    return {worst < 1e-10, "max |so_from_o - SO| " + fmt(worst)};
}

CheckOutcome reduction(const Tier& t) {
    std::mt19937_64 rng(37);
    double worst = 0.0;
    const Family fams[] = {Family::O, Family::SO, Family::USp};
    for (int k = 0; k < t.identity_points; ++k) {
        const Family f = fams[k % 3];
        const int N = f == Family::USp ? 2 * (1 + k % 3) : 1 + k % 5;
        const int p = 2, q = 1 + k % 2;
        if (!in_validity_range(f, N, p - 1, q)) continue;
        TorusPoint pt = random_torus_point(rng, p, q, PointRanges{0.3, 1.0, 0.0, 0.7});
        pt.x.back() = std::polar(1e-14, 1.0 + k);
        TorusPoint reduced = pt;
        reduced.x.pop_back();
        worst = std::max(worst, std::abs(ratio_average(f, N, pt).value - ratio_average(f, N, reduced).value));
    }
    return {worst < 1e-12, "max reduction error " + fmt(worst)};
}

CheckOutcome pole_regularization(const Tier&) {
    double worst = 0.0;
    bool finite = true;
    for (const auto& g : quad_groups()) {
        const cplx x1 = std::polar(1.0, 0.7);
        for (double eps : {1e-6, 0.0}) {
            const TorusPoint pt{{x1, (1.0 + eps) / x1}, {0.3}};
            const EvalResult r = ratio_average(g.family, g.N, pt);
            finite = finite && std::isfinite(r.value.real()) && std::isfinite(r.value.imag());
            worst = std::max(worst, std::abs(r.value - quad_average(QuadSpec{g.family, g.N, 128}, pt)));
        }
    }
    return {finite && worst < 1e-6, "max |regularized - quad| " + fmt(worst)};
}

CheckOutcome series_example(const Tier& t) {
    const WeightSeries B = compute_B(Family::USp, 2, 1, t.series_depth);
    bool ok = B.nonzero_count() == 3 && B.coefficient(LinForm::weight({2}, {2})) == 1 &&
              B.coefficient(LinForm::weight({-2}, {2})) == 1 && B.coefficient(LinForm::weight({0}, {4})) == -1;
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    double worst_ratio = 0.0, worst_diff = 0.0;
    for (Family f : {Family::O, Family::USp})
        for (int N = 1; N <= 3; ++N)
            for (int n = 1; n <= 2; ++n) {
                if (f == Family::USp && N % 2 != 0) continue;
                const WeightSeries S = compute_B(f, N, n, t.series_depth);
                std::vector<cplx> psi(static_cast<std::size_t>(n)), phi(static_cast<std::size_t>(n), 2.0);
                for (auto& s : psi) s = angle(rng);
                const SeriesEvaluation ev = evaluate_series(S, psi, phi);
                const double d = std::abs(ev.value - character_chi(f, N, psi, phi).value);
                worst_diff = std::max(worst_diff, d);
                worst_ratio = std::max(worst_ratio, d / ev.tail_estimate);
            }
    ok = ok && worst_ratio <= 1.0 && worst_diff <= 1e-6;
    return {ok, "USp_2 table exact: " + std::string(B.nonzero_count() == 3 ? "yes" : "no") +
                    ", max |series - chi| " + fmt(worst_diff) + " (max ratio to tail " + fmt(worst_ratio) + ")"};
}

CheckOutcome casimir(const Tier& t) {
    struct Case {
        Family f;
        int N, n, D, lmax;
    };
    std::vector<Case> cases;
    if (t.full) {
        for (Family f : {Family::O, Family::USp})
            for (int N = 1; N <= 3; ++N)
                for (int n = 1; n <= 2; ++n)
                    if (f != Family::USp || N % 2 == 0) cases.push_back({f, N, n, 6, 4});
    } else {
        cases = {{Family::USp, 2, 1, 4, 3}, {Family::O, 2, 2, 4, 4}};
    }
    std::size_t checked = 0, violations = 0;
    for (const auto& c : cases) {
        const CasimirReport r = verify_casimir(c.f, c.N, c.n, c.D, c.lmax);
        checked += r.checked;
        violations += r.violations.size();
    }
    return {violations == 0, std::to_string(checked) + " weights checked, " + std::to_string(violations) + " violations"};
}

CheckOutcome determinism(const Tier& t) {
    const TorusPoint pt{{cplx(0.3, 0.1)}, {cplx(0.2, -0.1)}};
    const std::uint64_t samples = t.full ? 50000 : 10000;
    const MCEstimate ref = mc_estimate_batch_serial({Family::USp, 4}, std::span(&pt, 1), samples, 5).front();
    bool same = true;
    for (int w : {1, 4, 16}) {
        const MCEstimate e = mc_estimate({Family::USp, 4}, pt, samples, 5, w);
        same = same && e.mean == ref.mean && e.stderr_re == ref.stderr_re && e.stderr_im == ref.stderr_im;
    }
    return {same, same ? "bit-identical for workers 1, 4, 16 and the serial reference" : "results differ"};
}

}  // namespace

CommandResult run_verify(const JobSpec& job) {
    const Tier tier = job.full ? Tier{true, resolved_workers(job), 50, 1000000, 10, 100, 8}
                               : Tier{false, resolved_workers(job), 3, 20000, 2, 20, 8};
    const std::vector<std::pair<const char*, std::function<CheckOutcome(const Tier&)>>> checks{
        {"golden_values", golden},
        {"closed_form_vs_quadrature", closed_form_vs_quad},
        {"closed_form_vs_monte_carlo", closed_form_vs_mc},
        {"so_o_identity", so_o_identity},
        {"x_to_zero_reduction", reduction},
        {"pole_regularization", pole_regularization},
        {"series_vs_character", series_example},
        {"casimir_annihilation", casimir},
        {"mc_determinism", determinism},
    };
    CommandResult r;
    json table = json::array();
    for (const auto& [name, fn] : checks) {
        CheckOutcome o;
        try {
            o = fn(tier);
        } catch (const Error& e) {
            o = {false, std::string(to_string(e.code())) + ": " + e.what()};
        }
        if (!o.passed) r.exit_code = kVerifyFailed;
        table.push_back(json{{"check", name}, {"passed", o.passed}, {"detail", o.detail}});
    }
    r.fields["table"] = std::move(table);
    return r;
}

}  // namespace ratioavg::cli
