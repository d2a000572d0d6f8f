// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "ratioavg/closed_form.hpp"
#include "ratioavg/haar.hpp"
#include "ratioavg/points.hpp"
#include "ratioavg/quad.hpp"
#include "ratioavg/series.hpp"
#include "ratioavg/weights.hpp"

using namespace ratioavg;
using cplx = std::complex<double>;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

const std::vector<std::pair<Family, int>> kQuadGroups{{Family::SO, 2}, {Family::SO, 3}, {Family::SO, 4},
                                                      {Family::O, 2},  {Family::O, 3},  {Family::USp, 2},
                                                      {Family::USp, 4}};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Outcome golden() {
    const auto t0 = std::chrono::steady_clock::now();
    struct G {
        Family f;
        int N;
        TorusPoint pt;
        double expected;
    };
    const std::vector<G> cases{{Family::SO, 1, {{0.5}, {0.25}}, 2.0 / 3.0},
                               {Family::O, 1, {{0.5}, {0.25}}, 14.0 / 15.0},
                               {Family::SO, 2, {{0.5}, {0.25}}, 16.0 / 15.0},
                               {Family::USp, 2, {{0.5}, {}}, 1.25}};
    double worst = 0.0;
    for (const G& g : cases) worst = std::max(worst, std::abs(ratio_average(g.f, g.N, g.pt).value - g.expected));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {worst < 1e-12 && secs < 1.0, fmt("max error %.2e", worst) + fmt(", %.3f s (limit 1 s)", secs)};
}

Outcome quadrature() {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    int points = 0;
    for (auto [f, N] : kQuadGroups)
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; q <= 3; ++q) {
                if (!in_validity_range(f, N, p, q)) continue;
                for (int k = 0; k < 50; ++k) {
                    const TorusPoint pt = random_torus_point(rng, p, q, PointRanges{1.0, 1.0, 0.0, 0.7});
                    const cplx a = ratio_average(f, N, pt).value;
                    const cplx b = quad_average(QuadSpec{f, N, 128}, pt);
                    worst = std::max(worst, std::abs(a - b));
                    ++points;
                }
            }
    return {worst < 1e-8, std::to_string(points) + " points, max |eval - quad| " + fmt("%.2e", worst)};
}

Outcome monte_carlo() {
    std::vector<GroupSpec> groups;
    for (int N = 1; N <= 5; ++N) groups.push_back({Family::O, N}), groups.push_back({Family::SO, N});
    for (int N : {2, 4, 6}) groups.push_back({Family::USp, N});
    std::mt19937_64 rng(202);
    double worst_z = 0.0, worst_se = 0.0;
    bool pass = true;
    int points = 0;
    for (const GroupSpec& g : groups)
        for (int n : {1, 2}) {
            std::vector<TorusPoint> pts;
            for (int k = 0; k < 10; ++k)
                pts.push_back(random_torus_point(rng, n, n, PointRanges{0.1, 0.35, 0.05, 0.35}));
            const auto est = mc_estimate_batch(g, pts, 1000000, 2024, 0);
            for (std::size_t k = 0; k < pts.size(); ++k) {
                const cplx exact = ratio_average(g.family, g.N, pts[k]).value;
                const cplx d = exact - est[k].mean;
                const double se = std::max(est[k].stderr_re, est[k].stderr_im);
                const double zr = est[k].stderr_re > 0 ? std::abs(d.real()) / est[k].stderr_re : 0.0;
                const double zi = est[k].stderr_im > 0 ? std::abs(d.imag()) / est[k].stderr_im : 0.0;
                if (std::abs(d.real()) >= 4 * est[k].stderr_re + 1e-15) pass = false;
                if (std::abs(d.imag()) >= 4 * est[k].stderr_im + 1e-15) pass = false;
                if (se >= 5e-3) pass = false;
                worst_z = std::max({worst_z, zr, zi});
                worst_se = std::max(worst_se, se);
                ++points;
            }
        }
    return {pass, std::to_string(points) + " points at 1e6 samples, max z " + fmt("%.2f", worst_z) +
                      fmt(", max stderr %.2e", worst_se)};
}

Outcome so_o_identity() {
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<int> pick(1, 3);
    double worst = 0.0;
    int points = 0;
    for (int N = 1; N <= 5; ++N)
        for (int k = 0; k < 100; ++k) {
            const int n = pick(rng);
            const TorusPoint pt = random_torus_point(rng, n, n, PointRanges{0.2, 1.5, 0.0, 0.8});
            const cplx a = so_from_o(N, pt).value, b = ratio_average(Family::SO, N, pt).value;
            worst = std::max(worst, std::abs(a - b));
            ++points;
        }
    return {worst < 1e-10, std::to_string(points) + " points, max difference " + fmt("%.2e", worst)};
}

Outcome degeneration() {
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<int> pick(1, 3), pickq(0, 3), group(0, 12);
    const std::vector<std::pair<Family, int>> all{{Family::O, 1},   {Family::O, 2},  {Family::O, 3},
                                                  {Family::O, 4},   {Family::O, 5},  {Family::SO, 1},
                                                  {Family::SO, 2},  {Family::SO, 3}, {Family::SO, 4},
                                                  {Family::SO, 5},  {Family::USp, 2}, {Family::USp, 4},
                                                  {Family::USp, 6}};
    double reduction = 0.0;
    for (int k = 0; k < 100;) {
        const auto [f, N] = all[static_cast<std::size_t>(group(rng))];
        const int p = pick(rng), q = pickq(rng);
        if (!in_validity_range(f, N, p - 1, q)) continue;
        TorusPoint pt = random_torus_point(rng, p, q, PointRanges{0.3, 1.0, 0.0, 0.7});
        pt.x.back() = std::polar(1e-14, 0.1 * k);
        TorusPoint reduced = pt;
        reduced.x.pop_back();
        reduction = std::max(reduction, std::abs(ratio_average(f, N, pt).value - ratio_average(f, N, reduced).value));
        ++k;
    }
    double pole = 0.0;
    bool finite = true;
    for (auto [f, N] : kQuadGroups)
        for (double theta : {0.3, 1.1, 2.5}) {
            const cplx x1 = std::polar(1.0, theta);
            const TorusPoint pt{{x1, (1.0 + 1e-6) / x1}, {cplx(0.3, 0.1)}};
            const cplx v = ratio_average(f, N, pt).value;
            finite = finite && std::isfinite(v.real()) && std::isfinite(v.imag());
            pole = std::max(pole, std::abs(v - quad_average(QuadSpec{f, N, 128}, pt)));
        }
    return {reduction < 1e-12 && finite && pole < 1e-6,
            fmt("reduction max %.2e", reduction) + fmt(", pole vs quad max %.2e", pole)};
}

Outcome series() {
    const WeightSeries B = compute_B(Family::USp, 2, 1, 8);
    bool table = B.coefficient(LinForm::weight({2}, {2})) == 1 && B.coefficient(LinForm::weight({-2}, {2})) == 1 &&
                 B.coefficient(LinForm::weight({0}, {4})) == -1 && B.nonzero_count() == 3;
    std::mt19937_64 rng(505);
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    double worst = 0.0, worst_ratio = 0.0;
    bool pass = table;
    for (Family f : {Family::O, Family::USp})
        for (int N = 1; N <= 3; ++N) {
            if (f == Family::USp && N % 2 != 0) continue;
            for (int n = 1; n <= 2; ++n) {
                const WeightSeries Bn = compute_B(f, N, n, 8);
                for (int k = 0; k < 20; ++k) {
                    std::vector<cplx> psi, phi;
                    for (int j = 0; j < n; ++j) psi.emplace_back(ang(rng), 0.0), phi.emplace_back(2.0, 0.0);
                    const SeriesEvaluation s = evaluate_series(Bn, psi, phi);
                    const double d = std::abs(s.value - character_chi(f, N, psi, phi).value);
                    if (d > s.tail_estimate || d > 1e-6) pass = false;
                    worst = std::max(worst, d);
                    worst_ratio = std::max(worst_ratio, d / s.tail_estimate);
                }
            }
        }
    return {pass, std::string(table ? "USp_2 table exact" : "USp_2 table WRONG") + fmt(", max |series - chi| %.2e", worst) +
                      fmt(", max error/tail %.2e", worst_ratio)};
}

Outcome casimir() {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t checked = 0, violations = 0;
    for (Family f : {Family::O, Family::USp})
        for (int N = 1; N <= 3; ++N) {
            if (f == Family::USp && N % 2 != 0) continue;
            for (int n = 1; n <= 2; ++n) {
                const CasimirReport r = verify_casimir(f, N, n, 6, 4);
                checked += r.checked;
                violations += r.violations.size();
            }
        }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {violations == 0 && checked > 0 && secs < 120.0,
            std::to_string(checked) + " weights checked, " + std::to_string(violations) + " violations" +
                fmt(", %.2f s (limit 120 s)", secs)};
}

Outcome weight_theory() {
    bool pass = true;
    std::size_t nonzero = 0;
    for (Family f : {Family::O, Family::USp})
        for (int N = 1; N <= 4; ++N)
            for (int n = 1; n <= 3; ++n) {
                if (f == Family::USp && N % 2 != 0) continue;
                const WeightSeries B = compute_B(f, N, n, n == 3 ? 4 : 6);
                for (const auto& t : B.terms())
                    if (t.coeff != 0) {
                        ++nonzero;
                        pass = pass && satisfies_constraints(t.exponent, N);
                    }
                if (f == Family::O)
                    for (int j = 0; j < n; ++j) pass = pass && B.coefficient(exceptional_weight(N, n, j)) == 0;
                const auto data = build_root_data(f, n);
                std::vector<Weight> expected{highest_weight(N, n)};
                if (f == Family::O) expected.push_back(exceptional_weight(N, n, n - 1));
                std::vector<Weight> found;
                for (const auto& g : enumerate_box(N, n, 6))
                    if (vanishing_test(g, data, N)) found.push_back(g);
                std::sort(expected.begin(), expected.end());
                std::sort(found.begin(), found.end());
                pass = pass && found == expected;
            }
    return {pass, std::to_string(nonzero) + " nonzero coefficients inside the constraints; vanishing sets as predicted"};
}

Outcome sampler() {
    double residual = 0.0, det = 0.0;
    for (int N = 1; N <= 8; ++N)
        for (Family f : {Family::O, Family::SO, Family::USp}) {
            if (f == Family::USp && N % 2 != 0) continue;
            for (std::uint64_t i = 0; i < 200; ++i) {
                const GroupElement u = sample_at({f, N}, 606, i);
                residual = std::max({residual, u.unitarity_residual(), u.structure_residual()});
                if (f == Family::SO) det = std::max(det, std::abs(u.determinant() - 1.0));
            }
        }
    bool identical = true;
    std::mt19937_64 rng(607);
    for (const GroupSpec g : {GroupSpec{Family::O, 3}, GroupSpec{Family::SO, 4}, GroupSpec{Family::USp, 4}}) {
        const std::vector<TorusPoint> pts{random_torus_point(rng, 2, 2, PointRanges{0.1, 0.35, 0.05, 0.35})};
        const auto ref = mc_estimate_batch(g, pts, 50000, 9, 1);
        for (int w : {4, 16}) {
            const auto got = mc_estimate_batch(g, pts, 50000, 9, w);
            identical = identical && got[0].mean == ref[0].mean && got[0].stderr_re == ref[0].stderr_re &&
                        got[0].stderr_im == ref[0].stderr_im;
        }
    }
    return {residual < 1e-12 && det < 1e-12 && identical,
            fmt("max residual %.2e", residual) + fmt(", max |det - 1| on SO %.2e", det) +
                (identical ? ", workers {1,4,16} bit-identical" : ", worker results DIFFER")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 golden values", golden},           {"2 quadrature equivalence", quadrature},
        {"3 Monte Carlo equivalence", monte_carlo}, {"4 SO/O identity", so_o_identity},
        {"5 degeneration", degeneration},      {"6 series", series},
        {"7 Casimir annihilation", casimir},   {"8 weight theory", weight_theory},
        {"9 sampler hygiene", sampler}};
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
