#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "ratioavg/closed_form.hpp"
#include "ratioavg/error.hpp"
#include "ratioavg/series.hpp"

using namespace ratioavg;
using cplx = std::complex<double>;

namespace {

std::vector<std::pair<Family, int>> character_groups(int maxN) {
    std::vector<std::pair<Family, int>> out;
    for (int N = 1; N <= maxN; ++N) {
        out.emplace_back(Family::O, N);
        if (N % 2 == 0) out.emplace_back(Family::USp, N);
    }
    return out;
}

using Key = std::vector<int>;  // (a_1..a_n, b_1..b_n)

Key key_of(const Weight& g, int N) {
    Key k;
    for (int j = 0; j < g.rank(); ++j) k.push_back((N - g.twice_m(j)) / 2);
    for (int j = 0; j < g.rank(); ++j) k.push_back((g.twice_n(j) - N) / 2);
    return k;
}

// Taylor coefficients of the ratio average in x^a y^b, read off by a discrete
// Fourier transform: |x| = 1 with N+1 nodes (degree <= N in each x_j, so no
// aliasing) and |y| = r with My nodes. Node phases are offset so that no grid
// point is degenerate. With chi = e^lambda * average, B at (m, n) is the
// coefficient at a = N/2 - m, b = n - N/2.
std::map<Key, long> dft_coefficients(Family f, int N, int n, int depth, int My, double r) {
    const int Mx = N + 1;
    std::vector<double> offset;
    for (int j = 0; j < 2 * n; ++j) offset.push_back(0.1234 + 0.0771 * j);
    const int total = static_cast<int>(std::pow(Mx, n) * std::pow(My, n));
    std::vector<cplx> values(static_cast<std::size_t>(total));
    std::vector<std::vector<int>> idx(static_cast<std::size_t>(total), std::vector<int>(2 * n));
    for (int t = 0; t < total; ++t) {
        int rest = t;
        TorusPoint pt;
        for (int j = 0; j < n; ++j) {
            const int k = rest % Mx;
            rest /= Mx;
            idx[t][j] = k;
            pt.x.push_back(std::polar(1.0, 2 * std::numbers::pi * k / Mx + offset[j]));
        }
        for (int j = 0; j < n; ++j) {
            const int k = rest % My;
            rest /= My;
            idx[t][n + j] = k;
            pt.y.push_back(std::polar(r, 2 * std::numbers::pi * k / My + offset[n + j]));
        }
        values[t] = ratio_average(f, N, pt).value;
    }
    std::map<Key, long> out;
    std::vector<int> key(2 * n, 0);
    // Enumerate a in [0, N]^n and b >= 0 with sum b <= depth.
    const auto visit = [&](auto&& self, int pos, int budget) -> void {
        if (pos == 2 * n) {
            cplx acc = 0.0;
            for (int t = 0; t < total; ++t) {
                double angle = 0.0;
                for (int j = 0; j < n; ++j) {
                    angle -= key[j] * (2 * std::numbers::pi * idx[t][j] / Mx + offset[j]);
                    angle -= key[n + j] * (2 * std::numbers::pi * idx[t][n + j] / My + offset[n + j]);
                }
                acc += values[t] * std::polar(1.0, angle);
            }
            double scale = total;
            for (int j = 0; j < n; ++j) scale *= std::pow(r, key[n + j]);
            const cplx c = acc / scale;
            REQUIRE(std::abs(c.imag()) < 1e-4);
            REQUIRE(std::abs(c.real() - std::round(c.real())) < 1e-4);
            if (std::lround(c.real()) != 0) out[key] = std::lround(c.real());
            return;
        }
        const int hi = pos < n ? N : budget;
        for (int v = 0; v <= hi; ++v) {
            key[pos] = v;
            self(self, pos + 1, pos < n ? budget : budget - v);
        }
    };
    visit(visit, 0, depth);
    return out;
}

std::map<Key, long> nonzero_B(const WeightSeries& B, int N) {
    std::map<Key, long> out;
    for (const auto& t : B.terms())
        if (t.coeff != 0) out[key_of(t.exponent, N)] = static_cast<long>(t.coeff);
    return out;
}

}  // namespace

TEST_CASE("expand_J lambda-positive example") {
    const RootSystemData data = build_root_data(Family::USp, 1);
    const WeightSeries A = expand_J(data, 2, JFactors::lambda_positive);
    const LinForm a = LinForm::psi(1, 0) + LinForm::phi(1, 0);  // i psi + phi
    const LinForm two_psi = LinForm::psi(1, 0, 2);
    CHECK(A.coefficient(LinForm::zero(1)) == 1);
    CHECK(A.coefficient(-1 * a) == 1);
    CHECK(A.coefficient(-1 * two_psi) == -1);
    CHECK(A.coefficient(-2 * a) == 1);
    CHECK(A.coefficient(-1 * (two_psi + a)) == -1);
}

TEST_CASE("expand_J structure") {
    for (auto f : {Family::O, Family::USp})
        for (int n = 1; n <= 3; ++n)
            for (auto factors : {JFactors::full, JFactors::lambda_positive}) {
                const WeightSeries A = expand_J(build_root_data(f, n), 4, factors);
                CHECK(A.coefficient(LinForm::zero(n)) == 1);
                for (const auto& t : A.terms()) {
                    CHECK(-t.exponent.phi2_total() <= 2 * 4);
                    // phi_j - phi_k roots of the full product can push one n_j negative.
                    if (factors == JFactors::lambda_positive)
                        for (int j = 0; j < n; ++j) CHECK(t.exponent.twice_n(j) >= 0);
                }
            }
}

TEST_CASE("USp_2 rank-one coefficients") {
    for (int depth : {4, 8}) {
        const WeightSeries B = compute_B(Family::USp, 2, 1, depth);
        const auto nz = nonzero_B(B, 2);
        CHECK(nz.size() == 3);
        CHECK(B.coefficient(LinForm::weight({2}, {2})) == 1);
        CHECK(B.coefficient(LinForm::weight({-2}, {2})) == 1);
        CHECK(B.coefficient(LinForm::weight({0}, {4})) == -1);
    }
}

TEST_CASE("compute_B against a Fourier oracle") {
    struct Case {
        Family f;
        int N, n, depth, My;
    };
    for (const Case c : {Case{Family::O, 1, 1, 6, 24}, Case{Family::O, 2, 1, 6, 24}, Case{Family::O, 3, 1, 6, 24},
                         Case{Family::O, 4, 1, 6, 24}, Case{Family::USp, 2, 1, 6, 24}, Case{Family::USp, 4, 1, 6, 24},
                         Case{Family::O, 1, 2, 5, 16}, Case{Family::O, 2, 2, 5, 16}, Case{Family::O, 3, 2, 4, 16},
                         Case{Family::USp, 2, 2, 5, 16}, Case{Family::USp, 4, 2, 4, 16},
                         Case{Family::O, 2, 3, 3, 10}, Case{Family::USp, 2, 3, 3, 10}}) {
        INFO(to_string(c.f), c.N, " n=", c.n, " D=", c.depth);
        const auto oracle = dft_coefficients(c.f, c.N, c.n, c.depth, c.My, 0.2);
        CHECK(nonzero_B(compute_B(c.f, c.N, c.n, c.depth), c.N) == oracle);
    }
}

TEST_CASE("coefficient invariants") {
    for (auto [f, N] : character_groups(4))
        for (int n = 1; n <= 3; ++n) {
            const int depth = n == 3 ? 3 : 5;
            const WeightSeries B = compute_B(f, N, n, depth);
            INFO(to_string(f), N, " n=", n);
            CHECK(B.coefficient(highest_weight(N, n)) == 1);
            std::size_t window = enumerate_total_degree(N, n, depth).size();
            CHECK(B.size() == window);
            for (const auto& t : B.terms()) {
                if (t.coeff == 0) continue;
                CHECK(satisfies_constraints(t.exponent, N));
                for (const Weight& w : weyl_orbit(f, t.exponent)) CHECK(B.coefficient(w) == t.coeff);
            }
            if (f == Family::O)
                for (int j = 0; j < n; ++j) CHECK(B.coefficient(exceptional_weight(N, n, j)) == 0);
        }
}

TEST_CASE("orbit representative leads the sweep") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> m(-3, 3), k(0, 4);
    for (Family f : {Family::O, Family::USp})
        for (int trial = 0; trial < 50; ++trial) {
            const Weight g = LinForm::weight({2 * m(rng), 2 * m(rng)}, {2 * k(rng), 2 * k(rng)});
            const auto orbit = weyl_orbit(f, g);
            const Weight rep = orbit_representative(f, g);
            CHECK(std::find(orbit.begin(), orbit.end(), rep) != orbit.end());
            for (const Weight& w : orbit) CHECK(sweep_height(w) <= sweep_height(rep));
        }
}

TEST_CASE("series matches the character within the tail estimate") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> ang(-3.0, 3.0), re(1.5, 3.0);
    for (auto [f, N] : character_groups(3))
        for (int n = 1; n <= 2; ++n) {
            const WeightSeries B = compute_B(f, N, n, 8);
            for (int k = 0; k < 20; ++k) {
                std::vector<cplx> psi, phi;
                for (int j = 0; j < n; ++j) {
                    psi.emplace_back(ang(rng), 0.0);
                    phi.emplace_back(re(rng), ang(rng));
                }
                const SeriesEvaluation s = evaluate_series(B, psi, phi);
                const cplx chi = character_chi(f, N, psi, phi).value;
                INFO(to_string(f), N, " n=", n);
                CHECK(std::abs(s.value - chi) <= s.tail_estimate);
            }
        }
}

TEST_CASE("series examples") {
    const std::vector<cplx> psi1{0.3}, phi1{1.0};
    const WeightSeries usp = compute_B(Family::USp, 2, 1, 8);
    const SeriesEvaluation s1 = evaluate_series(usp, psi1, phi1);
    CHECK(std::abs(s1.value - character_chi(Family::USp, 2, psi1, phi1).value) <= s1.tail_estimate);

    const std::vector<cplx> psi2{0.4, -1.2}, phi2{2.0, 2.0};
    const WeightSeries o = compute_B(Family::O, 2, 2, 6);
    const SeriesEvaluation s2 = evaluate_series(o, psi2, phi2);
    CHECK(std::abs(s2.value - character_chi(Family::O, 2, psi2, phi2).value) < 1e-6);

    // Far out only the top layer n_j = N/2 survives, and the series is exact there.
    const std::vector<cplx> far{60.0, 70.0};
    const SeriesEvaluation s3 = evaluate_series(o, psi2, far);
    CHECK(std::abs(s3.value / character_chi(Family::O, 2, psi2, far).value - 1.0) < 1e-12);

    CHECK_THROWS_AS(evaluate_series(o, psi2, std::vector<cplx>{0.05, 0.05}, 1e-6), Error);
    try {
        evaluate_series(o, psi2, std::vector<cplx>{0.05, 0.05}, 1e-6);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TailTooLarge);
    }
}

TEST_CASE("Casimir annihilation") {
    const CasimirReport usp = verify_casimir(Family::USp, 2, 1, 4, 3);
    CHECK(usp.ok());
    CHECK(usp.checked > 0);
    CHECK(std::find(usp.skipped.begin(), usp.skipped.end(), highest_weight(2, 1)) != usp.skipped.end());
    CHECK(verify_casimir(Family::O, 2, 2, 4, 4).ok());
    for (auto [f, N] : character_groups(3))
        for (int n = 1; n <= 2; ++n) CHECK(verify_casimir(f, N, n, 6, 4).ok());
}

TEST_CASE("coefficient CSV") {
    std::ostringstream out;
    write_coefficient_csv(out, compute_B(Family::O, 1, 1, 1));
    const std::string csv = out.str();
    CHECK(csv.rfind("m1,n1,numerator,denominator\n", 0) == 0);
    CHECK(csv.find("0.5,0.5,1,1\n") != std::string::npos);
}
