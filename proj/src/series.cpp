#include "ratioavg/series.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "ratioavg/error.hpp"
#include "ratioavg/summation.hpp"

namespace ratioavg {

namespace {

using Poly = std::unordered_map<LinForm, BigInt, LinFormHash>;

// Total phi-degree of c for a stored exponent e = -c.
int phi_degree(const LinForm& e) { return -e.phi2_total() / 2; }

void multiply_truncated(Poly& p, const std::vector<std::pair<LinForm, BigInt>>& factor, int depth) {
    Poly out;
    out.reserve(p.size() * factor.size());
    for (const auto& [e, a] : p)
        for (const auto& [f, b] : factor) {
            LinForm g = e + f;
            if (phi_degree(g) > depth) continue;
            out[std::move(g)] += a * b;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    p = std::move(out);
}

Poly expand_raw(const RootSystemData& data, int depth, JFactors factors) {
    if (depth < 0) fail(ErrorCode::InvalidArgument, "expansion depth must be >= 0");
    const auto& even = factors == JFactors::full ? data.positive_even : data.delta_lambda_even;
    const auto& odd = factors == JFactors::full ? data.positive_odd : data.delta_lambda_odd;

    Poly p;
    p.emplace(LinForm::zero(data.n), BigInt(1));
    for (const auto& alpha : even)
        multiply_truncated(p, {{LinForm::zero(data.n), BigInt(1)}, {-alpha, BigInt(-1)}}, depth);
    for (const auto& beta : odd) {
        // Every odd root has phi-degree >= 1, so the geometric series is finite here.
        const int step = phi_degree(-beta);
        if (step < 1) fail(ErrorCode::InconsistentRecursion, "odd root without positive phi-degree");
        std::vector<std::pair<LinForm, BigInt>> geo;
        for (int m = 0; m * step <= depth; ++m) geo.emplace_back(-(m * beta), BigInt(1));
        multiply_truncated(p, geo, depth);
    }
    return p;
}

// Ordering used for the sweep: descending height, ties by descending LinForm.
bool sweeps_before(const LinForm& a, long ha, const LinForm& b, long hb) {
    if (ha != hb) return ha > hb;
    return a > b;
}

// Dense indexing of the box a_j = (N - 2m_j)/2 in [lo, hi], b_j = n_j - N/2 in [0, depth].
class Grid {
public:
    Grid(int N, int n, int depth, int lo, int hi) : N_(N), n_(n), depth_(depth), lo_(lo), hi_(hi) {
        const std::size_t na = static_cast<std::size_t>(hi - lo + 1);
        const std::size_t nb = static_cast<std::size_t>(depth + 1);
        std::size_t stride = 1;
        for (int j = 0; j < n; ++j, stride *= na) sa_.push_back(static_cast<long>(stride));
        for (int j = 0; j < n; ++j, stride *= nb) sb_.push_back(static_cast<long>(stride));
        size_ = stride;
    }

    std::size_t size() const { return size_; }

    struct Coords {
        std::vector<int> a, b;
    };

    Coords coords(const Weight& w) const {
        Coords c;
        for (int j = 0; j < n_; ++j) {
            c.a.push_back((N_ - w.twice_m(j)) / 2);
            c.b.push_back((w.twice_n(j) - N_) / 2);
        }
        return c;
    }

    bool inside(const std::vector<int>& a, const std::vector<int>& b) const {
        int total = 0;
        for (int j = 0; j < n_; ++j) {
            if (a[j] < lo_ || a[j] > hi_ || b[j] < 0) return false;
            total += b[j];
        }
        return total <= depth_;
    }

    long index(const std::vector<int>& a, const std::vector<int>& b) const {
        long idx = 0;
        for (int j = 0; j < n_; ++j) idx += static_cast<long>(a[j] - lo_) * sa_[j] + static_cast<long>(b[j]) * sb_[j];
        return idx;
    }

    long stride_a(int j) const { return sa_[j]; }
    long stride_b(int j) const { return sb_[j]; }

private:
    int N_, n_, depth_, lo_, hi_;
    std::vector<long> sa_, sb_;
    std::size_t size_ = 0;
};

// One A term in grid coordinates: nu = mu - e shifts a by +e_psi and b by +e_phi.
struct Shift {
    std::vector<int> da, db;
    long offset = 0;
    BigInt coeff;
};

std::vector<Shift> shifts_for(const Poly& A, const Grid& grid, int n, int max_psi, bool include_zero) {
    std::vector<std::pair<LinForm, const BigInt*>> sorted;
    for (const auto& [e, c] : A) {
        if (!include_zero && e.is_zero()) continue;
        bool keep = true;
        for (int v : e.psi2) keep = keep && std::abs(v) <= 2 * max_psi;
        if (keep) sorted.emplace_back(e, &c);
    }
    // Fixed order so that exact sums are formed identically on every run.
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<Shift> out;
    out.reserve(sorted.size());
    for (const auto& [e, c] : sorted) {
        Shift s;
        s.coeff = *c;
        for (int j = 0; j < n; ++j) {
            s.da.push_back(e.psi2[j] / 2);
            s.db.push_back(e.phi2[j] / 2);
            s.offset += s.da.back() * grid.stride_a(j) + s.db.back() * grid.stride_b(j);
        }
        out.push_back(std::move(s));
    }
    return out;
}

// sum_s A_s B_{mu - s}, with B read from the dense grid (zero outside it).
BigInt convolve(const std::vector<Shift>& shifts, const std::vector<BigInt>& B, const std::vector<char>& assigned,
                const Grid& grid, const std::vector<int>& a, const std::vector<int>& b, int lo, int hi) {
    const int n = static_cast<int>(a.size());
    BigInt total = 0;
    const long base = grid.index(a, b);
    for (const auto& s : shifts) {
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            const int na = a[j] + s.da[j];
            ok = na >= lo && na <= hi && b[j] + s.db[j] >= 0;
        }
        if (!ok) continue;
        const auto idx = static_cast<std::size_t>(base + s.offset);
        if (!assigned[idx])
            fail(ErrorCode::InconsistentRecursion, "recursion reached a coefficient that is not yet determined");
        if (B[idx] != 0) total += s.coeff * B[idx];
    }
    return total;
}

bool is_exceptional_o(const Weight& w, int N) {
    int negatives = 0;
    for (int j = 0; j < w.rank(); ++j) {
        if (std::abs(w.twice_m(j)) != N || w.twice_n(j) != N) return false;
        if (w.twice_m(j) < 0) ++negatives;
    }
    return negatives % 2 == 1;
}

std::string format_half(int twice) {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    const std::string mag = std::to_string(std::abs(twice) / 2) + ".5";
    return twice < 0 ? "-" + mag : mag;
}

struct Prepared {
    RootSystemData data;
    Weight lambda;
    std::vector<Weight> sweep;
    Grid grid;
    std::vector<BigInt> B;
    std::vector<char> assigned;
    Poly A;
};

void check_series_args(Family family, int N, int n, int depth) {
    if (family == Family::SO) fail(ErrorCode::InvalidArgument, "weight series exist for families O and USp only");
    validate(GroupSpec{family, N});
    if (n < 1) fail(ErrorCode::InvalidArgument, "series rank n must be >= 1");
    if (depth < 0) fail(ErrorCode::InvalidArgument, "series depth must be >= 0");
}

std::vector<Weight> sorted_sweep(std::vector<Weight> pts) {
    std::vector<std::pair<long, std::size_t>> keys;
    keys.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) keys.emplace_back(sweep_height(pts[i]), i);
    std::sort(keys.begin(), keys.end(), [&](const auto& x, const auto& y) {
        return sweeps_before(pts[x.second], x.first, pts[y.second], y.first);
    });
    std::vector<Weight> out;
    out.reserve(pts.size());
    for (const auto& k : keys) out.push_back(std::move(pts[k.second]));
    return out;
}

Prepared run_recursion(Family family, int N, int n, int depth) {
    check_series_args(family, N, n, depth);
    Prepared s{build_root_data(family, n),
               highest_weight(N, n),
               sorted_sweep(enumerate_total_degree(N, n, depth)),
               Grid(N, n, depth, 0, N),
               {},
               {},
               {}};
    s.A = expand_raw(s.data, depth, JFactors::full);
    s.B.assign(s.grid.size(), BigInt(0));
    s.assigned.assign(s.grid.size(), 0);
    const auto shifts = shifts_for(s.A, s.grid, n, N, false);

    for (const auto& mu : s.sweep) {
        const auto [a, b] = s.grid.coords(mu);
        const auto idx = static_cast<std::size_t>(s.grid.index(a, b));
        auto derive = [&] { return BigInt(-convolve(shifts, s.B, s.assigned, s.grid, a, b, 0, N)); };

        if (mu == s.lambda) {
            s.B[idx] = 1;
        } else if (family == Family::O && is_exceptional_o(mu, N)) {
            s.B[idx] = 0;
            if (mu != orbit_representative(family, mu) && !vanishing_test(mu, s.data, N) && derive() != 0)
                fail(ErrorCode::InconsistentRecursion,
                     "exceptional weight " + mu.to_string() + " re-derives to a nonzero coefficient");
        } else {
            const Weight rep = orbit_representative(family, mu);
            if (rep != mu) {
                const auto [ra, rb] = s.grid.coords(rep);
                const auto ridx = static_cast<std::size_t>(s.grid.index(ra, rb));
                if (!s.assigned[ridx])
                    fail(ErrorCode::InconsistentRecursion, "orbit representative of " + mu.to_string() +
                                                               " comes later in the sweep");
                s.B[idx] = s.B[ridx];
                if (!vanishing_test(mu, s.data, N)) {
                    const BigInt again = derive();
                    if (again != s.B[idx])
                        fail(ErrorCode::InconsistentRecursion,
                             "B at " + mu.to_string() + " is " + again.str() + " by recursion but " +
                                 s.B[idx].str() + " by W-invariance");
                }
            } else {
                if (vanishing_test(mu, s.data, N))
                    fail(ErrorCode::InconsistentRecursion,
                         "unexpected vanishing Casimir spectrum at " + mu.to_string());
                s.B[idx] = derive();
            }
        }
        s.assigned[idx] = 1;
    }
    return s;
}

}  // namespace

BigInt WeightSeries::coefficient(const LinForm& e) const {
    const auto it = index_.find(e);
    return it == index_.end() ? BigInt(0) : terms_[it->second].coeff;
}

std::size_t WeightSeries::nonzero_count() const {
    return static_cast<std::size_t>(
        std::count_if(terms_.begin(), terms_.end(), [](const Term& t) { return t.coeff != 0; }));
}

void WeightSeries::push_back(LinForm exponent, BigInt coeff) {
    if (index_.count(exponent) != 0)
        fail(ErrorCode::InvalidArgument, "duplicate exponent " + exponent.to_string() + " in weight series");
    index_.emplace(exponent, terms_.size());
    terms_.push_back(Term{std::move(exponent), std::move(coeff)});
}

long sweep_height(const LinForm& f) {
    const int n = f.rank();
    long h = 0;
    for (int k = 0; k < n; ++k) h += static_cast<long>(n - k) * f.psi2[k];
    for (int j = 0; j < n; ++j) h += static_cast<long>(3 * n - j) * f.phi2[j];
    return h;
}

Weight orbit_representative(Family family, const Weight& gamma) {
    const int n = gamma.rank();
    Weight rep = gamma;
    int negatives = 0;
    bool has_zero = false;
    for (int j = 0; j < n; ++j) {
        const int v = gamma.psi2[j];
        if (v < 0) ++negatives;
        if (v == 0) has_zero = true;
        rep.psi2[j] = std::abs(v);
    }
    std::sort(rep.psi2.begin(), rep.psi2.end(), std::greater<>());
    if (family == Family::O && negatives % 2 == 1 && !has_zero) rep.psi2[n - 1] = -rep.psi2[n - 1];
    std::sort(rep.phi2.begin(), rep.phi2.end(), std::greater<>());
    return rep;
}

std::vector<Weight> weyl_orbit(Family family, const Weight& gamma) {
    const int n = gamma.rank();
    std::vector<int> perm_psi(static_cast<std::size_t>(n));
    std::iota(perm_psi.begin(), perm_psi.end(), 0);
    std::vector<Weight> out;
    do {
        for (unsigned long signs = 0; signs < (1UL << n); ++signs) {
            if (family == Family::O && std::popcount(signs) % 2 != 0) continue;
            std::vector<int> p(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) p[k] = ((signs >> k) & 1UL ? -1 : 1) * gamma.psi2[perm_psi[k]];
            std::vector<int> phis = gamma.phi2;
            std::sort(phis.begin(), phis.end());
            do {
                out.push_back(LinForm{p, phis});
            } while (std::next_permutation(phis.begin(), phis.end()));
        }
    } while (std::next_permutation(perm_psi.begin(), perm_psi.end()));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

WeightSeries expand_J(const RootSystemData& data, int depth, JFactors factors) {
    Poly p = expand_raw(data, depth, factors);
    std::vector<LinForm> keys;
    keys.reserve(p.size());
    for (const auto& kv : p) keys.push_back(kv.first);
    // Order by phi-degree of c, then by descending sweep position.
    std::sort(keys.begin(), keys.end(), [](const LinForm& a, const LinForm& b) {
        const int da = phi_degree(a), db = phi_degree(b);
        if (da != db) return da < db;
        return sweeps_before(a, sweep_height(a), b, sweep_height(b));
    });
    WeightSeries out(SeriesWindow{0, data.n, depth});
    for (auto& k : keys) {
        BigInt c = p.at(k);
        out.push_back(std::move(k), std::move(c));
    }
    return out;
}

WeightSeries compute_B(Family family, int N, int n, int depth) {
    Prepared s = run_recursion(family, N, n, depth);
    WeightSeries out(SeriesWindow{N, n, depth});
    for (auto& mu : s.sweep) {
        const auto [a, b] = s.grid.coords(mu);
        BigInt c = s.B[static_cast<std::size_t>(s.grid.index(a, b))];
        out.push_back(std::move(mu), std::move(c));
    }
    return out;
}

SeriesEvaluation evaluate_series(const WeightSeries& B, std::span<const std::complex<double>> psi,
                                 std::span<const std::complex<double>> phi, std::optional<double> tolerance) {
    const auto& w = B.window();
    if (static_cast<int>(psi.size()) != w.n || static_cast<int>(phi.size()) != w.n)
        fail(ErrorCode::InvalidArgument, "psi and phi must have the series rank");
    double min_re_phi = std::numeric_limits<double>::infinity();
    double abs_im_psi = 0.0;
    for (const auto& f : phi) {
        if (!(f.real() > 0.0)) fail(ErrorCode::DomainError, "Re phi_j must be > 0");
        min_re_phi = std::min(min_re_phi, f.real());
    }
    for (const auto& s : psi) abs_im_psi += std::abs(s.imag());

    CompensatedSum sum;
    double magnitude = 0.0;
    std::size_t boundary_sites = 0;
    double max_boundary = 0.0;
    for (const auto& t : B.terms()) {
        int offset = 0;
        for (int j = 0; j < w.n; ++j) offset += (t.exponent.twice_n(j) - w.N) / 2;
        if (offset == w.depth) {
            ++boundary_sites;
            max_boundary = std::max(max_boundary, std::abs(t.coeff.convert_to<double>()));
        }
        if (t.coeff == 0) continue;
        const std::complex<double> term = t.coeff.convert_to<double>() * std::exp(t.exponent.evaluate(psi, phi));
        magnitude += std::abs(term);
        sum += term;
    }
    const double leading = 0.5 * w.N * w.n + w.depth;
    const double tail = static_cast<double>(boundary_sites) * max_boundary *
                            std::exp(-leading * min_re_phi + 0.5 * w.N * abs_im_psi) +
                        64.0 * std::numeric_limits<double>::epsilon() * magnitude;
    if (tolerance && tail > *tolerance)
        fail(ErrorCode::TailTooLarge, "series tail estimate " + std::to_string(tail) + " exceeds tolerance " +
                                          std::to_string(*tolerance));
    return SeriesEvaluation{sum.value(), tail};
}

CasimirReport verify_casimir(Family family, int N, int n, int depth, int lmax) {
    if (lmax < 1) fail(ErrorCode::InvalidArgument, "lmax must be >= 1");
    Prepared s = run_recursion(family, N, n, depth);

    CasimirReport report;
    report.family = family;
    report.N = N;
    report.n = n;
    report.depth = depth;
    report.lmax = lmax;

    // Checked region: the window with m_j allowed one group width beyond the
    // weight constraints, where B is zero and J chi must still have no support.
    const auto shifts = shifts_for(s.A, s.grid, n, 2 * N, true);
    std::vector<int> a(static_cast<std::size_t>(n), -N), b(static_cast<std::size_t>(n), 0);

    auto visit = [&](const std::vector<int>& aa, const std::vector<int>& bb) {
        std::vector<int> tm(static_cast<std::size_t>(n)), tn(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            tm[j] = N - 2 * aa[j];
            tn[j] = N + 2 * bb[j];
        }
        const Weight mu = LinForm::weight(tm, tn);
        const LinForm shifted = s.data.delta_half_supersum + mu;
        bool nonzero_e = false;
        for (int ell = 1; ell <= lmax && !nonzero_e; ++ell) nonzero_e = casimir_eigenvalue(ell, shifted) != 0;
        if (!nonzero_e) {
            report.skipped.push_back(mu);
            return;
        }
        ++report.checked;
        BigInt total = 0;
        for (const auto& sh : shifts) {
            std::vector<int> na(aa), nb(bb);
            for (int j = 0; j < n; ++j) {
                na[j] += sh.da[j];
                nb[j] += sh.db[j];
            }
            if (!s.grid.inside(na, nb)) continue;
            const auto idx = static_cast<std::size_t>(s.grid.index(na, nb));
            if (s.B[idx] != 0) total += sh.coeff * s.B[idx];
        }
        if (total != 0) report.violations.push_back(CasimirViolation{mu, total});
    };

    // Odometer over a in [-N, 2N]^n and b >= 0 with sum b <= depth.
    const auto total_b = [&] { return std::accumulate(b.begin(), b.end(), 0); };
    while (true) {
        if (total_b() <= depth) visit(a, b);
        int j = 0;
        for (; j < n; ++j) {
            if (++a[j] <= 2 * N) break;
            a[j] = -N;
        }
        if (j < n) continue;
        for (j = 0; j < n; ++j) {
            if (++b[j] <= depth) break;
            b[j] = 0;
        }
        if (j == n) break;
    }
    return report;
}

void write_coefficient_csv(std::ostream& out, const WeightSeries& B) {
    const int n = B.window().n;
    for (int j = 1; j <= n; ++j) out << 'm' << j << ',';
    for (int j = 1; j <= n; ++j) out << 'n' << j << ',';
    out << "numerator,denominator\n";
    for (const auto& t : B.terms()) {
        for (int j = 0; j < n; ++j) out << format_half(t.exponent.twice_m(j)) << ',';
        for (int j = 0; j < n; ++j) out << format_half(t.exponent.twice_n(j)) << ',';
        out << t.coeff.str() << ",1\n";
    }
}

}  // namespace ratioavg
