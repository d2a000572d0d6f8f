#include "ratioavg/weights.hpp"

#include <cstdlib>
#include <functional>

#include "ratioavg/error.hpp"

namespace ratioavg {

namespace {

bool same_parity(int twice, int N) { return (twice - N) % 2 == 0; }

// Enumerates m in [-N/2, N/2]^n and n-offsets accepted by `keep`.
template <typename Keep>
std::vector<Weight> enumerate(int N, int n, int max_offset, Keep keep) {
    if (N < 1 || n < 1 || max_offset < 0)
        fail(ErrorCode::InvalidArgument, "window needs N >= 1, n >= 1, depth >= 0");
    std::vector<Weight> out;
    std::vector<int> tm(static_cast<std::size_t>(n), -N);
    std::vector<int> off(static_cast<std::size_t>(n), 0);
    // Odometer over the m grid, then over the n offsets.
    std::function<void(int)> over_n = [&](int j) {
        if (j == n) {
            if (!keep(off)) return;
            std::vector<int> tn(off.size());
            for (std::size_t k = 0; k < off.size(); ++k) tn[k] = N + 2 * off[k];
            out.push_back(LinForm::weight(tm, tn));
            return;
        }
        for (int o = 0; o <= max_offset; ++o) {
            off[static_cast<std::size_t>(j)] = o;
            over_n(j + 1);
        }
    };
    std::function<void(int)> over_m = [&](int j) {
        if (j == n) {
            over_n(0);
            return;
        }
        for (int v = -N; v <= N; v += 2) {
            tm[static_cast<std::size_t>(j)] = v;
            over_m(j + 1);
        }
    };
    over_m(0);
    return out;
}

}  // namespace

Weight highest_weight(int N, int n) {
    if (N < 1 || n < 1) fail(ErrorCode::InvalidArgument, "highest_weight needs N >= 1, n >= 1");
    return LinForm::weight(std::vector<int>(static_cast<std::size_t>(n), N),
                           std::vector<int>(static_cast<std::size_t>(n), N));
}

bool on_lattice(const Weight& gamma, int N) {
    for (int j = 0; j < gamma.rank(); ++j)
        if (!same_parity(gamma.twice_m(j), N) || !same_parity(gamma.twice_n(j), N)) return false;
    return true;
}

bool satisfies_constraints(const Weight& gamma, int N) {
    for (int j = 0; j < gamma.rank(); ++j) {
        if (std::abs(gamma.twice_m(j)) > N) return false;
        if (gamma.twice_n(j) < N) return false;
    }
    return true;
}

Rational casimir_eigenvalue(int ell, const LinForm& e) {
    if (ell < 1) fail(ErrorCode::InvalidArgument, "Casimir index l must be >= 1");
    const unsigned power = 2U * static_cast<unsigned>(ell);
    BigInt doubled_sum = 0;
    for (std::size_t k = 0; k < e.psi2.size(); ++k) {
        doubled_sum += boost::multiprecision::pow(BigInt(e.psi2[k]), power);
        doubled_sum -= boost::multiprecision::pow(BigInt(e.phi2[k]), power);
    }
    // Undo the doubling: each term carries 2^{2l}.
    Rational value(doubled_sum, boost::multiprecision::pow(BigInt(2), power));
    return ell % 2 == 0 ? value : Rational(-value);
}

bool vanishing_test(const Weight& gamma, const RootSystemData& data, int N) {
    (void)N;
    const LinForm shifted = data.delta_half_supersum + gamma;
    for (int ell = 1; ell <= data.n; ++ell)
        if (casimir_eigenvalue(ell, shifted) != 0) return false;
    return true;
}

Weight exceptional_weight(int N, int n, int j) {
    Weight w = highest_weight(N, n);
    w.psi2.at(static_cast<std::size_t>(j)) = -N;
    return w;
}

std::vector<Weight> enumerate_box(int N, int n, int depth) {
    return enumerate(N, n, depth, [](const std::vector<int>&) { return true; });
}

std::vector<Weight> enumerate_total_degree(int N, int n, int depth) {
    return enumerate(N, n, depth, [depth](const std::vector<int>& off) {
        int total = 0;
        for (int o : off) total += o;
        return total <= depth;
    });
}

}  // namespace ratioavg
