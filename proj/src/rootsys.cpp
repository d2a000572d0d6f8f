#include "ratioavg/rootsys.hpp"

#include <algorithm>

#include "ratioavg/error.hpp"

namespace ratioavg {

namespace {

LinForm half_supersum(const std::vector<LinForm>& even, const std::vector<LinForm>& odd, int n) {
    // Roots have even stored entries, so sum/2 in doubled storage is the sum of
    // the undoubled entries; no rounding happens here.
    LinForm sum = LinForm::zero(n);
    for (const auto& a : even) sum += a;
    for (const auto& b : odd) sum -= b;
    for (int& v : sum.psi2) v /= 2;
    for (int& v : sum.phi2) v /= 2;
    return sum;
}

}  // namespace

int SignConfig::flip_count() const {
    return static_cast<int>(std::count(flips.begin(), flips.end(), true));
}

std::string SignConfig::to_string() const {
    std::string s;
    s.reserve(flips.size());
    for (bool f : flips) s.push_back(f ? '-' : '+');
    return s;
}

LinForm lambda_one(int n) {
    LinForm f = LinForm::zero(n);
    for (int j = 0; j < n; ++j) {
        f.psi2[static_cast<std::size_t>(j)] = 1;
        f.phi2[static_cast<std::size_t>(j)] = -1;
    }
    return f;
}

RootSystemData build_root_data(Family family, int n) {
    if (family == Family::SO)
        fail(ErrorCode::InvalidArgument, "root data exists for families O and USp only");
    if (n < 1) fail(ErrorCode::InvalidArgument, "root data needs rank n >= 1");

    RootSystemData d;
    d.family = family;
    d.n = n;
    const bool usp = family == Family::USp;
    auto ipsi = [n](int j) { return LinForm::psi(n, j); };
    auto phi = [n](int j) { return LinForm::phi(n, j); };

    // lambda-positive even roots: i psi_j + i psi_k and phi_j + phi_k, with the
    // diagonal j = k present on the psi side for USp and on the phi side for O.
    for (int j = 0; j < n; ++j)
        for (int k = usp ? j : j + 1; k < n; ++k) d.delta_lambda_even.push_back(ipsi(j) + ipsi(k));
    for (int j = 0; j < n; ++j)
        for (int k = usp ? j + 1 : j; k < n; ++k) d.delta_lambda_even.push_back(phi(j) + phi(k));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) d.delta_lambda_odd.push_back(ipsi(j) + phi(k));

    // gl(U) sector: i psi_j - i psi_k, phi_j - phi_k (j < k); phi_j - i psi_k.
    d.positive_even = d.delta_lambda_even;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) d.positive_even.push_back(ipsi(j) - ipsi(k));
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) d.positive_even.push_back(phi(j) - phi(k));
    d.positive_odd = d.delta_lambda_odd;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) d.positive_odd.push_back(phi(j) - ipsi(k));

    for (int j = 0; j + 1 < n; ++j) d.simple_roots.push_back(phi(j) - phi(j + 1));
    d.simple_roots.push_back(phi(n - 1) - ipsi(0));
    for (int j = 0; j + 1 < n; ++j) d.simple_roots.push_back(ipsi(j) - ipsi(j + 1));
    if (usp) {
        d.simple_roots.push_back(2 * ipsi(n - 1));
    } else if (n >= 2) {
        d.simple_roots.push_back(ipsi(n - 2) + ipsi(n - 1));
    } else {
        d.simple_roots_complete = false;
    }

    d.delta_half_supersum = half_supersum(d.positive_even, d.positive_odd, n);
    d.delta_prime = half_supersum(d.delta_lambda_even, d.delta_lambda_odd, n);
    return d;
}

std::vector<SignConfig> enumerate_cosets(Family family, int n) {
    if (family == Family::SO)
        fail(ErrorCode::InvalidArgument, "cosets exist for families O and USp only");
    if (n < 1) fail(ErrorCode::InvalidArgument, "cosets need rank n >= 1");
    if (n > 30) fail(ErrorCode::InvalidArgument, "rank too large to enumerate sign configurations");

    std::vector<SignConfig> out;
    const unsigned long total = 1UL << n;
    for (unsigned long code = 0; code < total; ++code) {
        SignConfig w;
        w.flips.resize(static_cast<std::size_t>(n));
        // Most significant bit is slot 0, so increasing codes are lexicographic.
        for (int j = 0; j < n; ++j) w.flips[static_cast<std::size_t>(j)] = (code >> (n - 1 - j)) & 1UL;
        if (family == Family::O && !w.even()) continue;
        out.push_back(std::move(w));
    }
    return out;
}

LinForm apply_sign_config(const SignConfig& w, const LinForm& f) {
    if (w.flips.size() != f.psi2.size())
        fail(ErrorCode::InvalidArgument, "sign configuration and linear form differ in rank");
    LinForm g = f;
    for (std::size_t j = 0; j < w.flips.size(); ++j)
        if (w.flips[j]) g.psi2[j] = -g.psi2[j];
    return g;
}

}  // namespace ratioavg
