#include "ratioavg/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_complex.hpp>

#include "ratioavg/error.hpp"
#include "ratioavg/rootsys.hpp"
#include "ratioavg/summation.hpp"
#include "ratioavg/weights.hpp"

namespace ratioavg {

namespace {

using cplx = std::complex<double>;

constexpr double kRichardsonStep = 1e-4;
// Term-magnitude to result ratio above which double rounding is not trusted.
constexpr double kCancellationLimit = 64.0;

using ExtendedComplex = boost::multiprecision::cpp_complex_quad;

cplx ipow(cplx z, int e) {
    cplx r{1.0, 0.0};
    for (; e > 0; e >>= 1, z *= z)
        if (e & 1) r *= z;
    return r;
}

struct RawSum {
    cplx value{0.0, 0.0};
    // Smallest |1 - z| / max(1, |z|) over the term denominators.
    double min_denominator = std::numeric_limits<double>::infinity();
    // Sum of term magnitudes; large against |value| means heavy cancellation.
    double magnitude = 0.0;
};

void track(RawSum& r, cplx z) {
    const double rel = std::abs(1.0 - z) / std::max(1.0, std::abs(z));
    r.min_denominator = std::min(r.min_denominator, rel);
}

bool degenerate(const RawSum& r) {
    return !(r.min_denominator >= kDegenerateTolerance) || !std::isfinite(r.value.real()) ||
           !std::isfinite(r.value.imag());
}

double condition_of(const RawSum& r) { return 1.0 / r.min_denominator; }

bool needs_extended(const RawSum& r) {
    return r.magnitude > kCancellationLimit * std::max(1.0, std::abs(r.value));
}

template <typename C>
C lift(cplx z) {
    return C(z.real(), z.imag());
}

template <typename C>
cplx lower(const C& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <typename C>
C ipow_t(C z, int e) {
    C r(1.0, 0.0);
    for (; e > 0; e >>= 1, z *= z)
        if (e & 1) r *= z;
    return r;
}

// Sign-configuration sum in scalar type C; terms in coset order. When `out`
// is given, denominators and term magnitudes are recorded in it.
template <typename C>
C sign_sum_in(Family family, int N, std::span<const cplx> x, std::span<const cplx> y, RawSum* out) {
    const int p = static_cast<int>(x.size());
    const int q = static_cast<int>(y.size());
    const bool usp = family == Family::USp;
    const C one(1.0, 0.0);

    std::vector<C> xs, ys;
    for (const auto& v : x) xs.push_back(lift<C>(v));
    for (const auto& v : y) ys.push_back(lift<C>(v));

    C y_den = one;
    for (int l = 0; l < q; ++l)
        for (int m = usp ? l + 1 : l; m < q; ++m) {
            const C z = ys[l] * ys[m];
            if (out) track(*out, lower(z));
            y_den *= one - z;
        }

    std::vector<C> terms;
    std::vector<C> xe(static_cast<std::size_t>(p));
    const unsigned long total = 1UL << p;
    for (unsigned long code = 0; code < total; ++code) {
        int flips = 0;
        C pre = one;
        for (int k = 0; k < p; ++k) {
            const bool flip = (code >> (p - 1 - k)) & 1UL;
            xe[k] = flip ? C(one / xs[k]) : xs[k];
            if (flip) {
                ++flips;
                pre *= ipow_t<C>(usp ? xs[k] : C(-xs[k]), N);
            }
        }
        if (family == Family::O && flips % 2 != 0) continue;

        C num = pre;
        for (int k = 0; k < p; ++k)
            for (int l = 0; l < q; ++l) num *= one - xe[k] * ys[l];
        C den = y_den;
        for (int k = 0; k < p; ++k)
            for (int kk = usp ? k : k + 1; kk < p; ++kk) {
                const C z = xe[k] * xe[kk];
                if (out) track(*out, lower(z));
                den *= one - z;
            }
        terms.push_back(num / den);
    }
    if constexpr (std::is_same_v<C, cplx>) {
        if (out)
            for (const auto& t : terms) out->magnitude += std::abs(t);
        return pairwise_sum(terms);
    } else {
        C sum(0.0, 0.0);
        for (const auto& t : terms) sum += t;
        return sum;
    }
}

// Double evaluation, redone in 113-bit precision when the terms cancel heavily.
RawSum sign_sum(Family family, int N, std::span<const cplx> x, std::span<const cplx> y) {
    RawSum out;
    out.value = sign_sum_in<cplx>(family, N, x, y, &out);
    if (!degenerate(out) && needs_extended(out)) out.value = lower(sign_sum_in<ExtendedComplex>(family, N, x, y, nullptr));
    return out;
}

// Value of a linear form in scalar type C.
template <typename C>
C form_value(const LinForm& f, std::span<const cplx> psi, std::span<const cplx> phi) {
    C v(0.0, 0.0);
    for (std::size_t j = 0; j < psi.size(); ++j) {
        v += C(0.0, 0.5 * f.psi2[j]) * lift<C>(psi[j]);
        v += C(0.5 * f.phi2[j], 0.0) * lift<C>(phi[j]);
    }
    return v;
}

// Coset sum of e^{w lambda} prod (1 - e^{-w beta}) / prod (1 - e^{-w alpha}).
template <typename C>
C coset_sum_in(const RootSystemData& data, const std::vector<SignConfig>& cosets, const Weight& lambda,
               std::span<const cplx> psi, std::span<const cplx> phi, RawSum* out) {
    using std::exp;
    const C one(1.0, 0.0);
    std::vector<C> terms;
    terms.reserve(cosets.size());
    for (const auto& w : cosets) {
        C term = exp(form_value<C>(apply_sign_config(w, lambda), psi, phi));
        for (const auto& beta : data.delta_lambda_odd)
            term *= one - exp(C(-form_value<C>(apply_sign_config(w, beta), psi, phi)));
        for (const auto& alpha : data.delta_lambda_even) {
            const C z = exp(C(-form_value<C>(apply_sign_config(w, alpha), psi, phi)));
            if (out) track(*out, lower(z));
            term /= one - z;
        }
        terms.push_back(term);
    }
    if constexpr (std::is_same_v<C, cplx>) {
        if (out)
            for (const auto& t : terms) out->magnitude += std::abs(t);
        return pairwise_sum(terms);
    } else {
        C sum(0.0, 0.0);
        for (const auto& t : terms) sum += t;
        return sum;
    }
}

// Evaluates f(0) for a function holomorphic across a removable singularity:
// symmetric averages at +-h, +-2h cancel odd orders, Richardson removes h^2.
template <typename Eval>
EvalResult regularize(Eval&& eval_at) {
    double worst = 0.0;
    auto sym = [&](double h) {
        const RawSum a = eval_at(h);
        const RawSum b = eval_at(-h);
        if (degenerate(a) || degenerate(b))
            fail(ErrorCode::DegenerateConfiguration,
                 "term denominators stay singular after phase rotation");
        worst = std::max({worst, condition_of(a), condition_of(b)});
        return 0.5 * (a.value + b.value);
    };
    const cplx g1 = sym(kRichardsonStep);
    const cplx g2 = sym(2.0 * kRichardsonStep);
    return EvalResult{(4.0 * g1 - g2) / 3.0, true, worst};
}

void check_group(Family family, int N) { validate(GroupSpec{family, N}); }

void check_range(Family family, int N, int p, int q) {
    if (!in_validity_range(family, N, p, q))
        fail(ErrorCode::RangeViolation,
             std::string(to_string(family)) + "_" + std::to_string(N) + " closed form needs q - p <= " +
                 std::to_string(family == Family::USp ? N + 1 : N - 1) + ", got p = " + std::to_string(p) +
                 ", q = " + std::to_string(q));
}

}  // namespace

void TorusPoint::validate() const {
    for (const auto& v : x) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            fail(ErrorCode::DomainError, "non-finite x entry");
        if (v == cplx{0.0, 0.0}) fail(ErrorCode::DomainError, "x_k = 0 is outside the torus");
    }
    for (const auto& v : y) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            fail(ErrorCode::DomainError, "non-finite y entry");
        if (!(std::abs(v) < 1.0)) fail(ErrorCode::DomainError, "|y_l| must be < 1 (Re phi_l > 0)");
    }
    for (std::size_t l = 0; l < y.size(); ++l)
        for (std::size_t m = l; m < y.size(); ++m)
            if (y[l] * y[m] == cplx{1.0, 0.0}) fail(ErrorCode::DomainError, "y_l y_l' = 1");
}

bool in_validity_range(Family family, int N, int p, int q) {
    if (p < 0 || q < 0) return false;
    return family == Family::USp ? q - p <= N + 1 : q - p <= N - 1;
}

EvalResult ratio_average(Family family, int N, const TorusPoint& pt) {
    check_group(family, N);
    pt.validate();
    check_range(family, N, pt.p(), pt.q());

    const RawSum plain = sign_sum(family, N, pt.x, pt.y);
    if (!degenerate(plain)) return EvalResult{plain.value, false, condition_of(plain)};

    std::vector<cplx> shifted(pt.x.size());
    return regularize([&](double h) {
        for (std::size_t k = 0; k < pt.x.size(); ++k)
            shifted[k] = pt.x[k] * std::polar(1.0, static_cast<double>(k + 1) * h);
        return sign_sum(family, N, shifted, pt.y);
    });
}

std::complex<double> highest_weight_exponential(int N, std::span<const cplx> psi,
                                                std::span<const cplx> phi) {
    const int n = static_cast<int>(psi.size());
    return std::exp(highest_weight(N, n).evaluate(psi, phi));
}

EvalResult character_chi(Family family, int N, std::span<const cplx> psi, std::span<const cplx> phi) {
    if (family == Family::SO)
        fail(ErrorCode::InvalidArgument, "character_chi is defined for families O and USp");
    check_group(family, N);
    if (psi.size() != phi.size() || psi.empty())
        fail(ErrorCode::InvalidArgument, "character_chi needs psi and phi of equal length n >= 1");
    for (const auto& f : phi)
        if (!(f.real() > 0.0)) fail(ErrorCode::DomainError, "Re phi_j must be > 0");
    for (const auto& s : psi)
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) fail(ErrorCode::DomainError, "non-finite psi");

    const int n = static_cast<int>(psi.size());
    const RootSystemData data = build_root_data(family, n);
    const auto cosets = enumerate_cosets(family, n);
    const Weight lambda = highest_weight(N, n);

    auto coset_sum = [&](std::span<const cplx> ps) {
        RawSum out;
        out.value = coset_sum_in<cplx>(data, cosets, lambda, ps, phi, &out);
        if (!degenerate(out) && needs_extended(out))
            out.value = lower(coset_sum_in<ExtendedComplex>(data, cosets, lambda, ps, phi, nullptr));
        return out;
    };

    const RawSum plain = coset_sum(psi);
    if (!degenerate(plain)) return EvalResult{plain.value, false, condition_of(plain)};

    // x_j -> x_j e^{i j h} corresponds to psi_j -> psi_j - j h.
    std::vector<cplx> shifted(psi.size());
    return regularize([&](double h) {
        for (std::size_t j = 0; j < psi.size(); ++j) shifted[j] = psi[j] - static_cast<double>(j + 1) * h;
        return coset_sum(shifted);
    });
}

EvalResult so_from_o(int N, const TorusPoint& pt) {
    if (pt.p() < 1) fail(ErrorCode::InvalidArgument, "so_from_o needs p >= 1");
    check_group(Family::SO, N);
    pt.validate();
    check_range(Family::SO, N, pt.p(), pt.q());

    const EvalResult direct = ratio_average(Family::O, N, pt);
    TorusPoint flipped = pt;
    flipped.x[0] = 1.0 / pt.x[0];
    const EvalResult reflected = ratio_average(Family::O, N, flipped);

    // The identity holds for e^{lambda_N}-normalised averages; e^{lambda(t')}/e^{lambda(t)} = x_1^N.
    const cplx weight = ipow(-pt.x[0], N);
    return EvalResult{direct.value + weight * reflected.value, direct.regularized || reflected.regularized,
                      std::max(direct.condition_estimate, reflected.condition_estimate)};
}

TorusPoint torus_point_from_logs(std::span<const cplx> psi, std::span<const cplx> phi) {
    constexpr cplx I{0.0, 1.0};
    TorusPoint pt;
    for (const auto& s : psi) pt.x.push_back(std::exp(-I * s));
    for (const auto& f : phi) pt.y.push_back(std::exp(-f));
    return pt;
}

}  // namespace ratioavg
