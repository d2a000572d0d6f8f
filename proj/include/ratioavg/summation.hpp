#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>

namespace ratioavg {

/// Neumaier-compensated running sum of complex terms (real and imaginary
/// parts compensated independently).
class CompensatedSum {
public:
    void add(std::complex<double> v) {
        add_part(sum_re_, err_re_, v.real());
        add_part(sum_im_, err_im_, v.imag());
    }
    CompensatedSum& operator+=(std::complex<double> v) {
        add(v);
        return *this;
    }
    std::complex<double> value() const { return {sum_re_ + err_re_, sum_im_ + err_im_}; }

private:
    static void add_part(double& sum, double& err, double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            err += (sum - t) + v;
        else
            err += (v - t) + sum;
        sum = t;
    }

    double sum_re_ = 0.0, err_re_ = 0.0;
    double sum_im_ = 0.0, err_im_ = 0.0;
};

/// Pairwise reduction with compensated leaves. The reduction tree depends only
/// on terms.size(), never on how the terms were produced.
inline std::complex<double> pairwise_sum(std::span<const std::complex<double>> terms) {
    constexpr std::size_t leaf = 32;
    if (terms.size() <= leaf) {
        CompensatedSum s;
        for (auto v : terms) s += v;
        return s.value();
    }
    const std::size_t half = terms.size() / 2;
    return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

}  // namespace ratioavg
