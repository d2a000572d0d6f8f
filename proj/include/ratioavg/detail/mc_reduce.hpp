#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ratioavg::detail {

// Welford moments for the real and imaginary parts of one statistic.
struct Moments {
    double count = 0.0;
    double mean_re = 0.0, m2_re = 0.0;
    double mean_im = 0.0, m2_im = 0.0;

    void add(std::complex<double> v) {
        count += 1.0;
        const double dr = v.real() - mean_re;
        mean_re += dr / count;
        m2_re += dr * (v.real() - mean_re);
        const double di = v.imag() - mean_im;
        mean_im += di / count;
        m2_im += di * (v.imag() - mean_im);
    }

    // Chan et al. pairwise update.
    void merge(const Moments& o) {
        if (o.count == 0.0) return;
        if (count == 0.0) {
            *this = o;
            return;
        }
        const double total = count + o.count;
        const double dr = o.mean_re - mean_re;
        const double di = o.mean_im - mean_im;
        mean_re += dr * o.count / total;
        mean_im += di * o.count / total;
        m2_re += o.m2_re + dr * dr * count * o.count / total;
        m2_im += o.m2_im + di * di * count * o.count / total;
        count = total;
    }
};

inline int resolve_workers(int workers) {
#ifdef _OPENMP
    return workers > 0 ? workers : omp_get_max_threads();
#else
    (void)workers;
    return 1;
#endif
}

// Calls body(index, slots) for every sample; slots has `width` Moments owned by
// the sample's block. Blocks are merged in order afterwards.
template <typename Body>
std::vector<Moments> reduce_blocks(std::uint64_t samples, std::size_t width, std::uint64_t block, int workers,
                                   bool parallel, Body&& body) {
    const std::uint64_t nblocks = (samples + block - 1) / block;
    std::vector<std::vector<Moments>> partial(nblocks, std::vector<Moments>(width));
    const long long nb = static_cast<long long>(nblocks);
    const int threads = resolve_workers(workers);
    (void)threads;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (parallel)
    for (long long b = 0; b < nb; ++b) {
        const std::uint64_t lo = static_cast<std::uint64_t>(b) * block;
        const std::uint64_t hi = std::min(samples, lo + block);
        for (std::uint64_t i = lo; i < hi; ++i) body(i, partial[static_cast<std::size_t>(b)]);
    }
    std::vector<Moments> total(width);
    for (const auto& p : partial)
        for (std::size_t s = 0; s < width; ++s) total[s].merge(p[s]);
    return total;
}

}  // namespace ratioavg::detail

namespace ratioavg {

namespace detail {
inline MCEstimate finish(const Moments& m, std::uint64_t seed) {
    MCEstimate e;
    e.mean = {m.mean_re, m.mean_im};
    e.samples = static_cast<std::uint64_t>(m.count);
    e.seed = seed;
    if (m.count > 1.0) {
        e.stderr_re = std::sqrt(m.m2_re / (m.count - 1.0) / m.count);
        e.stderr_im = std::sqrt(m.m2_im / (m.count - 1.0) / m.count);
    }
    return e;
}
}  // namespace detail

template <typename Statistic>
MCEstimate mc_statistic(const GroupSpec& group, std::uint64_t samples, std::uint64_t seed, int workers,
                        Statistic&& stat) {
    validate(group);
    auto moments = detail::reduce_blocks(samples, 1, kMCBlock, workers, true,
                                         [&](std::uint64_t i, std::vector<detail::Moments>& slot) {
                                             const GroupElement u = sample_at(group, seed, i);
                                             slot[0].add(std::complex<double>(stat(u)));
                                         });
    return detail::finish(moments[0], seed);
}

}  // namespace ratioavg
