#include <cmath>
#include <sstream>

#include "internal.hpp"
#include "ratioavg/haar.hpp"
#include "ratioavg/quad.hpp"
#include "ratioavg/series.hpp"

namespace ratioavg::cli {

namespace {

using cplx = std::complex<double>;

void check_count(const std::optional<int>& declared, std::size_t actual, const char* name) {
    if (declared && *declared != static_cast<int>(actual))
        fail(ErrorCode::InvalidArgument, std::string("--") + name + " = " + std::to_string(*declared) + " but " +
                                             std::to_string(actual) + " values were given");
}

json eval_fields(const EvalResult& r) {
    return json{{"value", complex_json(r.value)},
                {"regularized", r.regularized},
                {"condition_estimate", r.condition_estimate}};
}

}  // namespace

GroupSpec require_group(const JobSpec& job) {
    if (!job.family) fail(ErrorCode::InvalidArgument, "--family is required");
    GroupSpec g{*job.family, job.N};
    validate(g);
    return g;
}

TorusPoint require_point(const JobSpec& job) {
    if (!job.x.empty() && !job.psi.empty()) fail(ErrorCode::InvalidArgument, "give either --x or --psi, not both");
    if (!job.y.empty() && !job.phi.empty()) fail(ErrorCode::InvalidArgument, "give either --y or --phi, not both");
    TorusPoint pt;
    pt.x = job.x;
    pt.y = job.y;
    if (!job.psi.empty() || !job.phi.empty()) {
        const TorusPoint from_logs = torus_point_from_logs(job.psi, job.phi);
        if (!job.psi.empty()) pt.x = from_logs.x;
        if (!job.phi.empty()) pt.y = from_logs.y;
    }
    check_count(job.p, pt.x.size(), "p");
    check_count(job.q, pt.y.size(), "q");
    pt.validate();
    return pt;
}

CommandResult run_eval(const JobSpec& job) {
    const GroupSpec g = require_group(job);
    return {eval_fields(ratio_average(g.family, g.N, require_point(job))), {}, kOk};
}

CommandResult run_chi(const JobSpec& job) {
    const GroupSpec g = require_group(job);
    std::vector<cplx> psi = job.psi, phi = job.phi;
    if (psi.empty() != phi.empty()) fail(ErrorCode::InvalidArgument, "chi needs both --psi and --phi");
    if (psi.empty()) {
        // Recovering psi from x picks a branch; harmless only when N is even.
        if (g.N % 2 != 0) fail(ErrorCode::InvalidArgument, "odd-N chi requires --psi and --phi, not --x and --y");
        for (const auto& x : job.x) {
            if (x == cplx{0.0, 0.0}) fail(ErrorCode::DomainError, "x_k = 0 is outside the torus");
            psi.push_back(cplx{0.0, 1.0} * std::log(x));
        }
        for (const auto& y : job.y) {
            if (y == cplx{0.0, 0.0}) fail(ErrorCode::DomainError, "y_l = 0 has no logarithm");
            phi.push_back(-std::log(y));
        }
    }
    if (psi.size() != phi.size() || psi.empty())
        fail(ErrorCode::InvalidArgument, "chi needs p = q = n >= 1 coordinates");
    check_count(job.p, psi.size(), "p");
    check_count(job.q, phi.size(), "q");

    CommandResult r{eval_fields(character_chi(g.family, g.N, psi, phi)), {}, kOk};
    if (job.tolerance) {
        const WeightSeries B = compute_B(g.family, g.N, static_cast<int>(psi.size()), job.depth);
        const SeriesEvaluation s = evaluate_series(B, psi, phi, job.tolerance);
        r.fields["series_value"] = complex_json(s.value);
        r.fields["tail_estimate"] = s.tail_estimate;
    }
    return r;
}

CommandResult run_mc(const JobSpec& job) {
    const GroupSpec g = require_group(job);
    const TorusPoint pt = require_point(job);
    const MCEstimate e = mc_estimate(g, pt, job.samples, job.seed, resolved_workers(job));
    return {json{{"value", complex_json(e.mean)}, {"stderr", json{{"re", e.stderr_re}, {"im", e.stderr_im}}}},
            {},
            kOk};
}

CommandResult run_quad(const JobSpec& job) {
    const GroupSpec g = require_group(job);
    const TorusPoint pt = require_point(job);
    return {json{{"value", complex_json(quad_average(QuadSpec{g.family, g.N, job.nodes}, pt))}}, {}, kOk};
}

CommandResult run_expand(const JobSpec& job) {
    const GroupSpec g = require_group(job);
    const WeightSeries B = compute_B(g.family, g.N, job.n, job.depth);
    CommandResult r;
    json table = json::array();
    for (const auto& t : B.terms()) {
        json m = json::array(), n = json::array();
        for (int j = 0; j < job.n; ++j) {
            m.push_back(0.5 * t.exponent.twice_m(j));
            n.push_back(0.5 * t.exponent.twice_n(j));
        }
        table.push_back(json{{"m", m}, {"n", n}, {"numerator", t.coeff.str()}, {"denominator", "1"}});
    }
    r.fields["table"] = std::move(table);
    std::ostringstream csv;
    write_coefficient_csv(csv, B);
    r.csv = csv.str();
    return r;
}

}  // namespace ratioavg::cli
