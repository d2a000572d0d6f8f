#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>

#include "internal.hpp"

namespace ratioavg::cli {

namespace {

double parse_real(std::string_view s, std::string_view whole) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        fail(ErrorCode::InvalidArgument, "cannot parse complex number '" + std::string(whole) + "'");
    return v;
}

std::vector<std::complex<double>> parse_list(const std::vector<std::string>& tokens) {
    std::vector<std::complex<double>> out;
    for (const auto& t : tokens) out.push_back(parse_complex(t));
    return out;
}

std::optional<Command> parse_command(std::string_view s) {
    for (Command c : {Command::eval, Command::chi, Command::mc, Command::quad, Command::expand, Command::verify,
                      Command::batch})
        if (s == to_string(c)) return c;
    return std::nullopt;
}

}  // namespace

std::string_view to_string(Command c) {
    switch (c) {
    case Command::eval: return "eval";
    case Command::chi: return "chi";
    case Command::mc: return "mc";
    case Command::quad: return "quad";
    case Command::expand: return "expand";
    case Command::verify: return "verify";
    case Command::batch: return "batch";
    }
    return "?";
}

int exit_code_for(ErrorCode code) { return code == ErrorCode::RangeViolation ? kRangeError : kInputError; }

std::complex<double> parse_complex(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) fail(ErrorCode::InvalidArgument, "empty complex number");
    if (s.front() == '(') {
        if (s.back() != ')') fail(ErrorCode::InvalidArgument, "unbalanced parentheses in '" + std::string(text) + "'");
        const auto inner = s.substr(1, s.size() - 2);
        const auto comma = inner.find(',');
        if (comma == std::string_view::npos) return {parse_real(inner, text), 0.0};
        return {parse_real(inner.substr(0, comma), text), parse_real(inner.substr(comma + 1), text)};
    }
    if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};
    s.remove_suffix(1);
    // Split at the last sign that is not a leading sign or an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    auto imag_of = [&](std::string_view t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t, text);
    };
    if (split == std::string_view::npos) return {0.0, imag_of(s)};
    return {parse_real(s.substr(0, split), text), imag_of(s.substr(split))};
}

int default_workers() {
    const char* env = std::getenv("RATIOAVG_WORKERS");
    if (!env) return 0;
    int v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return (ec == std::errc() && ptr == s.data() + s.size() && v > 0) ? v : 0;
}

int resolved_workers(const JobSpec& job) { return job.workers > 0 ? job.workers : default_workers(); }

int run(const JobSpec& job, std::ostream& out) {
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    };
    try {
        CommandResult r;
        switch (job.command) {
        case Command::eval: r = run_eval(job); break;
        case Command::chi: r = run_chi(job); break;
        case Command::mc: r = run_mc(job); break;
        case Command::quad: r = run_quad(job); break;
        case Command::expand: r = run_expand(job); break;
        case Command::verify: r = run_verify(job); break;
        case Command::batch: r = run_batch(job); break;
        }
        write_report(out, job, r, elapsed());
        return r.exit_code;
    } catch (const Error& e) {
        write_error(out, job, e.code(), e.what(), elapsed());
        return exit_code_for(e.code());
    }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Haar averages of characteristic-polynomial ratios over O_N, SO_N and USp_N"};
    app.require_subcommand(1, 1);

    JobSpec job;
    job.workers = default_workers();
    std::string family, format = "json", run_as = "eval";
    std::vector<std::string> xs, ys, psis, phis;

    auto add_group = [&](CLI::App* sub) {
        sub->add_option("--family", family, "O, SO or USp")->required();
        sub->add_option("--N", job.N, "matrix dimension")->required();
    };
    auto add_point = [&](CLI::App* sub) {
        sub->add_option("--x", xs, "numerator parameters x_k (a, a+bi or (a,b))");
        sub->add_option("--y", ys, "denominator parameters y_l, |y_l| < 1");
        sub->add_option("--psi", psis, "logarithmic coordinates psi_k, x_k = exp(-i psi_k)");
        sub->add_option("--phi", phis, "logarithmic coordinates phi_l, y_l = exp(-phi_l)");
        sub->add_option("--p", job.p, "number of x parameters (checked)");
        sub->add_option("--q", job.q, "number of y parameters (checked)");
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_mc = [&](CLI::App* sub) {
        sub->add_option("--samples", job.samples, "Monte Carlo sample count");
        sub->add_option("--seed", job.seed, "random seed");
        sub->add_option("--workers", job.workers, "worker threads (default RATIOAVG_WORKERS)");
    };

    auto* eval = app.add_subcommand("eval", "closed-form ratio average");
    add_group(eval);
    add_point(eval);
    add_format(eval);

    auto* chi = app.add_subcommand("chi", "character chi at (psi, phi)");
    add_group(chi);
    add_point(chi);
    add_format(chi);
    chi->add_option("--depth", job.depth, "series depth when --tolerance is given");
    chi->add_option("--tolerance", job.tolerance, "evaluate the weight series and fail above this tail estimate");

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate over Haar samples");
    add_group(mc);
    add_point(mc);
    add_format(mc);
    add_mc(mc);

    auto* quad = app.add_subcommand("quad", "Weyl-integration quadrature oracle");
    add_group(quad);
    add_point(quad);
    add_format(quad);
    quad->add_option("--nodes", job.nodes, "Gauss-Legendre nodes per angle");

    auto* expand = app.add_subcommand("expand", "weight-series coefficient table B");
    add_group(expand);
    add_format(expand);
    expand->add_option("--n,--rank", job.n, "rank n");
    expand->add_option("--depth", job.depth, "total-degree depth D");

    auto* verify = app.add_subcommand("verify", "cross-check closed form, quadrature, Monte Carlo and series");
    add_format(verify);
    verify->add_flag("--quick", "seconds-scale tier (default)");
    verify->add_flag("--full", job.full, "minutes-scale tier");
    verify->add_option("--workers", job.workers, "worker threads (default RATIOAVG_WORKERS)");

    auto* batch = app.add_subcommand("batch", "evaluate every row of a parameter CSV");
    add_format(batch);
    add_mc(batch);
    batch->add_option("input", job.input, "CSV file, '-' for standard input");
    batch->add_option("--run", run_as, "eval, quad or mc")->check(CLI::IsMember({"eval", "quad", "mc"}));
    batch->add_option("--nodes", job.nodes, "Gauss-Legendre nodes per angle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        json doc{{"error", {{"code", "InvalidArgument"}, {"message", e.what()}}}};
        out << doc.dump(2) << '\n';
        return kInputError;
    }

    for (auto* sub : app.get_subcommands()) job.command = *parse_command(sub->get_name());
    job.format = format == "csv" ? Format::csv : Format::json;
    job.batch_command = *parse_command(run_as);
    try {
        if (!family.empty()) {
            job.family = parse_family(family);
            if (!job.family) fail(ErrorCode::InvalidArgument, "unknown family '" + family + "'");
        }
        job.x = parse_list(xs);
        job.y = parse_list(ys);
        job.psi = parse_list(psis);
        job.phi = parse_list(phis);
    } catch (const Error& e) {
        write_error(out, job, e.code(), e.what(), 0.0);
        return exit_code_for(e.code());
    }
    return run(job, out);
}

}  // namespace ratioavg::cli
