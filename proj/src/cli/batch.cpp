#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "internal.hpp"
#include "ratioavg/haar.hpp"
#include "ratioavg/quad.hpp"

namespace ratioavg::cli {

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) {
        while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
        while (!field.empty() && field.front() == ' ') field.erase(field.begin());
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

template <typename T>
T parse_number(const std::string& s, const std::string& column) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        fail(ErrorCode::InvalidArgument, "column " + column + ": cannot parse '" + s + "'");
    return v;
}

struct Columns {
    std::vector<std::string> names;

    std::size_t find(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        fail(ErrorCode::InvalidArgument, "header has no column " + name);
    }
};

struct RowJob {
    GroupSpec group{Family::O, 0};
    TorusPoint pt;
};

RowJob parse_row(const Columns& cols, const std::vector<std::string>& f) {
    auto field = [&](const std::string& name) -> const std::string& {
        const std::size_t i = cols.find(name);
        if (i >= f.size() || f[i].empty()) fail(ErrorCode::InvalidArgument, "missing value for " + name);
        return f[i];
    };
    RowJob r;
    const auto fam = parse_family(field("family"));
    if (!fam) fail(ErrorCode::InvalidArgument, "unknown family '" + field("family") + "'");
    r.group = {*fam, parse_number<int>(field("N"), "N")};
    const int p = parse_number<int>(field("p"), "p");
    const int q = parse_number<int>(field("q"), "q");
    if (p < 0 || q < 0) fail(ErrorCode::InvalidArgument, "p and q must be >= 0");
    auto read = [&](char name, int k) {
        const std::string base = std::string(1, name) + std::to_string(k);
        return std::complex<double>(parse_number<double>(field(base + "_re"), base + "_re"),
                                    parse_number<double>(field(base + "_im"), base + "_im"));
    };
    for (int k = 1; k <= p; ++k) r.pt.x.push_back(read('x', k));
    for (int l = 1; l <= q; ++l) r.pt.y.push_back(read('y', l));
    validate(r.group);
    r.pt.validate();
    return r;
}

json empty_row(std::size_t index) {
    return json{{"row", index},
                {"family", nullptr},
                {"N", nullptr},
                {"p", nullptr},
                {"q", nullptr},
                {"value", json{{"re", nullptr}, {"im", nullptr}}},
                {"stderr", json{{"re", nullptr}, {"im", nullptr}}},
                {"regularized", nullptr},
                {"condition_estimate", nullptr},
                {"error_code", nullptr},
                {"error_message", nullptr}};
}

json run_row(const JobSpec& job, const Columns& cols, const std::vector<std::string>& fields, std::size_t index) {
    json row = empty_row(index);
    try {
        const RowJob r = parse_row(cols, fields);
        row["family"] = std::string(to_string(r.group.family));
        row["N"] = r.group.N;
        row["p"] = r.pt.p();
        row["q"] = r.pt.q();
        switch (job.batch_command) {
        case Command::quad:
            row["value"] = complex_json(quad_average(QuadSpec{r.group.family, r.group.N, job.nodes}, r.pt));
            break;
        case Command::mc: {
            const MCEstimate e = mc_estimate(r.group, r.pt, job.samples, job.seed, resolved_workers(job));
            row["value"] = complex_json(e.mean);
            row["stderr"] = json{{"re", e.stderr_re}, {"im", e.stderr_im}};
            break;
        }
        default: {
            const EvalResult e = ratio_average(r.group.family, r.group.N, r.pt);
            row["value"] = complex_json(e.value);
            row["regularized"] = e.regularized;
            row["condition_estimate"] = e.condition_estimate;
        }
        }
    } catch (const Error& e) {
        row["error_code"] = std::string(to_string(e.code()));
        row["error_message"] = e.what();
    }
    return row;
}

}  // namespace

CommandResult run_batch(const JobSpec& job) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (job.input != "-") {
        file.open(job.input);
        if (!file) fail(ErrorCode::InvalidArgument, "cannot open batch input '" + job.input + "'");
        in = &file;
    }
    std::string line;
    if (!std::getline(*in, line)) fail(ErrorCode::InvalidArgument, "batch input is empty");
    Columns cols{split_row(line)};
    const std::vector<std::string> lead{"family", "N", "p", "q"};
    if (cols.names.size() < lead.size() || !std::equal(lead.begin(), lead.end(), cols.names.begin()))
        fail(ErrorCode::InvalidArgument, "batch header must start with family,N,p,q");

    std::vector<std::vector<std::string>> rows;
    while (std::getline(*in, line)) {
        if (line.find_first_not_of(" \r\t") == std::string::npos) continue;
        rows.push_back(split_row(line));
    }

    std::vector<json> results(rows.size());
    const long long n = static_cast<long long>(rows.size());
    // Monte Carlo rows parallelize internally; the cheap commands parallelize over rows.
    const bool row_parallel = job.batch_command != Command::mc;
#pragma omp parallel for schedule(dynamic, 1) if (row_parallel)
    for (long long i = 0; i < n; ++i)
        results[static_cast<std::size_t>(i)] = run_row(job, cols, rows[static_cast<std::size_t>(i)],
                                                       static_cast<std::size_t>(i + 1));

    CommandResult r;
    json table = json::array();
    for (auto& row : results) {
        if (!row["error_code"].is_null()) r.exit_code = kInputError;
        table.push_back(std::move(row));
    }
    r.fields["table"] = std::move(table);
    return r;
}

}  // namespace ratioavg::cli
