#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "internal.hpp"

namespace ratioavg::cli {

namespace {

std::string csv_field(const json& v) {
    std::string s;
    if (v.is_string())
        s = v.get<std::string>();
    else if (v.is_null())
        s = "";
    else
        s = v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

void flatten_into(const std::string& prefix, const json& v, std::vector<std::pair<std::string, std::string>>& out) {
    if (v.is_object() && v.size() == 2 && v.contains("re") && v.contains("im")) {
        out.emplace_back(prefix + "_re", csv_field(v["re"]));
        out.emplace_back(prefix + "_im", csv_field(v["im"]));
    } else if (v.is_object()) {
        for (const auto& [k, item] : v.items()) flatten_into(prefix.empty() ? k : prefix + "_" + k, item, out);
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) flatten_into(prefix + std::to_string(i + 1), v[i], out);
    } else {
        out.emplace_back(prefix, csv_field(v));
    }
}

}  // namespace

json complex_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json complex_list_json(const std::vector<std::complex<double>>& zs) {
    json a = json::array();
    for (const auto& z : zs) a.push_back(complex_json(z));
    return a;
}

json inputs_json(const JobSpec& job) {
    json in = json::object();
    if (job.family) in["family"] = std::string(to_string(*job.family));
    if (job.N != 0) in["N"] = job.N;
    switch (job.command) {
    case Command::eval:
    case Command::chi:
    case Command::mc:
    case Command::quad:
        if (job.p) in["p"] = *job.p;
        if (job.q) in["q"] = *job.q;
        if (!job.x.empty()) in["x"] = complex_list_json(job.x);
        if (!job.y.empty()) in["y"] = complex_list_json(job.y);
        if (!job.psi.empty()) in["psi"] = complex_list_json(job.psi);
        if (!job.phi.empty()) in["phi"] = complex_list_json(job.phi);
        break;
    default: break;
    }
    // verify fixes its own sample counts and seeds per tier.
    if (job.command == Command::mc || job.command == Command::batch) {
        in["samples"] = job.samples;
        in["seed"] = job.seed;
    }
    if (job.command == Command::mc || job.command == Command::verify || job.command == Command::batch)
        in["workers"] = resolved_workers(job);
    if (job.command == Command::quad || job.command == Command::batch) in["nodes"] = job.nodes;
    if (job.command == Command::expand) {
        in["n"] = job.n;
        in["depth"] = job.depth;
    }
    if (job.command == Command::chi && job.tolerance) {
        in["depth"] = job.depth;
        in["tolerance"] = *job.tolerance;
    }
    if (job.command == Command::verify) in["tier"] = job.full ? "full" : "quick";
    if (job.command == Command::batch) {
        in["input"] = job.input;
        in["run"] = std::string(to_string(job.batch_command));
    }
    return in;
}

std::string flatten_csv(const json& fields) {
    std::vector<std::vector<std::pair<std::string, std::string>>> rows;
    if (fields.contains("table")) {
        for (const auto& r : fields["table"]) {
            rows.emplace_back();
            flatten_into("", r, rows.back());
        }
    } else {
        rows.emplace_back();
        flatten_into("", fields, rows.back());
    }
    // Header is the union of column names in first-seen order.
    std::vector<std::string> header;
    for (const auto& r : rows)
        for (const auto& [k, v] : r)
            if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) os << ',';
            for (const auto& [k, v] : r)
                if (k == header[i]) {
                    os << v;
                    break;
                }
        }
        os << '\n';
    }
    return os.str();
}

void write_report(std::ostream& out, const JobSpec& job, const CommandResult& result, double elapsed_ms) {
    if (job.format == Format::csv) {
        out << (result.csv ? *result.csv : flatten_csv(result.fields));
        return;
    }
    json doc = json::object();
    doc["command"] = std::string(to_string(job.command));
    doc["inputs"] = inputs_json(job);
    for (const auto& [k, v] : result.fields.items()) doc[k] = v;
    doc["elapsed_ms"] = elapsed_ms;
    out << doc.dump(2) << '\n';
}

void write_error(std::ostream& out, const JobSpec& job, ErrorCode code, const std::string& message,
                 double elapsed_ms) {
    if (job.format == Format::csv) {
        out << "error_code,error_message\n" << to_string(code) << ',' << csv_field(message) << '\n';
        return;
    }
    json doc = json::object();
    doc["command"] = std::string(to_string(job.command));
    doc["inputs"] = inputs_json(job);
    doc["error"] = json{{"code", std::string(to_string(code))}, {"message", message}};
    doc["elapsed_ms"] = elapsed_ms;
    out << doc.dump(2) << '\n';
}

}  // namespace ratioavg::cli
