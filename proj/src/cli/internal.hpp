#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ratioavg/cli.hpp"
#include "ratioavg/closed_form.hpp"

namespace ratioavg::cli {

using json = nlohmann::ordered_json;

/// What a command produced, before the common envelope is added.
struct CommandResult {
    json fields = json::object();
    /// Verbatim CSV body, used instead of flattening `fields` when set.
    std::optional<std::string> csv;
    int exit_code = kOk;
};

json complex_json(std::complex<double> z);
json complex_list_json(const std::vector<std::complex<double>>& zs);
json inputs_json(const JobSpec& job);

/// Renders `fields` as CSV: one row, or one row per entry of fields["table"].
std::string flatten_csv(const json& fields);

void write_report(std::ostream& out, const JobSpec& job, const CommandResult& result, double elapsed_ms);
void write_error(std::ostream& out, const JobSpec& job, ErrorCode code, const std::string& message,
                 double elapsed_ms);

/// Family and N given and valid; returns the group.
GroupSpec require_group(const JobSpec& job);
/// x and y (or psi and phi) as a torus point, checked against --p and --q.
TorusPoint require_point(const JobSpec& job);
int resolved_workers(const JobSpec& job);

CommandResult run_eval(const JobSpec& job);
CommandResult run_chi(const JobSpec& job);
CommandResult run_mc(const JobSpec& job);
CommandResult run_quad(const JobSpec& job);
CommandResult run_expand(const JobSpec& job);
CommandResult run_verify(const JobSpec& job);
CommandResult run_batch(const JobSpec& job);

}  // namespace ratioavg::cli
