#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ratioavg/error.hpp"
#include "ratioavg/family.hpp"

namespace ratioavg::cli {

enum class Command { eval, chi, mc, quad, expand, verify, batch };
enum class Format { json, csv };

std::string_view to_string(Command c);

struct JobSpec {
    Command command = Command::eval;
    std::optional<Family> family;
    int N = 0;
    std::optional<int> p, q;
    std::vector<std::complex<double>> x, y;
    std::vector<std::complex<double>> psi, phi;
    int n = 1;  ///< rank for expand
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    int workers = 0;  ///< 0: RATIOAVG_WORKERS or the OpenMP default
    int depth = 6;
    int lmax = 0;  ///< 0: use n
    std::optional<double> tolerance;
    int nodes = 128;
    bool full = false;  ///< verify tier
    Command batch_command = Command::eval;
    std::string input = "-";  ///< batch CSV path, "-" for standard input
    Format format = Format::json;
};

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kInputError = 2, kRangeError = 3 };

int exit_code_for(ErrorCode code);

/// Parses "a", "a+bi", "a-bj", "bi" or "(a,b)". Throws InvalidArgument.
std::complex<double> parse_complex(std::string_view text);

/// Worker count from RATIOAVG_WORKERS, 0 when unset or invalid.
int default_workers();

/// Runs one job, writing the report to out. Returns the process exit code.
int run(const JobSpec& job, std::ostream& out);

/// Full command line entry point: parse flags, run, report parse errors as JSON.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace ratioavg::cli
