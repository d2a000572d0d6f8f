#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ratioavg/cli.hpp"

using namespace ratioavg;
using namespace ratioavg::cli;
using cplx = std::complex<double>;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "ratioavg");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str() + err.str()};
}

}  // namespace

TEST_CASE("complex parsing") {
    CHECK(parse_complex("0.5") == cplx(0.5, 0.0));
    CHECK(parse_complex("-0.2") == cplx(-0.2, 0.0));
    CHECK(parse_complex("-0.3+0.2i") == cplx(-0.3, 0.2));
    CHECK(parse_complex("1e-3-2j") == cplx(1e-3, -2.0));
    CHECK(parse_complex("0.7i") == cplx(0.0, 0.7));
    CHECK(parse_complex("(0.1,-0.4)") == cplx(0.1, -0.4));
    CHECK_THROWS_AS(parse_complex("abc"), Error);
    CHECK_THROWS_AS(parse_complex("1+"), Error);
    CHECK_THROWS_AS(parse_complex(""), Error);
}

TEST_CASE("exit code mapping") {
    CHECK(exit_code_for(ErrorCode::RangeViolation) == kRangeError);
    CHECK(exit_code_for(ErrorCode::DomainError) == kInputError);
    CHECK(exit_code_for(ErrorCode::InvalidArgument) == kInputError);
    CHECK(exit_code_for(ErrorCode::UnsupportedGroup) == kInputError);
}

TEST_CASE("eval report") {
    const Outcome r = invoke({"eval", "--family", "SO", "--N", "2", "--p", "1", "--q", "1", "--x", "0.5", "--y", "0.25"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["command"] == "eval");
    CHECK(j["inputs"]["family"] == "SO");
    CHECK(std::abs(j["value"]["re"].get<double>() - 16.0 / 15.0) < 1e-15);
    CHECK(j["value"]["im"].get<double>() == 0.0);
    CHECK(j["regularized"] == false);
    CHECK(j.contains("elapsed_ms"));
}

TEST_CASE("errors become JSON with exit codes") {
    const Outcome range = invoke({"eval", "--family", "SO", "--N", "1", "--p", "0", "--q", "1", "--y", "0.2"});
    CHECK(range.code == kRangeError);
    CHECK(json::parse(range.out)["error"]["code"] == "RangeViolation");

    const Outcome domain = invoke({"eval", "--family", "USp", "--N", "3", "--p", "1", "--q", "0", "--x", "0.5"});
    CHECK(domain.code == kInputError);
    CHECK(json::parse(domain.out)["error"]["code"] == "DomainError");

    const Outcome parse = invoke({"eval", "--family", "SO"});
    CHECK(parse.code == kInputError);
    CHECK(json::parse(parse.out).contains("error"));

    const Outcome quad = invoke({"quad", "--family", "SO", "--N", "7", "--p", "0", "--q", "0"});
    CHECK(quad.code == kInputError);
    CHECK(json::parse(quad.out)["error"]["code"] == "UnsupportedGroup");
}

TEST_CASE("mc and quad reports") {
    const Outcome mc = invoke({"mc", "--family", "USp", "--N", "2", "--p", "1", "--q", "0", "--x", "0.5", "--samples",
                               "20000", "--seed", "3", "--workers", "2"});
    REQUIRE(mc.code == 0);
    const json j = json::parse(mc.out);
    CHECK(j.contains("stderr"));
    CHECK(std::abs(j["value"]["re"].get<double>() - 1.25) < 5 * j["stderr"]["re"].get<double>());

    const Outcome again = invoke({"mc", "--family", "USp", "--N", "2", "--p", "1", "--q", "0", "--x", "0.5",
                                  "--samples", "20000", "--seed", "3", "--workers", "1"});
    CHECK(json::parse(again.out)["value"] == j["value"]);

    const Outcome q = invoke({"quad", "--family", "USp", "--N", "2", "--p", "1", "--q", "0", "--x", "0.5"});
    REQUIRE(q.code == 0);
    CHECK(std::abs(json::parse(q.out)["value"]["re"].get<double>() - 1.25) < 1e-12);
}

TEST_CASE("chi and expand") {
    const Outcome chi = invoke({"chi", "--family", "USp", "--N", "2", "--psi", "0.3", "--phi", "1.0"});
    REQUIRE(chi.code == 0);
    CHECK(json::parse(chi.out).contains("value"));

    const Outcome csv =
        invoke({"expand", "--family", "USp", "--N", "2", "--n", "1", "--depth", "4", "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("m1,n1,numerator,denominator\n", 0) == 0);
    CHECK(csv.out.find("\n0,2,-1,1\n") != std::string::npos);
    CHECK(csv.out.find("\n-1,1,1,1\n") != std::string::npos);
}

TEST_CASE("batch keeps going past a bad row") {
    const auto path = std::filesystem::temp_directory_path() / "ratioavg_batch_test.csv";
    {
        std::ofstream f(path);
        f << "family,N,p,q,x1_re,x1_im,y1_re,y1_im\n"
          << "SO,2,1,1,0.5,0,0.25,0\n"
          << "XX,2,1,1,0.5,0,0.25,0\n"
          << "USp,2,1,0,0.5,0,,\n";
    }
    const Outcome r = invoke({"batch", path.string(), "--format", "csv"});
    std::filesystem::remove(path);
    CHECK(r.code == kInputError);
    std::istringstream lines(r.out);
    std::string header, row1, row2, row3;
    std::getline(lines, header);
    std::getline(lines, row1);
    std::getline(lines, row2);
    std::getline(lines, row3);
    CHECK(header.rfind("row,family,N,p,q,value_re", 0) == 0);
    CHECK(row1.find("1.0666666666666667") != std::string::npos);
    CHECK(row2.find("InvalidArgument") != std::string::npos);
    CHECK(row3.find("1.25") != std::string::npos);
}

TEST_CASE("worker default from the environment") {
    ::setenv("RATIOAVG_WORKERS", "3", 1);
    CHECK(default_workers() == 3);
    ::setenv("RATIOAVG_WORKERS", "zero", 1);
    CHECK(default_workers() == 0);
    ::unsetenv("RATIOAVG_WORKERS");
    CHECK(default_workers() == 0);
}
