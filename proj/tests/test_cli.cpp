#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dirac/cli.hpp"

namespace {

const std::string kData = DIRAC_DATA_DIR;

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "dirac");
    std::ostringstream out, err;
    const int code = dirac::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json last_error(const Run& r) {
    const auto pos = r.err.find_last_of('{', r.err.rfind("\"error\""));
    return nlohmann::json::parse(r.err.substr(pos));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("enumerate examples") {
    const auto cyc = run({"enumerate", "--group", kData + "/cyclic2.json", "--R", "7"});
    REQUIRE(cyc.code == 0);
    std::istringstream lines(cyc.out);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty() && line[0] != '#' && line.rfind("word,", 0) != 0) ++rows;
    CHECK(rows == 6);
    for (const char* R : {"0.5", "0"}) {
        const auto g = run({"enumerate", "--group", kData + "/gamma2.json", "--R", R, "--format", "json"});
        REQUIRE(g.code == 0);
        CHECK(nlohmann::json::parse(g.out)["elements"].empty());
    }
}

TEST_CASE("terms output is deterministic") {
    const std::vector<std::string> args{"terms",        "--group", kData + "/gamma2.json", "--spin",
                                        kData + "/spin_gamma2_nontrivial.json", "--resolution", "8",
                                        "--truncation-radius", "5"};
    const auto r1 = run(args), r2 = run(args);
    REQUIRE(r1.code == 0);
    CHECK(r1.out == r2.out);
    const auto j = nlohmann::json::parse(r1.out);
    CHECK(j["terms"]["density"].get<double>() ==
          doctest::Approx(j["terms"]["I"].get<double>() + j["terms"]["C"].get<double>() +
                          j["terms"]["R_K"]["re"].get<double>())
              .epsilon(1e-15));
    auto csv = args;
    csv.insert(csv.end(), {"--format", "csv"});
    const auto c = run(csv);
    CHECK(c.code == 0);
    CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 2);
}

TEST_CASE("exit codes") {
    const auto trivial =
        run({"terms", "--group", kData + "/gamma2.json", "--spin", kData + "/spin_gamma2_trivial.json"});
    CHECK(trivial.code == dirac::cli::kExitValidation);
    CHECK(last_error(trivial)["exit_code"] == 2);

    CHECK(run({"verify", "--samples", "0"}).code == dirac::cli::kExitValidation);
    CHECK(run({"verify", "--check", "bogus"}).code == dirac::cli::kExitValidation);
    CHECK(run({"no-such-command"}).code == dirac::cli::kExitValidation);
    CHECK(run({"terms", "--group", kData + "/missing.json", "--spin", kData + "/spin_cyclic.json"}).code ==
          dirac::cli::kExitValidation);
    CHECK(run({"terms", "--group", kData + "/gamma2.json", "--spin", kData + "/spin_gamma2_nontrivial.json",
               "--a", "3", "--b", "1"})
              .code == dirac::cli::kExitValidation);

    const auto bad = run({"verify", "--check", "prop7", "--corrupt", "prop7", "--samples", "10"});
    CHECK(bad.code == dirac::cli::kExitViolation);
    CHECK(bad.err.find("violation: prop7") != std::string::npos);

    const auto budget = run({"enumerate", "--group", kData + "/gamma2.json", "--R", "12", "--budget", "100"});
    CHECK(budget.code == dirac::cli::kExitNumeric);
    CHECK(last_error(budget)["error"]["kind"] == "resource");

    CHECK(run({"verify", "--samples", "5", "--check", "prop6"}).code == dirac::cli::kExitOk);
}

}  // TEST_SUITE
