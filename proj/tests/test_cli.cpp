#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "basefee/cli/commands.hpp"

using namespace basefee::cli;

namespace {

struct Invocation
{
    int code;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> const& args)
{
    std::ostringstream out;
    std::ostringstream err;
    int const code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split(std::string const& line, char sep)
{
    std::vector<std::string> parts;
    std::string part;
    std::istringstream is(line);
    while (std::getline(is, part, sep))
        parts.push_back(part);
    return parts;
}

// Header and data rows of a CSV without the metadata preamble.
std::vector<std::vector<std::string>> body(std::string const& csv)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(csv);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#')
            rows.push_back(split(line, ','));
    return rows;
}

std::string meta(std::string const& csv, std::string const& key)
{
    std::istringstream is(csv);
    std::string line;
    std::string const prefix = "# " + key + "=";
    while (std::getline(is, line))
        if (line.rfind(prefix, 0) == 0)
            return line.substr(prefix.size());
    return {};
}

}  // namespace

TEST_CASE("grid helpers")
{
    CHECK(arithmetic_grid(0.05, 0.5, 0.01).size() == 46);
    CHECK(arithmetic_grid(1.0, 1.0, 1.0) == std::vector<double>{1.0});
    CHECK(arithmetic_grid(1.0, 100.0, 1.0).size() == 100);
    auto const lin = linspace(0.1, 0.5, 10);
    REQUIRE(lin.size() == 10);
    CHECK(lin.front() == 0.1);
    CHECK(lin.back() == 0.5);
    CHECK(linspace(0.3, 0.7, 1) == std::vector<double>{0.3});
    CHECK_THROWS_AS(arithmetic_grid(0.5, 0.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(arithmetic_grid(0.1, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("analytic sweep over p_x")
{
    auto const r = invoke({"analytic", "--scenario", "x", "--axis", "px", "--from", "0.05", "--to", "0.5", "--step",
        "0.01"});
    REQUIRE(r.code == 0);
    auto const rows = body(r.out);
    REQUIRE(rows.size() == 47);
    CHECK(rows[0] == std::vector<std::string>{"axis_value", "rel_diff", "threshold_marker"});
    CHECK(meta(r.out, "schema").size() > 0);
    CHECK(std::stod(meta(r.out, "threshold_px")) == doctest::Approx(0.2758620689655).epsilon(1e-10));

    int markers = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        if (rows[i][2] == "1")
        {
            ++markers;
            CHECK(std::stod(rows[i][0]) == doctest::Approx(0.28));
            CHECK(std::stod(rows[i - 1][1]) < 0.0);
            CHECK(std::stod(rows[i][1]) > 0.0);
        }
    }
    CHECK(markers == 1);
}

TEST_CASE("analytic follower sweep over delta changes sign")
{
    auto const r = invoke({"analytic", "--scenario", "y-join", "--axis", "delta", "--px", "0.3", "--py", "0.18"});
    REQUIRE(r.code == 0);
    auto const rows = body(r.out);
    REQUIRE(rows.size() > 2);
    CHECK(std::stod(rows[1][1]) > 0.0);
    CHECK(std::stod(rows.back()[1]) < 0.0);
}

TEST_CASE("analytic initiator sweep over delta stays negative")
{
    auto const r = invoke({"analytic", "--scenario", "y-init", "--axis", "delta", "--px", "0.3", "--py", "0.18"});
    REQUIRE(r.code == 0);
    auto const rows = body(r.out);
    REQUIRE(rows.size() == 102);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::stod(rows[i][1]) < 0.0);
}

TEST_CASE("analytic option validation")
{
    CHECK(invoke({"analytic", "--scenario", "x", "--axis", "py"}).code == kExitInvalidArguments);
    CHECK(invoke({"analytic", "--scenario", "z"}).code == kExitInvalidArguments);
    CHECK(invoke({"analytic", "--axis", "px", "--from", "0.5", "--to", "0.1", "--step", "0.1"}).code
          == kExitInvalidArguments);
    CHECK(invoke({"analytic", "--no-such-flag"}).code == kExitInvalidArguments);
    CHECK(invoke({}).code == kExitInvalidArguments);
    CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("simulate output is reproducible and independent of workers")
{
    std::vector<std::string> const base{"simulate", "--axis", "px", "--from", "0.2", "--to", "0.4", "--step", "0.1",
        "--runs", "300", "--seed", "7"};
    auto one = base;
    one.insert(one.end(), {"--workers", "1"});
    auto four = base;
    four.insert(four.end(), {"--workers", "4"});

    auto const a = invoke(one);
    auto const b = invoke(one);
    auto const c = invoke(four);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);

    auto const rows = body(a.out);
    CHECK(rows.size() == 1 + 3 * 4);
    CHECK(rows[0] == std::vector<std::string>{"axis_value", "mechanism", "mean_excess", "ci_half_width",
        "truncated_runs"});
    CHECK(meta(a.out, "seed") == "7");
    CHECK(meta(a.out, "prng").size() > 0);

    auto seeded = base;
    seeded[seeded.size() - 1] = "8";
    CHECK(invoke(seeded).out != a.out);
}

TEST_CASE("simulate with a single run")
{
    auto const r = invoke({"simulate", "--runs", "1", "--seed", "7", "--from", "0.4", "--to", "0.4", "--step", "0.1",
        "--mechanisms", "eip"});
    REQUIRE(r.code == 0);
    auto const rows = body(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][3] == "0");
}

TEST_CASE("truncation-dominated simulations fail with exit code 3")
{
    auto const r = invoke({"simulate", "--px", "1", "--axis", "px", "--from", "1", "--to", "1", "--step", "0.1",
        "--runs", "20", "--max-blocks", "50", "--mechanisms", "eip"});
    CHECK(r.code == kExitTruncationDominated);
    CHECK(r.err.find("truncated") != std::string::npos);
}

TEST_CASE("simulate option validation")
{
    CHECK(invoke({"simulate", "--mechanisms", "geo:2"}).code == kExitInvalidArguments);
    CHECK(invoke({"simulate", "--runs", "0"}).code == kExitInvalidArguments);
    CHECK(invoke({"simulate", "--axis", "alpha"}).code == kExitInvalidArguments);
    CHECK(invoke({"simulate", "--recovery", "1.5"}).code == kExitInvalidArguments);
}

TEST_CASE("heatmap on a single cell")
{
    auto const r = invoke({"heatmap", "--px-from", "0.45", "--px-to", "0.45", "--px-points", "1", "--eps-from",
        "0.01", "--eps-to", "0.01", "--eps-points", "1", "--runs", "500", "--q", "0.25"});
    REQUIRE(r.code == 0);
    auto const rows = body(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"p_x", "eps_ratio", "label"});
    CHECK(rows[1][2] == "both");
}

TEST_CASE("delay table")
{
    auto const r = invoke({"delay"});
    REQUIRE(r.code == 0);
    auto const rows = body(r.out);
    REQUIRE(rows.size() == 1 + 100 * 4);
    CHECK(rows[0] == std::vector<std::string>{"beta", "mechanism", "T"});

    auto t_at = [&](int beta, std::string const& mech) {
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (std::stod(rows[i][0]) == beta && rows[i][1] == mech)
                return std::stol(rows[i][2]);
        FAIL("missing row");
        return -1L;
    };
    CHECK(t_at(1, "eip") == 0);
    CHECK(t_at(10, "eip") == 20);
    CHECK(t_at(100, "eip") == 40);
    CHECK(static_cast<double>(t_at(100, "eip")) / static_cast<double>(t_at(10, "eip")) < 2.5);
    for (int beta : {2, 10, 50, 100})
        for (auto const* q : {"geo:0.25", "geo:0.5", "geo:0.75"})
            CHECK(t_at(beta, q) >= t_at(beta, "eip"));

    CHECK(invoke({"delay", "--beta-from", "0.5"}).code == kExitInvalidArguments);
    CHECK(invoke({"delay", "--q", "0.5,1.5"}).code == kExitInvalidArguments);
}

TEST_CASE("bribe rows")
{
    auto const r = invoke({"bribe", "--gas", "1"});
    REQUIRE(r.code == 0);
    auto const rows = body(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][2] == "true");
    CHECK(std::stod(rows[1][1]) == doctest::Approx(0.085));

    auto const edge = invoke({"bribe", "--gas", "0.5", "--eps-ratio", "0.0625"});
    CHECK(body(edge.out)[1][2] == "false");
    CHECK(body(edge.out)[1][1] == "0");

    auto const flat = invoke({"bribe", "--gas", "1000", "--phi", "0"});
    REQUIRE(flat.code == 0);
    CHECK(body(flat.out)[1][2] == "false");

    CHECK(invoke({"bribe", "--gas", "0"}).code == kExitInvalidArguments);
}

TEST_CASE("--out resolves relative paths against the output directory")
{
    namespace fs = std::filesystem;
    fs::path const dir = fs::temp_directory_path() / "basefee_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    ::setenv(kOutputDirEnv, dir.c_str(), 1);

    auto const r = invoke({"bribe", "--out", "sub/bribe.csv"});
    ::unsetenv(kOutputDirEnv);
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());

    std::ifstream in(dir / "sub" / "bribe.csv");
    REQUIRE(in.good());
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str() == invoke({"bribe"}).out);
    fs::remove_all(dir);
}
