#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace {

namespace cli = altquad::cli;

struct result {
    int code;
    std::string out;
    std::string err;
};

result run_cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return std::string(ALTQUAD_FIXTURE_DIR) + "/" + name; }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        rows.push_back(fields);
    }
    return rows;
}

bool one_line(const std::string& s) {
    return !s.empty() && s.back() == '\n' && s.find('\n') == s.size() - 1;
}

// ---------------------------------------------------------------- parsing

TEST(ParseEndpoint, RealsAndPiMultiples) {
    EXPECT_EQ(cli::parse_endpoint("1.5"), 1.5);
    EXPECT_EQ(cli::parse_endpoint("pi"), std::numbers::pi);
    EXPECT_EQ(cli::parse_endpoint("2pi"), 2 * std::numbers::pi);
    EXPECT_EQ(cli::parse_endpoint("-0.5*pi"), -0.5 * std::numbers::pi);
    EXPECT_EQ(cli::parse_endpoint("-pi"), -std::numbers::pi);
    EXPECT_THROW((void)cli::parse_endpoint("tau"), cli::usage_error);
    EXPECT_THROW((void)cli::parse_endpoint("1.5x"), cli::usage_error);
}

TEST(ParseArgs, Defaults) {
    const auto cfg = cli::parse_args({"--function", "sin", "--n", "8"});
    const auto& src = std::get<cli::catalog_source>(cfg.source);
    EXPECT_EQ(src.name, "sin");
    EXPECT_EQ(src.a, std::numbers::pi);
    EXPECT_EQ(src.b, 2 * std::numbers::pi);
    EXPECT_EQ(src.n, 8);
    EXPECT_EQ(cfg.method, cli::run_method::alt);
    EXPECT_EQ(cfg.precision, 10);
}

TEST(ResolveOrdering, Presets) {
    EXPECT_EQ(cli::resolve_ordering(cli::ordering_preset::paper_table_2, 12),
              (std::vector<int>{12, 6, 2, 3, 4}));
    EXPECT_EQ(cli::resolve_ordering(cli::ordering_preset::paper_table_4, 32),
              (std::vector<int>{32, 2, 4, 8, 16}));
    EXPECT_EQ(cli::resolve_ordering(cli::ordering_preset::by_default, 12),
              (std::vector<int>{12, 6, 4, 3, 2}));
    EXPECT_THROW((void)cli::resolve_ordering(cli::ordering_preset::paper_table_2, 10),
                 altquad::precondition_error);
    EXPECT_THROW((void)cli::resolve_ordering(cli::ordering_preset::paper_table_4, 12),
                 altquad::precondition_error);
}

TEST(FormatFixed, NoNegativeZero) {
    EXPECT_EQ(cli::format_fixed(-1e-20, 4), "0.0000");
    EXPECT_EQ(cli::format_fixed(-2.5, 2), "-2.50");
}

// ---------------------------------------------------------------- golden paths

TEST(Cli, Sine12GoldenFromCsv) {
    const auto r = run_cli({"--input", fixture("sine_n12.csv"), "--ordering", "paper-table-2",
                            "--output", "csv", "--precision", "12"});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::vector<std::vector<double>> golden = {
        {-2.0024698170, -1.9998433802, -2.0000010844, -1.9999999828, -2.0000000005},
        {-2.0004999894, -1.9999967037, -2.0000000517, -1.9999999985},
        {-2.0000526243, -1.9999992147, -2.0000000221},
        {-2.0001193864, -1.9999967923},
        {-2.0002147374},
    };
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 16u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"column", "row", "p", "q", "value"}));
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const std::size_t j = std::stoul(rows[k][0]);
        const std::size_t i = std::stoul(rows[k][1]);
        EXPECT_NEAR(std::stod(rows[k][4]), golden[i][j], 1e-9) << "row " << i << " col " << j;
    }
}

TEST(Cli, HumanAltReport) {
    const auto r = run_cli({"--input", fixture("poly7_n10.csv"), "--precision", "6"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("final A_{10,2} = 12500000.000000\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("approximations: 6"), std::string::npos);
    EXPECT_NE(r.out.find("finite-difference"), std::string::npos);
}

TEST(Cli, RombergSine32Golden) {
    const auto r = run_cli({"--function", "sin", "--n", "32", "--method", "romberg", "--output",
                            "csv", "--precision", "15"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 22u);
    EXPECT_NEAR(std::stod(rows.back()[2]), -2.00000000000133, 1e-11);
    EXPECT_EQ(rows.back()[0], "5");
    EXPECT_EQ(rows.back()[1], "5");
}

TEST(Cli, RombergOnTwelveIsMethodFailure) {
    const auto r = run_cli({"--input", fixture("sine_n12.csv"), "--method", "romberg"});
    EXPECT_EQ(r.code, 4);
    EXPECT_TRUE(one_line(r.err)) << r.err;
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, CompareSine32) {
    const auto r = run_cli({"--function", "sin", "--n", "32", "--method", "compare", "--ordering",
                            "paper-table-4", "--output", "csv", "--precision", "14"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[1][0], "alt");
    EXPECT_EQ(rows[2][0], "romberg");
    EXPECT_EQ(rows[1][1], rows[2][1]);
    EXPECT_EQ(rows[1][2], "15");
    EXPECT_EQ(rows[2][2], "21");
    ASSERT_EQ(rows[3][0].rfind("#difference=", 0), 0u);
    EXPECT_LE(std::stod(rows[3][0].substr(12)), 1e-13);
}

TEST(Cli, CompareLinearHasZeroDifference) {
    const auto r = run_cli({"--function", "linear", "--a", "0", "--b", "1", "--n", "4", "--method",
                            "compare"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("|difference|  = 0.000e+00"), std::string::npos) << r.out;
}

TEST(Cli, CompareNeedsPowerOfTwo) {
    const auto r = run_cli({"--input", fixture("sine_n12.csv"), "--method", "compare"});
    EXPECT_EQ(r.code, 4);
    EXPECT_TRUE(one_line(r.err));
}

TEST(Cli, PrimeNIsSingleColumn) {
    const auto r = run_cli({"--function", "exp", "--n", "7", "--output", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1][0], "0");
    EXPECT_EQ(rows[1][2], "7");
    const auto human = run_cli({"--function", "exp", "--n", "7"});
    ASSERT_EQ(human.code, 0);
    EXPECT_NE(human.out.find("approximations: 1"), std::string::npos);
    EXPECT_TRUE(human.err.empty());
}

TEST(Cli, TrapAndSimpson) {
    const auto t = run_cli({"--function", "x2", "--a", "0", "--b", "1", "--n", "2", "--method", "trap",
                            "--output", "csv", "--precision", "4"});
    ASSERT_EQ(t.code, 0);
    EXPECT_EQ(t.out, "method,value\ntrapezoid,0.5000\ncomposite-trapezoid,0.3750\n");
    const auto s = run_cli({"--function", "x3", "--a", "0", "--b", "1", "--n", "6", "--method",
                            "simpson", "--output", "csv", "--precision", "6"});
    ASSERT_EQ(s.code, 0);
    EXPECT_EQ(s.out, "method,value\nsimpson,0.250000\nsimpson38,0.250000\n");
    EXPECT_EQ(run_cli({"--function", "x3", "--n", "5", "--method", "simpson"}).code, 4);
}

TEST(Cli, ShowOmega) {
    const auto r = run_cli({"--input", fixture("sine_n12.csv"), "--ordering", "paper-table-2",
                            "--show-omega"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("A_{12,6} = ((12/6)^2 A_6 - A_12) / ((12/6)^2 - 1)"), std::string::npos)
        << r.out;
    EXPECT_NE(r.out.find("A_{12,4} = ((12/4)^2 A_{6,4} - A_{12,3}) / ((12/4)^2 - 1)"),
              std::string::npos)
        << r.out;
}

// ---------------------------------------------------------------- convergence

TEST(Cli, ConvergenceCsv) {
    const auto r = run_cli({"--function", "sin", "--a", "0", "--b", "1", "--method", "convergence",
                            "--output", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 7u);
    ASSERT_EQ(rows.back()[0].rfind("#order=", 0), 0u);
    EXPECT_NEAR(std::stod(rows.back()[0].substr(7)), 2.0, 0.1);
}

TEST(Cli, ConvergenceOfExactRule) {
    const auto r = run_cli({"--function", "constant", "--method", "convergence", "--n-list", "2,4,8",
                            "--output", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "n,estimate,abs_error\n2,1,0\n4,1,0\n8,1,0\n#order=nan\n");
    const auto human = run_cli({"--function", "constant", "--method", "convergence"});
    EXPECT_NE(human.out.find("fitted order = n/a"), std::string::npos);
}

TEST(Cli, ConvergenceRejectsCsvSource) {
    const auto r = run_cli({"--input", fixture("poly7_n10.csv"), "--method", "convergence"});
    EXPECT_EQ(r.code, 4);
    EXPECT_TRUE(one_line(r.err));
}

TEST(Cli, ConvergenceStudyMethod) {
    const auto r = run_cli({"--function", "sin", "--a", "0", "--b", "1", "--method", "convergence",
                            "--study-method", "alt-tableau-fixed:2", "--output", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    EXPECT_NEAR(std::stod(rows.back()[0].substr(7)), 4.0, 0.2);
}

// ---------------------------------------------------------------- failures

TEST(Cli, UsageErrors) {
    const std::vector<std::vector<std::string>> bad = {
        {},
        {"--input", "x.csv", "--function", "sin", "--n", "4"},
        {"--function", "sin"},
        {"--function", "nope", "--n", "4"},
        {"--input", "x.csv", "--n", "4"},
        {"--function", "sin", "--n", "4", "--method", "gauss"},
        {"--function", "sin", "--n", "4", "--precision", "0"},
        {"--function", "sin", "--n", "4", "--ordering", "4,a"},
        {"--function", "sin", "--n", "0"},
        {"--function", "sin", "--n", "4", "--a", "zero"},
        {"--function", "sin", "--method", "convergence", "--study-method", "romberg"},
        {"--function", "sin", "--n", "4", "--bogus"},
    };
    for (const auto& args : bad) {
        const auto r = run_cli(args);
        EXPECT_EQ(r.code, 2) << (args.empty() ? "" : args[0]) << " " << r.err;
        EXPECT_TRUE(one_line(r.err)) << r.err;
    }
}

TEST(Cli, DataErrors) {
    const auto r = run_cli({"--input", "/nonexistent/data.csv"});
    EXPECT_EQ(r.code, 3);
    EXPECT_TRUE(one_line(r.err));
}

TEST(Cli, MethodErrors) {
    EXPECT_EQ(run_cli({"--input", fixture("sine_n12.csv"), "--ordering", "12,5"}).code, 4);
    EXPECT_EQ(run_cli({"--input", fixture("sine_n12.csv"), "--ordering", "paper-table-4"}).code, 4);
    EXPECT_EQ(run_cli({"--function", "sin", "--n", "1"}).code, 4);
    EXPECT_EQ(run_cli({"--function", "sin", "--n", "4", "--a", "1", "--b", "1"}).code, 3);
}

TEST(Cli, HelpExitsCleanly) {
    const auto r = run_cli({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("--ordering"), std::string::npos);
}

// ---------------------------------------------------------------- properties

TEST(Cli, Deterministic) {
    const std::vector<std::string> args = {"--function", "runge", "--n", "48", "--show-omega"};
    const auto first = run_cli(args);
    for (int i = 0; i < 5; ++i) EXPECT_EQ(run_cli(args).out, first.out);
}

TEST(Cli, PrintedValuesRoundTripAtRequestedPrecision) {
    for (int p : {3, 8, 12, 15}) {
        const auto r = run_cli({"--function", "exp", "--n", "24", "--output", "csv", "--precision",
                                std::to_string(p)});
        ASSERT_EQ(r.code, 0);
        const auto g = altquad::sample(altquad::find_function("exp"), 0, 1, 24);
        const auto t = altquad::build_alt_tableau(g);
        const auto rows = csv_rows(r.out);
        for (std::size_t k = 1; k < rows.size(); ++k) {
            const auto j = std::stoul(rows[k][0]);
            const auto i = std::stoul(rows[k][1]);
            ASSERT_LE(std::abs(std::stod(rows[k][4]) - t.columns[j][i].value),
                      0.5 * std::pow(10.0, -p) * (1 + 1e-9));
        }
    }
}

}  // namespace
