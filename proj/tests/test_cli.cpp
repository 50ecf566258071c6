#include <gtest/gtest.h>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "qca/arrays.hpp"
#include "qca/correlation.hpp"

#ifndef QCA_CLI_PATH
#error "QCA_CLI_PATH must point at the built CLI binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    std::string command = std::string(QCA_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed");
    std::string output;
    std::array<char, 4096> buffer;
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) output.append(buffer.data(), got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

std::string temp_path(const std::string& name) { return testing::TempDir() + name; }

} // namespace

TEST(CliConstruct, QrArrayFile) {
    std::string out = temp_path("qr7.txt");
    RunResult r = run_cli("construct --family qr --p 7 --y00 1 --out " + out);
    ASSERT_EQ(r.exit_code, 0);
    std::ifstream in(out);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    qca::TernaryArray a = qca::parse_text(text);
    EXPECT_EQ(a.n(), 7);
    EXPECT_EQ(a.m(), 7);
    EXPECT_EQ(a.nonzero_count(), 49);
}

TEST(CliConstruct, LegendreArrayDimensions) {
    RunResult r = run_cli("construct --family legendre-array --p 5 --q 7 --pattern calabro-wolf");
    ASSERT_EQ(r.exit_code, 0);
    qca::TernaryArray a = qca::parse_text(r.stdout_text);
    EXPECT_EQ(a.n(), 5);
    EXPECT_EQ(a.m(), 7);
    EXPECT_EQ(a, qca::calabro_wolf_array(qca::PrimeModulus(5), qca::PrimeModulus(7)));
}

TEST(CliConstruct, TernaryLegendreSequenceHasOneZero) {
    RunResult r = run_cli("construct --family legendre-seq --p 11 --ternary");
    ASSERT_EQ(r.exit_code, 0);
    qca::TernaryArray a = qca::parse_text(r.stdout_text);
    EXPECT_EQ(a.n(), 11);
    EXPECT_EQ(a.m(), 1);
    EXPECT_EQ(a.nonzero_count(), 10);
    EXPECT_EQ(a(0, 0), 0);
}

TEST(CliConstruct, ValidationFailureExitsTwo) {
    EXPECT_EQ(run_cli("construct --family qr --p 9").exit_code, 2);
    EXPECT_EQ(run_cli("construct --family no-such-family --p 7").exit_code, 2);
}

TEST(CliMerit, BarkerThirteenJson) {
    std::string path = temp_path("barker13.txt");
    {
        std::ofstream out(path);
        out << "13 1\n1\n1\n1\n1\n1\n-1\n-1\n1\n1\n-1\n1\n-1\n1\n";
    }
    RunResult r = run_cli("merit " + path);
    ASSERT_EQ(r.exit_code, 0);
    auto j = nlohmann::json::parse(r.stdout_text);
    EXPECT_EQ(j["merit_num"], 169);
    EXPECT_EQ(j["merit_den"], 12);
    EXPECT_EQ(j["energy"], 12);

    RunResult direct = run_cli("--engine direct merit " + path);
    RunResult spectral = run_cli("--engine spectral merit " + path);
    auto jd = nlohmann::json::parse(direct.stdout_text);
    auto js = nlohmann::json::parse(spectral.stdout_text);
    EXPECT_EQ(jd["merit_num"], js["merit_num"]);
    EXPECT_EQ(jd["merit_den"], js["merit_den"]);
    EXPECT_EQ(jd["engine"], "direct");
    EXPECT_EQ(js["engine"], "spectral");
}

TEST(CliMerit, UndefinedMeritExitsThree) {
    std::string path = temp_path("unit.txt");
    {
        std::ofstream out(path);
        out << "1 1\n1\n";
    }
    EXPECT_EQ(run_cli("merit " + path).exit_code, 3);
}

TEST(CliMerit, ParseFailureExitsTwo) {
    std::string path = temp_path("bad.txt");
    {
        std::ofstream out(path);
        out << "2 2\n1 2\n1 1\n";
    }
    EXPECT_EQ(run_cli("merit " + path).exit_code, 2);
    EXPECT_EQ(run_cli("merit /no/such/file.txt").exit_code, 2);
}

TEST(CliSearch, FourByFourPrintsBestMerit) {
    RunResult r = run_cli("search --n 4 --m 4");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_NE(r.stdout_text.find("F = 16/3"), std::string::npos);
    // The witness follows in array text format.
    EXPECT_NE(r.stdout_text.find("4 4\n"), std::string::npos);
}

TEST(CliSearch, MeanMatchesClosedForm) {
    RunResult r = run_cli("search --n 4 --m 2 --mean");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_NE(r.stdout_text.find("7/8"), std::string::npos);
}

TEST(CliSweep, RowCount) {
    RunResult r = run_cli("sweep --family qr --p 13 --grid 4");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(std::count(r.stdout_text.begin(), r.stdout_text.end(), '\n'), 17); // header + 16 rows
    EXPECT_TRUE(r.stdout_text.starts_with("s_num,s_den,t_num,t_den,F_measured,F_predicted\n"));
}

TEST(CliSweep, PlotDataLongFormat) {
    std::string plot = temp_path("sweep_plot.csv");
    RunResult r = run_cli("sweep --family legendre-array --p 7 --q 7 --grid 4 --plot-data " + plot);
    ASSERT_EQ(r.exit_code, 0);
    std::ifstream in(plot);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_TRUE(text.starts_with("s,t,F_measured,F_predicted\n"));
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 17);
    EXPECT_NE(text.find("-0.25,"), std::string::npos);
}

TEST(CliConverge, CsvShapeAndRationalRotation) {
    RunResult r = run_cli("converge --family legendre-seq --primes 11,13 --s 1/4 --t 0 --trials 1");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.stdout_text.starts_with("p,q,s,t,inv_merit_measured,inv_merit_predicted,residual,trial_seed\n"));
    EXPECT_EQ(std::count(r.stdout_text.begin(), r.stdout_text.end(), '\n'), 3);
    EXPECT_NE(r.stdout_text.find("0.166666666667"), std::string::npos); // predicted 1/6 at 12 digits
}

TEST(CliVerify, AllSuitesPassAtSmallPrimes) {
    RunResult r = run_cli("verify --suite all --pmax 13");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.stdout_text.find("PASS gauss_sum p=13"), std::string::npos);
    EXPECT_NE(r.stdout_text.find("PASS omega p=7"), std::string::npos);
    EXPECT_NE(r.stdout_text.find("PASS gamma p=13"), std::string::npos);
    EXPECT_NE(r.stdout_text.find("PASS exp_sum p=13"), std::string::npos);
    EXPECT_NE(r.stdout_text.find("PASS interpolation_bound p=13"), std::string::npos);
    EXPECT_EQ(r.stdout_text.find("FAIL"), std::string::npos);
}

TEST(CliRotationParsing, DecimalIsRationalizedWithWarning) {
    std::string command = std::string(QCA_CLI_PATH) +
                          " converge --family legendre-seq --primes 11 --s 0.25 --t 0 2>&1 >/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::string err;
    std::array<char, 4096> buffer;
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) err.append(buffer.data(), got);
    pclose(pipe);
    EXPECT_NE(err.find("warning"), std::string::npos);
    EXPECT_NE(err.find("250000/1000000"), std::string::npos);
}

TEST(CliConfigEcho, FirstStderrLineIsJson) {
    std::string command = std::string(QCA_CLI_PATH) + " search --n 2 --m 1 2>&1 >/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::string err;
    std::array<char, 4096> buffer;
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) err.append(buffer.data(), got);
    pclose(pipe);
    auto first_line = err.substr(0, err.find('\n'));
    auto j = nlohmann::json::parse(first_line);
    EXPECT_EQ(j["subcommand"], "search");
    EXPECT_EQ(j["n"], 2);
}
