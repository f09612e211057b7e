// Runs the installed command-line tool and checks exit codes and output.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <gtest/gtest.h>

#include "walkvisits/io.hpp"

namespace {

struct RunCli {
    int exit_code = -1;
    std::string out;
};

RunCli run(const std::string& args)
{
    const auto dir = std::filesystem::temp_directory_path();
    const auto stdout_path = dir / ("walkvisits_cli_" + std::to_string(::getpid()) + ".out");
    const std::string cmd = std::string(WALKVISITS_CLI_PATH) + " " + args + " > " +
                            stdout_path.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunCli r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(stdout_path);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    std::filesystem::remove(stdout_path);
    return r;
}

}  // namespace

TEST(CliTest, joint_csv)
{
    const RunCli r = run("joint --n 2 --z 1");
    ASSERT_EQ(0, r.exit_code);
    const auto record = walkvisits::io::from_csv(r.out);
    EXPECT_EQ("joint", record.command);
    EXPECT_EQ(4U, record.rows.size());
}

TEST(CliTest, joint_json_round_trips)
{
    const RunCli r = run("joint --n 3 --z 1 --format json");
    ASSERT_EQ(0, r.exit_code);
    const auto record = walkvisits::io::parse(r.out, walkvisits::io::Format::json);
    EXPECT_EQ(6U, record.rows.size());
    EXPECT_EQ(r.out, walkvisits::io::render(record, walkvisits::io::Format::json));
}

TEST(CliTest, usage_and_domain_errors_exit_2)
{
    EXPECT_EQ(2, run("joint --n 2 --z 0").exit_code);
    EXPECT_EQ(2, run("joint --n 2").exit_code);
    EXPECT_EQ(2, run("joint --n 2 --z 1 --format xml").exit_code);
    EXPECT_EQ(2, run("simulate --n 4 --z 1 --trials 0").exit_code);
    EXPECT_EQ(2, run("limit --z -1").exit_code);
    EXPECT_EQ(2, run("marginal --which y --n 2 --z 1").exit_code);
    EXPECT_EQ(2, run("nonsense").exit_code);
    EXPECT_EQ(0, run("--help").exit_code);
}

TEST(CliTest, simulate_is_byte_reproducible)
{
    const RunCli a = run("simulate --n 30 --z 2 --trials 50000 --seed 17");
    const RunCli b = run("simulate --n 30 --z 2 --trials 50000 --seed 17");
    ASSERT_EQ(0, a.exit_code);
    EXPECT_EQ(a.out, b.out);
    const RunCli single = run("simulate --n 30 --z 2 --trials 50000 --seed 17");
    ::setenv("WALKVISITS_THREADS", "1", 1);
    const RunCli capped = run("simulate --n 30 --z 2 --trials 50000 --seed 17");
    ::unsetenv("WALKVISITS_THREADS");
    EXPECT_EQ(single.out, capped.out);
}

TEST(CliTest, out_file_is_written)
{
    const auto path = std::filesystem::temp_directory_path() / "walkvisits_cli_moments.csv";
    std::filesystem::remove(path);
    ASSERT_EQ(0, run("moments --n 7 --z 2 --out " + path.string()).exit_code);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto record = walkvisits::io::from_csv(ss.str());
    ASSERT_EQ(4U, record.rows.size());
    EXPECT_EQ("7", walkvisits::io::format_cell(record.rows[1][1]));
    std::filesystem::remove(path);
}

TEST(CliTest, limit_and_marginal)
{
    const RunCli limit = run("limit --z 1 --grid -1:2:4,0:1:3");
    ASSERT_EQ(0, limit.exit_code);
    EXPECT_EQ(12U, walkvisits::io::from_csv(limit.out).rows.size());
    const RunCli marginal = run("marginal --which k --n 2 --z 1");
    ASSERT_EQ(0, marginal.exit_code);
    EXPECT_NE(std::string::npos, marginal.out.find("joint_column_sums_match=true"));
}

TEST(CliTest, verify_quick_exits_zero)
{
    const RunCli r = run("verify --depth quick");
    EXPECT_EQ(0, r.exit_code);
    EXPECT_NE(std::string::npos, r.out.find("all_passed=true"));
}
