#include "walkvisits/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "walkvisits/dyadic.hpp"

using namespace walkvisits;
using io::Cell;
using io::OutputRecord;

namespace {

OutputRecord random_record(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> small(0, 6);
    std::uniform_real_distribution<double> real(-1e6, 1e6);
    OutputRecord r;
    r.command = "cmd" + std::to_string(small(rng));
    for (int i = 0; i < small(rng); ++i) {
        r.parameters.emplace_back("p" + std::to_string(i), std::to_string(rng() % 1000));
    }
    const int width = 1 + small(rng);
    for (int c = 0; c < width; ++c) {
        r.columns.push_back("c" + std::to_string(c));
    }
    const int height = small(rng) * 3;
    for (int i = 0; i < height; ++i) {
        std::vector<Cell> row;
        for (int c = 0; c < width; ++c) {
            switch (rng() % 4) {
            case 0: row.emplace_back(static_cast<std::int64_t>(rng() % 2001) - 1000); break;
            case 1: row.emplace_back(real(rng)); break;
            case 2: row.emplace_back(std::ldexp(static_cast<double>(rng() % 1000), -static_cast<int>(rng() % 80))); break;
            default: row.emplace_back(Dyadic(BigInt(rng() % 99), static_cast<std::int64_t>(rng() % 70)).str());
            }
        }
        r.rows.push_back(std::move(row));
    }
    if (rng() % 2 == 0) {
        r.footer.emplace_back("sum_exact", "1/2^0");
    }
    return r;
}

}  // namespace

TEST(IoTest, doubles_always_look_like_doubles)
{
    EXPECT_EQ("1.0", io::format_double(1.0));
    EXPECT_EQ("0.25", io::format_double(0.25));
    EXPECT_EQ("1e+100", io::format_double(1e100));
    EXPECT_EQ(Cell{1.0}, io::parse_cell("1.0"));
    EXPECT_EQ(Cell{std::int64_t{1}}, io::parse_cell("1"));
    EXPECT_EQ(Cell{std::string("1/2^3")}, io::parse_cell("1/2^3"));
    EXPECT_EQ(Cell{std::string("E[X]")}, io::parse_cell("E[X]"));
}

TEST(IoTest, csv_and_json_round_trip)
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const OutputRecord r = random_record(rng);
        ASSERT_EQ(r, io::parse(io::render(r, io::Format::csv), io::Format::csv)) << io::to_csv(r);
        ASSERT_EQ(r, io::parse(io::render(r, io::Format::json), io::Format::json));
    }
}

TEST(IoTest, csv_layout)
{
    OutputRecord r;
    r.command = "joint";
    r.parameters = {{"n", "0"}, {"z", "1"}};
    r.columns = {"X", "K", "prob_exact", "prob_float"};
    r.rows = {{std::int64_t{0}, std::int64_t{0}, std::string("1/2^0"), 1.0}};
    r.footer = {{"sum_exact", "1/2^0"}};
    EXPECT_EQ("# schema_version=walkvisits/1\n# command=joint\n# n=0\n# z=1\n"
              "X,K,prob_exact,prob_float\n0,0,1/2^0,1.0\n# sum_exact=1/2^0\n",
              io::to_csv(r));
}

TEST(IoTest, rejects_malformed_input)
{
    OutputRecord r;
    r.command = "x";
    r.columns = {"a"};
    r.rows = {{std::string("has,comma")}};
    EXPECT_THROW(io::to_csv(r), domain_error);
    r.rows = {{std::int64_t{1}, std::int64_t{2}}};
    EXPECT_THROW(io::to_csv(r), domain_error);
    EXPECT_THROW(io::from_csv("# only=comments\n"), domain_error);
    EXPECT_THROW(io::from_csv("a,b\n1\n"), domain_error);
    EXPECT_THROW(io::parse("{not json", io::Format::json), domain_error);
    EXPECT_THROW(io::parse("{\"command\": 1}", io::Format::json), domain_error);
}

// The exact column must reconstruct the float column to within one ulp.
TEST(IoTest, exact_strings_reconstruct_floats)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        const Dyadic d(BigInt(rng() >> (rng() % 60)), static_cast<std::int64_t>(rng() % 200));
        const Cell exact = io::parse_cell(d.str());
        const Cell approx = io::parse_cell(io::format_double(d.to_double()));
        const double back = Dyadic::parse(std::get<std::string>(exact)).to_double();
        const double f = std::get<double>(approx);
        ASSERT_LE(std::abs(back - f), std::abs(std::nextafter(f, 2.0 * f + 1.0) - f));
    }
}

TEST(IoTest, atomic_write_replaces_file)
{
    const auto dir = std::filesystem::temp_directory_path() / "walkvisits_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.csv";
    io::write_atomically(path, "first\n");
    io::write_atomically(path, "second\n");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ("second\n", ss.str());
    EXPECT_FALSE(std::filesystem::exists(dir / "out.csv.tmp"));
    std::filesystem::remove_all(dir);
}
