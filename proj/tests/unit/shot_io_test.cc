#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "tmsr/errors.h"
#include "tmsr/shot_io.h"

namespace tmsr {
namespace {

ShotSet random_set(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    std::uniform_int_distribution<int> label(0, 1);
    ShotSet set;
    set.header = {seed, seed * 3, 0.25 * static_cast<double>(seed % 7), 90.0, 0.937, 28.2, 13.4, n};
    for (std::size_t k = 0; k < n; ++k) {
        // Exponents spread values across magnitudes to stress shortest formatting.
        const double scale = std::pow(10.0, static_cast<int>(k % 9) - 4);
        set.shots.push_back({label(gen) ? QubitState::excited : QubitState::ground,
                             {u(gen) * scale, u(gen) * scale, u(gen) / scale, u(gen)}});
    }
    return set;
}

TEST(ShotCsv, RoundTripIsExact) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto set = random_set(seed, 50);
        std::stringstream io;
        write_shots_csv(io, set, {"tmsr 0.1.0", "config {\"a\":1}"});
        EXPECT_EQ(read_shots_csv(io), set) << "seed " << seed;
    }
}

TEST(ShotCsv, Layout) {
    ShotSet set;
    set.header = {7, 2, 0.5, 90.0, 1.0, 28.2, 13.4, 1};
    set.shots = {{QubitState::ground, {1.5, -2.0, 0.1, 3.0}}, {QubitState::excited, {0.0, 1e-20, -4.0, 5.25}}};
    std::ostringstream out;
    write_shots_csv(out, set, {"hello"});
    EXPECT_EQ(out.str(),
              "# hello\n"
              "# tmsr-shots seed=7 cell=2 r=0.5 nbar_in=90 theta=1 n_sys_a=28.2 n_sys_b=13.4 shots_per_state=1\n"
              "label,I_a,Q_a,I_b,Q_b\n"
              "g,1.5,-2,0.1,3\n"
              "e,0,1e-20,-4,5.25\n");
}

TEST(ShotCsv, RejectsMalformedInput) {
    std::istringstream no_header("g,1,2,3,4\n");
    EXPECT_THROW(read_shots_csv(no_header), DomainError);
    std::istringstream bad_label("label,I_a,Q_a,I_b,Q_b\nx,1,2,3,4\n");
    EXPECT_THROW(read_shots_csv(bad_label), DomainError);
    std::istringstream short_row("label,I_a,Q_a,I_b,Q_b\ng,1,2,3\n");
    EXPECT_THROW(read_shots_csv(short_row), DomainError);
    std::istringstream bad_number("label,I_a,Q_a,I_b,Q_b\ng,1,2,three,4\n");
    EXPECT_THROW(read_shots_csv(bad_number), DomainError);
}

TEST(ShotBinary, RoundTripIsExact) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto set = random_set(seed, 64);
        std::stringstream io;
        write_shots_binary(io, set);
        EXPECT_EQ(read_shots_binary(io), set);
    }
}

TEST(ShotBinary, SizeAndMagic) {
    const auto set = random_set(3, 10);
    std::stringstream io;
    write_shots_binary(io, set);
    const std::string bytes = io.str();
    EXPECT_EQ(bytes.substr(0, 8), "TMSRSHT1");
    // magic + 8 header fields + count + records of (1 + 32) bytes
    EXPECT_EQ(bytes.size(), 8u + 8u * 8u + 8u + 10u * 33u);
}

TEST(ShotBinary, RejectsCorruptInput) {
    std::istringstream bad_magic("NOTSHOTS");
    EXPECT_THROW(read_shots_binary(bad_magic), DomainError);
    const auto set = random_set(4, 5);
    std::stringstream io;
    write_shots_binary(io, set);
    std::istringstream truncated(io.str().substr(0, io.str().size() - 3));
    EXPECT_THROW(read_shots_binary(truncated), DomainError);
}

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(28.2), "28.2");
    EXPECT_EQ(format_double(-0.0), "-0");
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const double x = u(gen) * std::pow(10.0, k % 40 - 20);
        EXPECT_EQ(std::stod(format_double(x)), x);
    }
}

}  // namespace
}  // namespace tmsr
