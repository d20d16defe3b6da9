#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "divkit/distributions.hpp"
#include "divkit/errors.hpp"
#include "support.hpp"

using namespace divkit;

namespace {

double sum(const ProbabilityDistribution& d) {
    return std::accumulate(d.values().begin(), d.values().end(), 0.0);
}

ValidationPolicy renormalize(double floor = 0.0) { return {ValidationMode::renormalize, floor}; }

}  // namespace

TEST_CASE("reject mode accepts distributions within the input tolerance") {
    const auto d = validate(std::vector<double>{0.25, 0.25, 0.5});
    CHECK(d.size() == 3);
    CHECK(d[2] == 0.5);

    const auto nudged = validate(std::vector<double>{0.5 + 5e-10, 0.5});
    CHECK(std::abs(sum(nudged) - 1.0) <= kSumTolerance);
}

TEST_CASE("reject mode rejects bad input") {
    CHECK_THROWS_AS(validate(std::vector<double>{0.5, 0.6}), RejectedInput);
    CHECK_THROWS_AS(validate(std::vector<double>{1.0, 0.0}), RejectedInput);
    CHECK_THROWS_AS(validate(std::vector<double>{1.5, -0.5}), RejectedInput);
    CHECK_THROWS_AS(validate(std::vector<double>{1.0}), RejectedInput);
    CHECK_THROWS_AS(validate(std::vector<double>{}), RejectedInput);
    CHECK_THROWS_AS(validate(std::vector<double>{NAN, 0.5}), RejectedInput);
    CHECK_THROWS_AS(validate(std::vector<double>{INFINITY, 0.5}), RejectedInput);
}

TEST_CASE("renormalize rescales and applies the zero floor") {
    const auto d = validate(std::vector<double>{2.0, 6.0}, renormalize());
    CHECK(d[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(d[1] == doctest::Approx(0.75).epsilon(1e-15));

    CHECK_THROWS_AS(validate(std::vector<double>{1.0, 0.0}, renormalize()), RejectedInput);

    const auto floored = validate(std::vector<double>{1.0, 0.0, 0.0}, renormalize(1e-3));
    for (double v : floored.values()) CHECK(v >= 1e-3);
    CHECK(std::abs(sum(floored) - 1.0) <= kSumTolerance);

    // mass above 1: the rescale would push the floored entries below the floor
    const auto heavy = validate(std::vector<double>{3.0, 0.0, -1.0, 2.0}, renormalize(0.01));
    for (double v : heavy.values()) CHECK(v >= 0.01);
    CHECK(std::abs(sum(heavy) - 1.0) <= kSumTolerance);

    CHECK_THROWS_AS(validate(std::vector<double>{1.0, 0.0}, renormalize(0.5)), RejectedInput);
    CHECK_THROWS_AS(validate(std::vector<double>{1.0, 0.0}, renormalize(-1.0)), RejectedInput);
}

TEST_CASE("validate is idempotent") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const std::size_t n = 2 + seed % 30;
        const auto d = sample_uniform_simplex(n, seed);
        CHECK(validate(d.values()) == d);
        CHECK(validate(d.values(), renormalize()) == d);

        std::vector<double> raw(d.values().begin(), d.values().end());
        raw[0] = 0.0;
        const auto once = validate(raw, renormalize(1e-4));
        CHECK(validate(once.values(), renormalize(1e-4)) == once);
        CHECK(validate(once.values()) == once);
    }
}

TEST_CASE("uniform simplex sampling") {
    SUBCASE("deterministic, valid, seed-sensitive") {
        const auto a = sample_uniform_simplex(7, 42);
        CHECK(a == sample_uniform_simplex(7, 42));
        CHECK_FALSE(a == sample_uniform_simplex(7, 43));
        for (double v : a.values()) CHECK(v > 0.0);
        CHECK(std::abs(sum(a) - 1.0) <= kSumTolerance);
        CHECK_THROWS_AS(sample_uniform_simplex(1, 0), RejectedInput);
    }
    SUBCASE("coordinate means and the Dirichlet(1) variance") {
        // each coordinate is Beta(1, n-1): mean 1/n, variance (n-1)/(n^2 (n+1))
        constexpr std::size_t n = 4;
        constexpr int draws = 40000;
        std::array<double, n> mean{}, sq{};
        for (int i = 0; i < draws; ++i) {
            const auto d = sample_uniform_simplex(n, static_cast<std::uint64_t>(i));
            for (std::size_t k = 0; k < n; ++k) {
                mean[k] += d[k] / draws;
                sq[k] += d[k] * d[k] / draws;
            }
        }
        const double var = (n - 1.0) / (n * n * (n + 1.0));
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(mean[k] == doctest::Approx(0.25).epsilon(0.02));
            CHECK(sq[k] - mean[k] * mean[k] == doctest::Approx(var).epsilon(0.05));
        }
    }
    SUBCASE("pairs use independent streams") {
        const auto pair = sample_uniform_pair(5, 9);
        CHECK_FALSE(pair.p() == pair.q());
        CHECK(pair.size() == 5);
    }
}

TEST_CASE("distribution pairs and mixtures") {
    const auto a = validate(std::vector<double>{0.5, 0.5});
    const auto b = validate(std::vector<double>{0.1, 0.9});
    const auto c = validate(std::vector<double>{0.2, 0.3, 0.5});
    CHECK_THROWS_AS(DistributionPair(a, c), RejectedInput);

    const DistributionPair ab(a, b);
    CHECK(ab.swapped().p() == b);
    CHECK(ab.swapped().q() == a);

    CHECK(mixture(a, b, 1.0) == a);
    CHECK(mixture(a, b, 0.0) == b);
    const auto half = mixture(a, b, 0.5);
    CHECK(half[0] == doctest::Approx(0.3));
    CHECK_THROWS_AS(mixture(a, b, 1.5), RejectedInput);
    CHECK_THROWS_AS(mixture(a, c, 0.5), RejectedInput);
}

TEST_CASE("CSV rows") {
    const auto row = parse_csv_row(" 0.25, +0.75 ", 3);
    REQUIRE(row.size() == 2);
    CHECK(row[1] == 0.75);
    try {
        parse_csv_row("0.5,abc", 7);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.locus() == 7);
    }
    CHECK_THROWS_AS(parse_csv_row("0.5,", 1), ParseError);
    CHECK_THROWS_AS(parse_csv_row("0.5;0.5", 1), ParseError);
}

TEST_CASE("CSV pair files") {
    const std::string text = "# reference pair\n0.5,0.5\n\n0.25,0.75\n0.2,0.3,0.5\n0.1,0.1,0.8\n";
    const auto pairs = parse_pairs(text, InputFormat::csv);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].q()[1] == 0.75);
    CHECK(pairs[1].size() == 3);

    const auto locus = [](const std::string& t) -> std::size_t {
        try {
            parse_pairs(t, InputFormat::csv);
        } catch (const ParseError& e) {
            return e.locus();
        }
        return 0;
    };
    CHECK(locus("0.5,0.5\n0.25,0.75\n0.5,0.5\n") == 3);
    CHECK(locus("0.5,0.5\n0.2,0.3,0.5\n") == 2);
    CHECK(locus("0.5,0.5\n# c\nx,1\n") == 3);

    try {
        parse_pairs("0.5,0.5\n0.25,0.75\n0.5,0.5\n0.6,0.6\n", InputFormat::csv);
        FAIL("expected RejectedInput");
    } catch (const RejectedInput& e) {
        CHECK(std::string(e.what()).find("pair 1 (q)") != std::string::npos);
    }

    // renormalize policy applies per record
    const auto renorm = parse_pairs("1,3\n0,1\n", InputFormat::csv, renormalize(1e-3));
    CHECK(renorm[0].p()[0] == doctest::Approx(0.25));
    CHECK(renorm[0].q()[0] >= 1e-3);
}

TEST_CASE("JSON pair files") {
    const auto pairs = parse_pairs(R"({"pairs":[{"p":[0.5,0.5],"q":[0.25,0.75]}]})", InputFormat::json);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].p()[0] == 0.5);

    const auto record = [](const std::string& t) -> long {
        try {
            parse_pairs(t, InputFormat::json);
        } catch (const ParseError& e) {
            return static_cast<long>(e.locus());
        }
        return -1;
    };
    CHECK(record(R"({"pairs":[{"p":[0.5,0.5],"q":[0.5,0.5]},{"p":[0.5,0.5]}]})") == 1);
    CHECK(record(R"({"pairs":[{"p":[0.5,0.5],"q":[0.2,0.3,0.5]}]})") == 0);
    CHECK(record(R"({"pairs":[3]})") == 0);
    CHECK(record(R"({"pairs":[{"p":["a",0.5],"q":[0.5,0.5]}]})") == 0);
    CHECK(record(R"({"other":[]})") == 0);
    CHECK_THROWS_AS(parse_pairs("{not json", InputFormat::json), ParseError);
    CHECK_THROWS_AS(parse_pairs(R"({"pairs":[{"p":[0.9,0.5],"q":[0.5,0.5]}]})", InputFormat::json),
                    RejectedInput);
}

TEST_CASE("loading from disk") {
    const auto dir = std::filesystem::temp_directory_path() / "divkit_test_distributions";
    std::filesystem::create_directories(dir);
    const auto path = dir / "pairs.csv";
    std::ofstream(path) << "0.5,0.5\n0.25,0.75\n";
    CHECK(load_pairs(path, InputFormat::csv).size() == 1);
    CHECK_THROWS_AS(load_pairs(dir / "missing.csv", InputFormat::csv), ParseError);
    CHECK(parse_input_format("json") == InputFormat::json);
    CHECK_THROWS_AS(parse_input_format("xml"), ParseError);
    std::filesystem::remove_all(dir);
}
