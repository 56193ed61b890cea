#include "qquiver/coloring.hpp"
#include "qquiver/counting.hpp"
#include "qquiver/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <tuple>

using namespace qquiver;

TEST_CASE("closed-form counts") {
    CHECK(predict_count(5, 10, 4).count == 1024);
    CHECK(predict_count(5, 10, 4).label == CountCase::free);
    CHECK(predict_count(5, 5, 6).count == 96);
    CHECK(predict_count(5, 5, 6).label == CountCase::half_period);
    CHECK(predict_count(7, 4, 21).count == 147);
    CHECK(predict_count(7, 4, 21).label == CountCase::gcd_even);
    CHECK(predict_count(7, 3, 10).count == 10);
    CHECK(predict_count(7, 3, 10).label == CountCase::trivial_only);
    CHECK(predict_count(5, 7, 4).count == 4);

    const auto p775 = predict_count(7, 7, 9);
    CHECK(p775.count == 9);
    CHECK_FALSE(p775.ambiguous());
    CHECK(predict_count(7, 7, 14).count == 64 * 14);
    CHECK_FALSE(predict_count(7, 7, 14).ambiguous());
}

TEST_CASE("conflicting statements are labelled ambiguous") {
    const auto a = predict_count(5, 2, 5);
    CHECK(a.ambiguous());
    CHECK(a.regime == CountCase::gcd_even);
    CHECK(a.candidates() == std::vector<BigInt>{5, 25});
    CHECK_FALSE(a.note.empty());

    CHECK(predict_count(3, 4, 3).candidates() == std::vector<BigInt>{3, 9});
    CHECK_FALSE(predict_count(3, 6, 3).ambiguous());  // q = 2p: n^p

    // p = 7, q = p: parity rule vs "n = 7k, k >= 2" row.
    CHECK(predict_count(7, 7, 21).candidates() == std::vector<BigInt>{21, 64 * 21});
    CHECK(predict_count(7, 7, 10).candidates() == std::vector<BigInt>{640, 10});
    CHECK(predict_count(7, 21, 10).ambiguous());
    CHECK_FALSE(predict_count(7, 7, 7).ambiguous());
    CHECK_FALSE(predict_count(5, 5, 10).ambiguous());
}

TEST_CASE("predictor preconditions") {
    CHECK_THROWS_AS(predict_count(2, 3, 5), UnsupportedParameters);
    CHECK_THROWS_AS(predict_count(9, 3, 5), UnsupportedParameters);
    CHECK_THROWS_AS(predict_count(1, 3, 5), UnsupportedParameters);
    CHECK_THROWS_AS(predict_count(5, 3, 1), InvalidModulus);
    CHECK(is_prime(2));
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(91));
    CHECK_FALSE(is_prime(1));
}

TEST_CASE("predictions are multiples of n, at least n, and periodic in q") {
    for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
        for (std::uint32_t q = 0; q <= 30; ++q) {
            for (std::uint64_t n = 2; n <= 40; ++n) {
                const auto pr = predict_count(p, q, n);
                for (const auto& c : pr.candidates()) {
                    CHECK(c % n == 0);
                    CHECK(c >= n);
                }
                const auto later = predict_count(p, q + 2 * p, n);
                CHECK(later.count == pr.count);
                CHECK(later.label == pr.label);
                CHECK(pr.residue == q % (2 * p));
            }
        }
    }
}

TEST_CASE("labels round-trip through text") {
    for (auto c : {CountCase::free, CountCase::trivial_only, CountCase::gcd_even, CountCase::half_period,
                   CountCase::ambiguous}) {
        CHECK(parse_count_case(to_string(c)) == c);
    }
    for (auto s : {CellStatus::match, CellStatus::ambiguous_resolved, CellStatus::mismatch}) {
        CHECK(parse_cell_status(to_string(s)) == s);
    }
    CHECK_FALSE(parse_count_case("nope").has_value());
    CHECK(to_string(CellStatus::ambiguous_resolved) == "ambiguous-resolved");
}

TEST_CASE("p = 5 sweep: every non-ambiguous cell matches") {
    GridSpec grid{{5}, {}, {}};
    for (std::uint32_t q = 0; q <= 20; ++q) {
        grid.q.push_back(q);
    }
    for (std::uint64_t n = 2; n <= 9; ++n) {
        grid.n.push_back(n);
    }
    const auto report = verify_counts(grid);
    CHECK(report.cells.size() == 21 * 8);
    CHECK_FALSE(report.has_mismatch());
    CHECK_FALSE(report.cap_exceeded());
    for (const auto& c : report.cells) {
        REQUIRE(c.linear);
        REQUIRE(c.oracle);
        CHECK(*c.linear == *c.oracle);
        if (c.label == CountCase::ambiguous) {
            CHECK(c.status == CellStatus::ambiguous_resolved);
            // n = p with even q: the computation gives pn.
            CHECK(c.n == 5);
            CHECK(c.computed == 25);
            CHECK(c.detail.find("tabulated") != std::string::npos);
        } else {
            CHECK(c.status == CellStatus::match);
        }
    }
    CHECK(report.count(CellStatus::ambiguous_resolved) == 8);  // q in {2,4,6,8,12,14,16,18}
    CHECK(std::is_sorted(report.cells.begin(), report.cells.end(), [](const SweepCell& a, const SweepCell& b) {
        return std::tie(a.p, a.q, a.n) < std::tie(b.p, b.q, b.n);
    }));
}

TEST_CASE("p = 7, q = 7, n = 9") {
    const auto report = verify_counts(GridSpec{{7}, {7}, {9}});
    REQUIRE(report.cells.size() == 1);
    const auto& c = report.cells[0];
    CHECK(c.predicted == 9);
    CHECK(c.computed == 9);
    CHECK(c.status == CellStatus::match);
}

TEST_CASE("the p = 7 table row for q = p: computation sides with the parity rule") {
    VerifyOptions linear_only;
    linear_only.run_oracle = false;
    const auto report = verify_counts(GridSpec{{7}, {7, 21}, {10, 14, 21, 35}}, linear_only);
    for (const auto& c : report.cells) {
        CHECK(c.status != CellStatus::mismatch);
        if (c.n == 10) {
            CHECK(c.computed == 640);
        }
        if (c.n == 21 || c.n == 35) {
            CHECK(c.computed == c.n);
        }
    }
}

TEST_CASE("general-p rule against the linear backend on a wider grid") {
    VerifyOptions linear_only;
    linear_only.run_oracle = false;
    GridSpec grid{{3, 5, 7, 11}, {}, {}};
    for (std::uint32_t q = 0; q <= 22; ++q) {
        grid.q.push_back(q);
    }
    for (std::uint64_t n = 2; n <= 40; ++n) {
        grid.n.push_back(n);
    }
    const auto report = verify_counts(grid, linear_only);
    for (const auto& c : report.cells) {
        CHECK_MESSAGE(c.status != CellStatus::mismatch, "T(", c.p, ",", c.q, ") n=", c.n, ": ", c.detail);
    }
}

TEST_CASE("sweep bookkeeping") {
    CHECK(verify_counts(GridSpec{}).cells.empty());
    CHECK(verify_counts(GridSpec{{3}, {1}, {}}).cells.empty());
    CHECK_THROWS_AS(verify_counts(GridSpec{{4}, {1}, {3}}), UnsupportedParameters);

    VerifyOptions small;
    small.oracle_cap = 100;
    const auto report = verify_counts(GridSpec{{5}, {1}, {2, 3}}, small);
    REQUIRE(report.cells.size() == 2);
    CHECK_FALSE(report.cells[0].oracle_skipped);  // 2^5 = 32
    CHECK(report.cells[1].oracle_skipped);        // 3^5 = 243
    CHECK(report.cap_exceeded());
    CHECK(report.cells[1].status == CellStatus::match);

    VerifyOptions filtered;
    filtered.max_colorings_space = 1000;
    CHECK(verify_counts(GridSpec{{7}, {1}, {2, 3}}, filtered).cells.size() == 1);

    // Duplicates and order in the grid do not matter.
    CHECK(verify_counts(GridSpec{{5, 5}, {3, 1}, {4, 2, 4}}) == verify_counts(GridSpec{{5}, {1, 3}, {2, 4}}));
}
