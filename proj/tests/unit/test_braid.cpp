#include "qquiver/braid.hpp"

#include <doctest.h>

#include <random>

using namespace qquiver;

namespace {

StrandState apply_mod(const IntMatrix& m, const StrandState& top, std::uint64_t n) {
    StrandState out(top.size());
    for (std::size_t r = 0; r < top.size(); ++r) {
        BigInt s = 0;
        for (std::size_t c = 0; c < top.size(); ++c) {
            s += m(r, c) * top[c];
        }
        out[r] = static_cast<Element>(mod_reduce(s, n));
    }
    return out;
}

FiniteQuandle alexander5() {
    std::vector<Element> table(25);
    for (Element x = 0; x < 5; ++x) {
        for (Element y = 0; y < 5; ++y) {
            table[x * 5 + y] = (2 * x + 4 * y) % 5;
        }
    }
    return FiniteQuandle(5, table);
}

}  // namespace

TEST_CASE("torus braids") {
    const auto w = torus_braid({5, 1});
    CHECK(w.strands() == 5);
    CHECK(w.to_string() == "s1 s2 s3 s4");
    CHECK(torus_braid({2, 3}).to_string() == "s1 s1 s1");
    CHECK(torus_braid({7, 0}).length() == 0);
    CHECK(torus_braid({5, 4}).length() == 16);
    CHECK_THROWS_AS(torus_braid({1, 3}), std::invalid_argument);
}

TEST_CASE("braid word validation and parsing") {
    CHECK_THROWS(BraidWord(3, {{3, true}}));
    CHECK_THROWS(BraidWord(3, {{0, true}}));
    CHECK_THROWS(BraidWord(0, {}));

    const auto fig8 = parse_braid_word("s1 -s2 s1 -s2");
    CHECK(fig8.strands() == 3);
    CHECK(fig8.letters() == std::vector<Crossing>{{1, true}, {2, false}, {1, true}, {2, false}});
    CHECK(parse_braid_word("s1, s2,", 5).strands() == 5);
    CHECK_THROWS(parse_braid_word("x1"));
    CHECK_THROWS(parse_braid_word("s0"));
    CHECK_THROWS(parse_braid_word("s1 s3", 3));

    const auto torus = parse_link(" torus:5,2 ");
    REQUIRE(torus.torus);
    CHECK(torus.torus->p == 5);
    CHECK(torus.torus->q == 2);
    CHECK(torus.label == "torus:5,2");
    CHECK(parse_link("s1 s1 s1").label == "braid:2:s1 s1 s1");
    CHECK_THROWS(parse_link("torus:5"));
    CHECK_THROWS(parse_link("torus:5,x"));
    CHECK_THROWS(parse_link("torus:5,2", 4));
}

TEST_CASE("propagation through single crossings") {
    const FiniteQuandle r5 = DihedralQuandle(5).table();
    CHECK(propagate(BraidWord(3, {}), r5, {1, 2, 3}).bottom == StrandState{1, 2, 3});

    const auto pos = propagate(BraidWord(3, {{1, true}}), r5, {1, 3, 4});
    CHECK(pos.bottom == StrandState{3, 0, 4});
    REQUIRE(pos.sections.size() == 2);
    CHECK(pos.sections[0] == StrandState{1, 3, 4});

    // Negative crossing: (x, y) -> (y *̄ x, x); in R_5, 3 *̄ 1 = 2 - 3 = 4.
    CHECK(propagate(BraidWord(3, {{1, false}}), r5, {1, 3, 4}).bottom == StrandState{4, 1, 4});

    CHECK_THROWS_AS(propagate(BraidWord(2, {}), r5, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(propagate(BraidWord(2, {}), r5, {1, 7}), std::domain_error);
}

TEST_CASE("a crossing followed by its inverse is the identity, for kei and non-kei targets") {
    const FiniteQuandle alex = alexander5();
    const FiniteQuandle r6 = DihedralQuandle(6).table();
    for (const FiniteQuandle* q : {&alex, &r6}) {
        const auto m = static_cast<Element>(q->size());
        for (Element x = 0; x < m; ++x) {
            for (Element y = 0; y < m; ++y) {
                CHECK(propagate(BraidWord(2, {{1, true}, {1, false}}), *q, {x, y}).bottom == StrandState{x, y});
                CHECK(propagate(BraidWord(2, {{1, false}, {1, true}}), *q, {x, y}).bottom == StrandState{x, y});
            }
        }
    }
}

TEST_CASE("propagation matrices") {
    CHECK(propagation_matrix(BraidWord(4, {})) == IntMatrix::identity(4));
    CHECK(propagation_matrix(BraidWord(2, {{1, true}})) == IntMatrix{{0, 1}, {-1, 2}});
    CHECK(propagation_matrix(BraidWord(2, {{1, false}})) == IntMatrix{{2, -1}, {1, 0}});
    CHECK(propagation_matrix(BraidWord(2, {{1, true}})) * propagation_matrix(BraidWord(2, {{1, false}})) ==
          IntMatrix::identity(2));
    CHECK(propagation_matrix(torus_braid({5, 10})) == IntMatrix::identity(5));
    CHECK(propagation_matrix(torus_braid({3, 6})) == IntMatrix::identity(3));

    const auto a = parse_braid_word("s1 -s2 s3", 4);
    const auto b = parse_braid_word("-s3 s2 s2 s1", 4);
    CHECK(propagation_matrix(a.concat(b)) == propagation_matrix(b) * propagation_matrix(a));
}

TEST_CASE("matrix propagation agrees with table propagation") {
    std::mt19937 rng(7);
    for (std::uint32_t p = 2; p <= 7; ++p) {
        for (std::uint32_t q = 0; q <= 14; ++q) {
            const auto word = torus_braid({p, q});
            const IntMatrix m = propagation_matrix(word);
            for (std::uint64_t n = 2; n <= 9; ++n) {
                const FiniteQuandle rn = DihedralQuandle(n).table();
                std::uniform_int_distribution<Element> colour(0, static_cast<Element>(n - 1));
                for (int t = 0; t < 50; ++t) {
                    StrandState top(p);
                    for (auto& c : top) {
                        c = colour(rng);
                    }
                    REQUIRE(propagate(word, rn, top).bottom == apply_mod(m, top, n));
                }
            }
        }
    }
    // Mixed signs as well.
    const auto word = parse_braid_word("s1 -s2 s3 -s1 -s3 s2", 4);
    const IntMatrix m = propagation_matrix(word);
    for (std::uint64_t n = 2; n <= 9; ++n) {
        const FiniteQuandle rn = DihedralQuandle(n).table();
        for (Element x = 0; x < n; ++x) {
            const StrandState top{x, (x + 1) % static_cast<Element>(n), 0, (2 * x) % static_cast<Element>(n)};
            CHECK(propagate(word, rn, top).bottom == apply_mod(m, top, n));
        }
    }
}

TEST_CASE("in-place propagation matches the logged version") {
    const FiniteQuandle r7 = DihedralQuandle(7).table();
    const auto word = torus_braid({4, 5});
    StrandState s{1, 5, 2, 6};
    const auto logged = propagate(word, r7, s);
    propagate_in_place(word, r7, s);
    CHECK(s == logged.bottom);
    CHECK(logged.sections.size() == word.length() + 1);
}
