#include "oracles.hpp"

#include "qquiver/braid.hpp"
#include "qquiver/errors.hpp"
#include "qquiver/modular_linalg.hpp"

#include <doctest.h>

#include <random>

using namespace qquiver;

namespace {

IntMatrix from_dense(const oracle::Dense& d) {
    IntMatrix m(d.size(), d.empty() ? 0 : d[0].size());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            m(r, c) = d[r][c];
        }
    }
    return m;
}

void check_snf(const IntMatrix& a, const SnfResult& s) {
    CHECK(s.left * a * s.right == s.diagonal_matrix(a.rows(), a.cols()));
    const BigInt dl = determinant(s.left);
    const BigInt dr = determinant(s.right);
    CHECK((dl == 1 || dl == -1));
    CHECK((dr == 1 || dr == -1));
    for (std::size_t i = 0; i < s.diag.size(); ++i) {
        CHECK(s.diag[i] >= 0);
        if (i + 1 < s.diag.size() && s.diag[i] != 0) {
            CHECK(s.diag[i + 1] % s.diag[i] == 0);
        }
    }
}

IntMatrix torus_system(std::uint32_t p, std::uint32_t q) {
    return propagation_matrix(torus_braid({p, q})) - IntMatrix::identity(p);
}

}  // namespace

TEST_CASE("smith normal form of small fixed matrices") {
    SUBCASE("identity") {
        const auto s = smith_normal_form(IntMatrix::identity(3));
        CHECK(s.diag == std::vector<BigInt>{1, 1, 1});
        CHECK(s.rank == 3);
        check_snf(IntMatrix::identity(3), s);
    }
    SUBCASE("zero") {
        const auto s = smith_normal_form(IntMatrix::zeros(2, 2));
        CHECK(s.diag == std::vector<BigInt>{0, 0});
        CHECK(s.rank == 0);
    }
    SUBCASE("diag(2,3) becomes diag(1,6)") {
        const IntMatrix a{{2, 0}, {0, 3}};
        const auto s = smith_normal_form(a);
        CHECK(s.diag == std::vector<BigInt>{1, 6});
        check_snf(a, s);
    }
    SUBCASE("rectangular") {
        const IntMatrix a{{2, 4, 4}, {-6, 6, 12}};
        const auto s = smith_normal_form(a);
        CHECK(s.diag == std::vector<BigInt>{2, 6});
        check_snf(a, s);
    }
    CHECK_THROWS(smith_normal_form(IntMatrix{}));
}

TEST_CASE("smith normal form and kernel counts agree with independent oracles on random matrices") {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> dim(1, 4);
    std::uniform_int_distribution<int> entry(-3, 3);
    int cases = 0;
    for (int t = 0; t < 160; ++t) {
        const std::size_t rows = static_cast<std::size_t>(dim(rng));
        const std::size_t cols = static_cast<std::size_t>(dim(rng));
        oracle::Dense d(rows, std::vector<long long>(cols));
        for (auto& row : d) {
            for (auto& v : row) {
                v = entry(rng);
            }
        }
        const IntMatrix a = from_dense(d);
        const auto s = smith_normal_form(a);
        check_snf(a, s);
        CHECK(s.diag == oracle::invariant_factors(d));
        for (std::uint64_t n = 2; n <= 6; ++n) {
            const auto expected = oracle::kernel_count_brute(d, n, cols);
            REQUIRE(kernel_count_mod(a, n) == expected);
            const auto sols = kernel_enumerate_mod(a, n);
            REQUIRE(sols.size() == expected);
            CHECK(std::is_sorted(sols.begin(), sols.end()));
            CHECK(std::adjacent_find(sols.begin(), sols.end()) == sols.end());
            for (const auto& y : sols) {
                for (std::size_t r = 0; r < rows; ++r) {
                    long long sum = 0;
                    for (std::size_t c = 0; c < cols; ++c) {
                        sum += d[r][c] * static_cast<long long>(y[c]);
                    }
                    CHECK(((sum % static_cast<long long>(n)) + static_cast<long long>(n)) %
                              static_cast<long long>(n) ==
                          0);
                }
            }
        }
        ++cases;
    }
    CHECK(cases >= 100);
}

TEST_CASE("kernel counts") {
    CHECK(kernel_count_mod(IntMatrix::zeros(5, 5), 3) == 243);
    CHECK(kernel_count_mod(IntMatrix::identity(5), 7) == 1);
    CHECK(kernel_count_mod(torus_system(5, 2), 10) == 50);
    CHECK_THROWS_AS(kernel_count_mod(IntMatrix::identity(2), 1), InvalidModulus);
    CHECK_THROWS_AS(kernel_count_mod(IntMatrix::identity(2), 0), InvalidModulus);
}

TEST_CASE("kernel enumeration") {
    CHECK(kernel_enumerate_mod(IntMatrix::identity(4), 5) ==
          std::vector<std::vector<std::uint32_t>>{{0, 0, 0, 0}});
    CHECK(kernel_enumerate_mod(IntMatrix::zeros(2, 2), 2) ==
          std::vector<std::vector<std::uint32_t>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

    const auto sols = kernel_enumerate_mod(torus_system(5, 2), 5);
    REQUIRE(sols.size() == 25);
    for (const auto& y : sols) {
        CHECK(y[0] == y[2]);
        CHECK(y[2] == y[4]);
        CHECK(y[1] == y[3]);
    }
    CHECK_THROWS_AS(kernel_enumerate_mod(IntMatrix::zeros(3, 3), 10, 999), CapExceeded);
    CHECK(kernel_enumerate_mod(IntMatrix::zeros(3, 3), 10, 1000).size() == 1000);
}

TEST_CASE("one factorisation serves every modulus") {
    const IntMatrix a = torus_system(7, 4);
    const auto s = smith_normal_form(a);
    for (std::uint64_t n = 2; n <= 30; ++n) {
        CHECK(kernel_count_mod(s, 7, n) == kernel_count_mod(a, n));
    }
}

TEST_CASE("determinant and helpers") {
    CHECK(determinant(IntMatrix{{2, 1}, {7, 4}}) == 1);
    CHECK(determinant(IntMatrix{{0, 1, 2}, {1, 0, 3}, {4, -3, 8}}) == -2);
    CHECK(mod_reduce(BigInt(-7), 5) == 3);
    CHECK(to_decimal(BigInt(1) << 80) == "1208925819614629174706176");
}
