#pragma once

// Exact integer linear algebra: Smith normal form over Z and solution
// counting / enumeration for homogeneous systems over Z_n.
//
// Everything here is exact. Matrix entries are arbitrary precision because
// braid propagation matrices grow with the word length.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace qquiver {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix zeros(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    IntMatrix operator+(const IntMatrix& rhs) const;
    bool operator==(const IntMatrix& rhs) const = default;

    IntMatrix transpose() const;
    // Largest absolute entry; useful for tracking coefficient growth.
    BigInt max_abs() const;
    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

/// Result of a Smith normal form computation: left * A * right == D where D
/// carries `diag` on its main diagonal (length min(rows, cols)) and zeros
/// elsewhere. diag[i] divides diag[i + 1]; all entries are non-negative and
/// the nonzero ones come first.
struct SnfResult {
    std::vector<BigInt> diag;
    std::size_t rank = 0;
    IntMatrix left;
    IntMatrix right;

    IntMatrix diagonal_matrix(std::size_t rows, std::size_t cols) const;
};

SnfResult smith_normal_form(const IntMatrix& a);

/// Exact determinant (fraction-free Bareiss elimination). Square input only.
BigInt determinant(const IntMatrix& a);

/// Number of y in Z_n^cols with A*y == 0 (mod n).
BigInt kernel_count_mod(const IntMatrix& a, std::uint64_t n);
/// Same count from a precomputed SNF of an rows x cols matrix; lets callers
/// factor once and specialise per modulus.
BigInt kernel_count_mod(const SnfResult& snf, std::size_t cols, std::uint64_t n);

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// All solutions of A*y == 0 (mod n), lexicographically sorted, entries in
/// [0, n). Throws CapExceeded when the solution count is above `cap`.
std::vector<std::vector<std::uint32_t>> kernel_enumerate_mod(const IntMatrix& a, std::uint64_t n,
                                                             std::uint64_t cap = kDefaultEnumerationCap);
std::vector<std::vector<std::uint32_t>> kernel_enumerate_mod(const SnfResult& snf, std::size_t cols,
                                                             std::uint64_t n,
                                                             std::uint64_t cap = kDefaultEnumerationCap);

/// Non-negative residue of v modulo n.
std::uint64_t mod_reduce(const BigInt& v, std::uint64_t n);

/// Decimal rendering of a BigInt.
std::string to_decimal(const BigInt& v);

}  // namespace qquiver
