#include "qquiver/modular_linalg.hpp"

#include "qquiver/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qquiver {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("IntMatrix: ragged initializer");
        }
        for (long long v : row) {
            data_.emplace_back(v);
        }
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument("IntMatrix: dimension mismatch in product");
    }
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const BigInt& a = (*this)(i, k);
            if (a == 0) {
                continue;
            }
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                out(i, j) += a * rhs(k, j);
            }
        }
    }
    return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw std::invalid_argument("IntMatrix: dimension mismatch in difference");
    }
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) {
        out.data_[i] = data_[i] - rhs.data_[i];
    }
    return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw std::invalid_argument("IntMatrix: dimension mismatch in sum");
    }
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) {
        out.data_[i] = data_[i] + rhs.data_[i];
    }
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = (*this)(i, j);
        }
    }
    return out;
}

BigInt IntMatrix::max_abs() const {
    BigInt best = 0;
    for (const auto& v : data_) {
        best = std::max(best, BigInt(abs(v)));
    }
    return best;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) {
            os << (j ? ", " : "") << (*this)(i, j);
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

IntMatrix SnfResult::diagonal_matrix(std::size_t rows, std::size_t cols) const {
    IntMatrix d(rows, cols);
    for (std::size_t i = 0; i < diag.size() && i < rows && i < cols; ++i) {
        d(i, i) = diag[i];
    }
    return d;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
        std::swap(m(a, j), m(b, j));
    }
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::swap(m(i, a), m(i, b));
    }
}

// row[target] += factor * row[source]
void add_row_multiple(IntMatrix& m, std::size_t target, std::size_t source, const BigInt& factor) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m(source, j) != 0) {
            m(target, j) += factor * m(source, j);
        }
    }
}

// col[target] += factor * col[source]
void add_col_multiple(IntMatrix& m, std::size_t target, std::size_t source, const BigInt& factor) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (m(i, source) != 0) {
            m(i, target) += factor * m(i, source);
        }
    }
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a) {
    if (a.empty()) {
        throw std::invalid_argument("smith_normal_form: empty matrix");
    }
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    IntMatrix d = a;
    IntMatrix left = IntMatrix::identity(rows);
    IntMatrix right = IntMatrix::identity(cols);

    const std::size_t k = std::min(rows, cols);
    std::size_t t = 0;
    for (; t < k; ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        bool found = false;
        std::size_t pr = t;
        std::size_t pc = t;
        BigInt best;
        for (std::size_t i = t; i < rows; ++i) {
            for (std::size_t j = t; j < cols; ++j) {
                if (d(i, j) != 0 && (!found || abs(d(i, j)) < best)) {
                    found = true;
                    best = abs(d(i, j));
                    pr = i;
                    pc = j;
                }
            }
        }
        if (!found) {
            break;
        }

        for (;;) {
            swap_rows(d, t, pr);
            swap_rows(left, t, pr);
            swap_cols(d, t, pc);
            swap_cols(right, t, pc);

            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0) {
                    continue;
                }
                BigInt q = d(i, t) / d(t, t);
                add_row_multiple(d, i, t, -q);
                add_row_multiple(left, i, t, -q);
                dirty = dirty || d(i, t) != 0;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0) {
                    continue;
                }
                BigInt q = d(t, j) / d(t, t);
                add_col_multiple(d, j, t, -q);
                add_col_multiple(right, j, t, -q);
                dirty = dirty || d(t, j) != 0;
            }

            if (dirty) {
                // A remainder smaller than the pivot survived; restart with it.
                best = abs(d(t, t));
                pr = t;
                pc = t;
                for (std::size_t i = t + 1; i < rows; ++i) {
                    if (d(i, t) != 0 && abs(d(i, t)) < best) {
                        best = abs(d(i, t));
                        pr = i;
                        pc = t;
                    }
                }
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (d(t, j) != 0 && abs(d(t, j)) < best) {
                        best = abs(d(t, j));
                        pr = t;
                        pc = j;
                    }
                }
                continue;
            }

            // Row and column are clear; enforce divisibility of the rest.
            bool fixed = false;
            for (std::size_t i = t + 1; i < rows && !fixed; ++i) {
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (d(i, j) % d(t, t) != 0) {
                        add_row_multiple(d, t, i, BigInt(1));
                        add_row_multiple(left, t, i, BigInt(1));
                        fixed = true;
                        break;
                    }
                }
            }
            if (!fixed) {
                break;
            }
            pr = t;
            pc = t;
        }

        if (d(t, t) < 0) {
            for (std::size_t j = 0; j < cols; ++j) {
                d(t, j) = -d(t, j);
            }
            for (std::size_t j = 0; j < rows; ++j) {
                left(t, j) = -left(t, j);
            }
        }
    }

    SnfResult out;
    out.rank = t;
    out.diag.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.diag[i] = d(i, i);
    }
    out.left = std::move(left);
    out.right = std::move(right);
    return out;
}

BigInt determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("determinant: matrix is not square");
    }
    const std::size_t n = a.rows();
    if (n == 0) {
        return 1;
    }
    IntMatrix m = a;
    BigInt sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap_with = k + 1;
            while (swap_with < n && m(swap_with, k) == 0) {
                ++swap_with;
            }
            if (swap_with == n) {
                return 0;
            }
            swap_rows(m, k, swap_with);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::uint64_t mod_reduce(const BigInt& v, std::uint64_t n) {
    BigInt r = v % n;
    if (r < 0) {
        r += n;
    }
    return r.convert_to<std::uint64_t>();
}

std::string to_decimal(const BigInt& v) { return v.str(); }

namespace {

void require_modulus(std::uint64_t n) {
    if (n < 2) {
        throw InvalidModulus("modulus must be at least 2, got " + std::to_string(n));
    }
}

std::uint64_t gcd_with(const BigInt& d, std::uint64_t n) {
    return std::gcd(mod_reduce(d, n), n);
}

}  // namespace

BigInt kernel_count_mod(const SnfResult& snf, std::size_t cols, std::uint64_t n) {
    require_modulus(n);
    BigInt count = 1;
    for (const auto& d : snf.diag) {
        count *= gcd_with(d, n);
    }
    for (std::size_t i = snf.diag.size(); i < cols; ++i) {
        count *= n;
    }
    return count;
}

BigInt kernel_count_mod(const IntMatrix& a, std::uint64_t n) {
    require_modulus(n);
    if (a.empty()) {
        BigInt count = 1;
        for (std::size_t i = 0; i < a.cols(); ++i) {
            count *= n;
        }
        return count;
    }
    return kernel_count_mod(smith_normal_form(a), a.cols(), n);
}

std::vector<std::vector<std::uint32_t>> kernel_enumerate_mod(const SnfResult& snf, std::size_t cols,
                                                             std::uint64_t n, std::uint64_t cap) {
    require_modulus(n);
    if (n > std::numeric_limits<std::uint32_t>::max()) {
        throw InvalidModulus("modulus too large for enumeration: " + std::to_string(n));
    }
    const BigInt count = kernel_count_mod(snf, cols, n);
    if (count > cap) {
        const std::uint64_t requested = count > std::numeric_limits<std::uint64_t>::max()
                                            ? std::numeric_limits<std::uint64_t>::max()
                                            : count.convert_to<std::uint64_t>();
        throw CapExceeded("kernel enumeration of " + to_decimal(count) + " vectors exceeds cap " +
                              std::to_string(cap),
                          requested, cap);
    }

    // In the coordinates z = right^-1 * y the system is diagonal: z_i ranges
    // over multiples of n / gcd(d_i, n); coordinates past the diagonal are free.
    std::vector<std::uint64_t> step(cols, 1);
    std::vector<std::uint64_t> choices(cols, n);
    for (std::size_t i = 0; i < snf.diag.size(); ++i) {
        const std::uint64_t g = gcd_with(snf.diag[i], n);
        choices[i] = g;
        step[i] = n / g;
    }
    std::vector<std::uint64_t> basis(cols * cols);
    for (std::size_t i = 0; i < cols; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            basis[i * cols + j] = mod_reduce(snf.right(i, j), n);
        }
    }

    std::vector<std::vector<std::uint32_t>> out;
    out.reserve(count.convert_to<std::size_t>());
    std::vector<std::uint64_t> digit(cols, 0);
    for (;;) {
        std::vector<std::uint32_t> y(cols);
        for (std::size_t i = 0; i < cols; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < cols; ++j) {
                const std::uint64_t z = digit[j] * step[j];
                acc = (acc + static_cast<unsigned __int128>(basis[i * cols + j]) * z % n) % n;
            }
            y[i] = static_cast<std::uint32_t>(acc);
        }
        out.push_back(std::move(y));

        bool done = true;
        for (std::size_t pos = cols; pos-- > 0;) {
            if (++digit[pos] < choices[pos]) {
                done = false;
                break;
            }
            digit[pos] = 0;
        }
        if (done) {
            break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::uint32_t>> kernel_enumerate_mod(const IntMatrix& a, std::uint64_t n,
                                                             std::uint64_t cap) {
    require_modulus(n);
    if (a.empty()) {
        throw std::invalid_argument("kernel_enumerate_mod: empty matrix");
    }
    return kernel_enumerate_mod(smith_normal_form(a), a.cols(), n, cap);
}

}  // namespace qquiver
