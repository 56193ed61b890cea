#pragma once

// Test-only reference implementations. They share no code with the library
// beyond plain value types, and favour obviousness over speed.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Big = boost::multiprecision::cpp_int;
using Dense = std::vector<std::vector<long long>>;

// Laplace expansion along the first row.
inline Big det(const std::vector<std::vector<Big>>& m) {
    const std::size_t n = m.size();
    if (n == 0) {
        return 1;
    }
    if (n == 1) {
        return m[0][0];
    }
    Big total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c] == 0) {
            continue;
        }
        std::vector<std::vector<Big>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Big> row;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != c) {
                    row.push_back(m[r][k]);
                }
            }
            minor.push_back(std::move(row));
        }
        const Big term = m[0][c] * det(minor);
        total += (c % 2 == 0) ? term : Big(-term);
    }
    return total;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i) {
            if (pick[i]) {
                s.push_back(i);
            }
        }
        out.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

// Invariant factors from determinantal divisors: D_k = gcd of all k x k
// minors, s_k = D_k / D_{k-1}. Returns min(rows, cols) entries, zeros last.
inline std::vector<Big> invariant_factors(const Dense& a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    const std::size_t k_max = std::min(rows, cols);
    std::vector<Big> out;
    Big prev = 1;
    for (std::size_t k = 1; k <= k_max; ++k) {
        Big g = 0;
        for (const auto& rs : subsets(rows, k)) {
            for (const auto& cs : subsets(cols, k)) {
                std::vector<std::vector<Big>> m(k, std::vector<Big>(k));
                for (std::size_t i = 0; i < k; ++i) {
                    for (std::size_t j = 0; j < k; ++j) {
                        m[i][j] = a[rs[i]][cs[j]];
                    }
                }
                Big d = det(m);
                if (d < 0) {
                    d = -d;
                }
                g = boost::multiprecision::gcd(g, d);
            }
        }
        if (g == 0) {
            out.resize(k_max, 0);
            return out;
        }
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

// Counts y in Z_n^cols with A y == 0 (mod n) by trying all of them.
inline std::uint64_t kernel_count_brute(const Dense& a, std::uint64_t n, std::size_t cols) {
    std::vector<long long> y(cols, 0);
    std::uint64_t count = 0;
    for (;;) {
        bool ok = true;
        for (const auto& row : a) {
            long long s = 0;
            for (std::size_t j = 0; j < cols; ++j) {
                s += row[j] * y[j];
            }
            if (((s % static_cast<long long>(n)) + static_cast<long long>(n)) % static_cast<long long>(n) != 0) {
                ok = false;
                break;
            }
        }
        count += ok ? 1 : 0;
        std::size_t i = cols;
        while (i > 0) {
            --i;
            if (++y[i] < static_cast<long long>(n)) {
                break;
            }
            y[i] = 0;
            if (i == 0) {
                return count;
            }
        }
        if (cols == 0) {
            return count;
        }
    }
}

// A braid letter: 1-based generator and sign.
using Letter = std::pair<unsigned, bool>;

// Dihedral colorings by direct modular arithmetic. Positive crossing:
// (x, y) -> (y, 2y - x); negative: (x, y) -> (2x - y, x).
inline std::vector<std::vector<std::uint32_t>> dihedral_colorings(std::size_t strands,
                                                                  const std::vector<Letter>& word,
                                                                  std::uint64_t n) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> top(strands, 0);
    const auto m = static_cast<long long>(n);
    auto mod = [m](long long v) { return static_cast<std::uint32_t>(((v % m) + m) % m); };
    for (;;) {
        std::vector<std::uint32_t> s = top;
        for (const auto& [g, positive] : word) {
            const long long x = s[g - 1];
            const long long y = s[g];
            if (positive) {
                s[g - 1] = static_cast<std::uint32_t>(y);
                s[g] = mod(2 * y - x);
            } else {
                s[g - 1] = mod(2 * x - y);
                s[g] = static_cast<std::uint32_t>(x);
            }
        }
        if (s == top) {
            out.push_back(top);
        }
        std::size_t i = strands;
        bool carry = true;
        while (carry && i > 0) {
            --i;
            if (++top[i] < n) {
                carry = false;
            } else {
                top[i] = 0;
            }
        }
        if (carry) {
            return out;
        }
    }
}

inline std::vector<Letter> torus_letters(unsigned p, unsigned q) {
    std::vector<Letter> w;
    for (unsigned k = 0; k < q; ++k) {
        for (unsigned i = 1; i < p; ++i) {
            w.emplace_back(i, true);
        }
    }
    return w;
}

using Weights = std::vector<std::vector<std::uint64_t>>;

// Isomorphism by trying every permutation; only for tiny graphs.
inline bool iso_by_permutation(const Weights& a, const Weights& b) {
    if (a.size() != b.size()) {
        return false;
    }
    std::vector<std::size_t> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i) {
            for (std::size_t j = 0; j < a.size() && ok; ++j) {
                ok = a[i][j] == b[perm[i]][perm[j]];
            }
        }
        if (ok) {
            return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Coloring quiver weights straight from the definition: for every coloring f
// and every (a, b), count where x -> a x + b sends f.
inline Weights dihedral_quiver(const std::vector<std::vector<std::uint32_t>>& colorings, std::uint64_t n) {
    Weights w(colorings.size(), std::vector<std::uint64_t>(colorings.size(), 0));
    for (std::size_t f = 0; f < colorings.size(); ++f) {
        for (std::uint64_t a = 0; a < n; ++a) {
            for (std::uint64_t b = 0; b < n; ++b) {
                std::vector<std::uint32_t> img(colorings[f].size());
                for (std::size_t i = 0; i < img.size(); ++i) {
                    img[i] = static_cast<std::uint32_t>((a * colorings[f][i] + b) % n);
                }
                const auto it = std::find(colorings.begin(), colorings.end(), img);
                if (it != colorings.end()) {
                    ++w[f][static_cast<std::size_t>(it - colorings.begin())];
                }
            }
        }
    }
    return w;
}

}  // namespace oracle
