#include "qquiver/counting.hpp"

#include "qquiver/braid.hpp"
#include "qquiver/coloring.hpp"
#include "qquiver/errors.hpp"
#include "qquiver/quandle.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <utility>

namespace qquiver {

namespace {

constexpr std::array<std::pair<CountCase, std::string_view>, 5> kCaseNames{{
    {CountCase::free, "free"},
    {CountCase::trivial_only, "trivial-only"},
    {CountCase::gcd_even, "gcd-even"},
    {CountCase::half_period, "half-period"},
    {CountCase::ambiguous, "ambiguous"},
}};

constexpr std::array<std::pair<CellStatus, std::string_view>, 3> kStatusNames{{
    {CellStatus::match, "match"},
    {CellStatus::ambiguous_resolved, "ambiguous-resolved"},
    {CellStatus::mismatch, "mismatch"},
}};

BigInt power(std::uint64_t base, std::uint32_t exponent) {
    BigInt out = 1;
    for (std::uint32_t i = 0; i < exponent; ++i) {
        out *= base;
    }
    return out;
}

template <class T>
std::vector<T> sorted_unique(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

std::string_view to_string(CountCase c) {
    for (const auto& [value, name] : kCaseNames) {
        if (value == c) {
            return name;
        }
    }
    return "unknown";
}

std::optional<CountCase> parse_count_case(std::string_view text) {
    for (const auto& [value, name] : kCaseNames) {
        if (name == text) {
            return value;
        }
    }
    return std::nullopt;
}

std::string_view to_string(CellStatus s) {
    for (const auto& [value, name] : kStatusNames) {
        if (value == s) {
            return name;
        }
    }
    return "unknown";
}

std::optional<CellStatus> parse_cell_status(std::string_view text) {
    for (const auto& [value, name] : kStatusNames) {
        if (name == text) {
            return value;
        }
    }
    return std::nullopt;
}

std::vector<BigInt> CountPrediction::candidates() const {
    std::vector<BigInt> out{count};
    if (alternative) {
        out.push_back(*alternative);
    }
    return out;
}

bool is_prime(std::uint64_t v) {
    if (v < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            return false;
        }
    }
    return true;
}

CountPrediction predict_count(std::uint32_t p, std::uint32_t q, std::uint64_t n) {
    if (p < 3 || !is_prime(p)) {
        throw UnsupportedParameters("closed-form counts need an odd prime p, got " + std::to_string(p));
    }
    if (n < 2) {
        throw InvalidModulus("modulus must be at least 2, got " + std::to_string(n));
    }

    CountPrediction out;
    out.p = p;
    out.q = q;
    out.n = n;
    out.residue = q % (2 * p);
    out.gcd_np = std::gcd<std::uint64_t>(n, p);
    out.n_even = n % 2 == 0;

    const std::uint32_t r = out.residue;
    if (r == 0) {
        out.regime = CountCase::free;
        out.count = power(n, p);
    } else if (r == p) {
        out.regime = CountCase::half_period;
        out.count = out.n_even ? power(2, p - 1) * n : BigInt(n);
    } else if (r % 2 == 1) {
        out.regime = CountCase::trivial_only;
        out.count = n;
    } else {
        out.regime = CountCase::gcd_even;
        out.count = (out.gcd_np == 1 || n == p) ? BigInt(n) : BigInt(n) * p;
    }
    out.label = out.regime;

    if (out.regime == CountCase::gcd_even && n == p) {
        // Worked tables: N = n * gcd(n, p), i.e. pn at n = p.
        out.alternative = BigInt(n) * p;
        out.note = "q even with n = p: general rule gives n, worked tables give n*gcd(n,p)";
    }
    if (out.regime == CountCase::half_period && p == 7) {
        // p = 7 table row for q = p: N = 2^6 n when n = 7k (k >= 2), N = n when
        // gcd(7, n) = 1 or n = 7.
        const BigInt tabulated = (n % 7 == 0 && n >= 14) ? power(2, 6) * n : BigInt(n);
        if (tabulated != out.count) {
            out.alternative = tabulated;
            out.note = "q = p for p = 7: general rule depends on parity of n, the p = 7 table on 7 | n";
        }
    }
    if (out.alternative) {
        out.label = CountCase::ambiguous;
    }
    return out;
}

std::size_t SweepReport::count(CellStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [s](const SweepCell& c) { return c.status == s; }));
}

bool SweepReport::has_mismatch() const { return count(CellStatus::mismatch) > 0; }

bool SweepReport::has_ambiguous() const { return count(CellStatus::ambiguous_resolved) > 0; }

bool SweepReport::cap_exceeded() const {
    return std::any_of(cells.begin(), cells.end(), [](const SweepCell& c) { return c.oracle_skipped; });
}

namespace {

bool within(std::uint64_t base, std::uint32_t exponent, std::uint64_t limit) {
    return power(base, exponent) <= limit;
}

void classify_cell(SweepCell& cell) {
    if (cell.linear && cell.oracle && *cell.linear != *cell.oracle) {
        cell.status = CellStatus::mismatch;
        cell.detail = "backend disagreement: linear " + to_decimal(*cell.linear) + ", oracle " +
                      to_decimal(*cell.oracle);
        return;
    }
    if (cell.label != CountCase::ambiguous) {
        if (cell.computed == cell.predicted) {
            cell.status = CellStatus::match;
        } else {
            cell.status = CellStatus::mismatch;
            cell.detail = "predicted " + to_decimal(cell.predicted) + ", computed " + to_decimal(cell.computed);
        }
        return;
    }
    if (cell.computed == cell.predicted) {
        cell.status = CellStatus::ambiguous_resolved;
        cell.detail = "computation selects the general rule (" + to_decimal(cell.predicted) + ")";
    } else if (cell.alternative && cell.computed == *cell.alternative) {
        cell.status = CellStatus::ambiguous_resolved;
        cell.detail = "computation selects the tabulated value (" + to_decimal(*cell.alternative) + ")";
    } else {
        cell.status = CellStatus::mismatch;
        cell.detail = "computed " + to_decimal(cell.computed) + " matches neither candidate";
    }
}

}  // namespace

SweepReport verify_counts(const GridSpec& grid, const VerifyOptions& options) {
    const auto ps = sorted_unique(grid.p);
    const auto qs = sorted_unique(grid.q);
    const auto ns = sorted_unique(grid.n);
    for (auto p : ps) {
        if (p < 3 || !is_prime(p)) {
            throw UnsupportedParameters("verify needs odd prime p, got " + std::to_string(p));
        }
    }
    for (auto n : ns) {
        if (n < 2) {
            throw InvalidModulus("modulus must be at least 2, got " + std::to_string(n));
        }
    }

    SweepReport report;
    for (auto p : ps) {
        for (auto q : qs) {
            const TorusLinkSpec spec{p, q};
            const BraidWord word = torus_braid(spec);
            std::optional<LinearColoringSystem> system;
            if (options.run_linear) {
                system.emplace(word, spec.to_string());
            }
            for (auto n : ns) {
                if (options.max_colorings_space != 0 && !within(n, p, options.max_colorings_space)) {
                    continue;
                }
                const CountPrediction prediction = predict_count(p, q, n);
                SweepCell cell;
                cell.p = p;
                cell.q = q;
                cell.n = n;
                cell.predicted = prediction.count;
                cell.alternative = prediction.alternative;
                cell.label = prediction.label;

                if (system) {
                    cell.linear = system->count(n);
                }
                if (options.run_oracle) {
                    if (within(n, p, options.oracle_cap)) {
                        cell.oracle = BigInt(count_colorings_oracle(word, DihedralQuandle(n).table(),
                                                                    options.oracle_cap, options.threads));
                    } else {
                        cell.oracle_skipped = true;
                    }
                }
                if (cell.linear) {
                    cell.computed = *cell.linear;
                } else if (cell.oracle) {
                    cell.computed = *cell.oracle;
                } else {
                    cell.status = CellStatus::mismatch;
                    cell.detail = "no backend produced a count";
                    report.cells.push_back(std::move(cell));
                    continue;
                }
                classify_cell(cell);
                report.cells.push_back(std::move(cell));
            }
        }
    }
    return report;
}

}  // namespace qquiver
