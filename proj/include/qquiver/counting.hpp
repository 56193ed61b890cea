#pragma once

// Closed-form coloring counts N = |Hom(Q(T(p,q)), R_n)| for odd prime p,
// and a grid sweep that checks them against both computational backends.
//
// The general-p rule depends only on r = q mod 2p, gcd(n, p) and the parity
// of n:
//   r = 0                      N = n^p
//   r odd, r != p              N = n
//   r even, r != 0             N = n if gcd(n,p) = 1 or n = p; pn if n >= 2p, p | n
//   r = p                      N = n if n odd; 2^(p-1) n if n even
// The worked p = 5 and p = 7 tables disagree with this rule in a few cells
// (n = p with r even; the p = 7 "n = 7k" row for r = p). Those cells are
// labelled ambiguous and carry both candidate values.

#include "qquiver/modular_linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qquiver {

enum class CountCase {
    free,          // n^p
    trivial_only,  // n
    gcd_even,      // n * gcd(n, p) family
    half_period,   // 2^(p-1) n or n
    ambiguous,
};

std::string_view to_string(CountCase c);
std::optional<CountCase> parse_count_case(std::string_view text);

struct CountPrediction {
    std::uint32_t p = 0;
    std::uint32_t q = 0;
    std::uint64_t n = 0;

    BigInt count;                       // general-p rule
    std::optional<BigInt> alternative;  // conflicting tabulated value (ambiguous only)
    CountCase label = CountCase::trivial_only;
    CountCase regime = CountCase::trivial_only;  // residue class, never ambiguous

    std::uint32_t residue = 0;  // q mod 2p
    std::uint64_t gcd_np = 1;
    bool n_even = false;
    std::string note;  // which statements conflict, for ambiguous cells

    bool ambiguous() const noexcept { return label == CountCase::ambiguous; }
    // count first, then alternative if present.
    std::vector<BigInt> candidates() const;
};

bool is_prime(std::uint64_t v);

/// Throws UnsupportedParameters unless p is an odd prime, InvalidModulus for n < 2.
CountPrediction predict_count(std::uint32_t p, std::uint32_t q, std::uint64_t n);

enum class CellStatus { match, ambiguous_resolved, mismatch };

std::string_view to_string(CellStatus s);
std::optional<CellStatus> parse_cell_status(std::string_view text);

struct SweepCell {
    std::uint32_t p = 0;
    std::uint32_t q = 0;
    std::uint64_t n = 0;

    BigInt predicted;
    std::optional<BigInt> alternative;
    CountCase label = CountCase::trivial_only;

    std::optional<BigInt> linear;
    std::optional<BigInt> oracle;
    BigInt computed;
    CellStatus status = CellStatus::match;
    bool oracle_skipped = false;  // requested but above the oracle cap
    std::string detail;

    // Filled by attach_quiver_checks: "isomorphic", "not-isomorphic",
    // "undecided", "no-prediction", "too-large" or "invariant-violation".
    std::optional<std::string> quiver;

    bool operator==(const SweepCell&) const = default;
};

struct SweepReport {
    std::vector<SweepCell> cells;  // sorted by (p, q, n)

    std::size_t count(CellStatus s) const;
    bool has_mismatch() const;
    bool has_ambiguous() const;
    bool cap_exceeded() const;

    bool operator==(const SweepReport&) const = default;
};

struct GridSpec {
    std::vector<std::uint32_t> p;
    std::vector<std::uint32_t> q;
    std::vector<std::uint64_t> n;
};

struct VerifyOptions {
    bool run_linear = true;
    bool run_oracle = true;
    std::uint64_t oracle_cap = 10'000'000;
    std::size_t threads = 0;  // 0: default_thread_count()
    // Optional extra filter: skip cells where n^p exceeds this (0 = none).
    std::uint64_t max_colorings_space = 0;
};

/// Runs every (p, q, n) cell of the grid. Throws UnsupportedParameters if a
/// p is not an odd prime; otherwise failures are recorded in the report.
SweepReport verify_counts(const GridSpec& grid, const VerifyOptions& options = {});

}  // namespace qquiver
