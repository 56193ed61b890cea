#pragma once

// The coloring set Hom(Q(closure of a braid), X), computed two ways:
//   - oracle: try every top-strand assignment and keep those that close up;
//   - linear: for dihedral targets the braid acts linearly, so colorings are
//     the kernel of (M - I) over Z_n, solved through one Smith normal form.
// Both backends return colorings in lexicographic order of the top vector.

#include "qquiver/braid.hpp"
#include "qquiver/modular_linalg.hpp"
#include "qquiver/quandle.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qquiver {

enum class ColoringClass { trivial, nontrivial };

/// Trivial iff every entry is equal (constant colorings; the empty and
/// single-strand vectors count as trivial).
ColoringClass classify(std::span<const Element> top);

struct Coloring {
    StrandState top;
    std::size_t id = 0;

    bool trivial() const { return classify(top) == ColoringClass::trivial; }
};

class ColoringSet {
public:
    ColoringSet() = default;
    // `tops` must be sorted and duplicate free. When absent the set is
    // count-only (enumeration skipped because of a cap).
    ColoringSet(std::string link, std::size_t strands, std::uint64_t quandle_size, BigInt count,
                std::optional<std::vector<StrandState>> tops);

    const std::string& link() const noexcept { return link_; }
    std::size_t strands() const noexcept { return strands_; }
    std::uint64_t modulus() const noexcept { return quandle_size_; }
    const BigInt& count() const noexcept { return count_; }
    bool enumerated() const noexcept { return enumerated_; }

    const std::vector<Coloring>& colorings() const noexcept { return colorings_; }
    std::size_t size() const noexcept { return colorings_.size(); }
    const Coloring& operator[](std::size_t i) const { return colorings_[i]; }

    // Constant colorings; equals the quandle size for every link.
    std::uint64_t trivial_count() const noexcept { return trivial_count_; }
    const std::vector<std::size_t>& trivial_indices() const noexcept { return trivial_; }
    const std::vector<std::size_t>& nontrivial_indices() const noexcept { return nontrivial_; }

    /// Index of `top` in canonical order, if it is a coloring.
    std::optional<std::size_t> find(std::span<const Element> top) const;

    /// Canonical top vectors, for list comparisons between backends.
    std::vector<StrandState> tops() const;

private:
    std::string link_;
    std::size_t strands_ = 0;
    std::uint64_t quandle_size_ = 0;
    BigInt count_ = 0;
    bool enumerated_ = false;
    std::uint64_t trivial_count_ = 0;
    std::vector<Coloring> colorings_;
    std::vector<std::size_t> trivial_;
    std::vector<std::size_t> nontrivial_;
};

inline constexpr std::uint64_t kDefaultOracleCap = 10'000'000;

/// Brute force over all |Q|^strands top assignments. Throws CapExceeded if
/// that number is above `cap`. `threads` = 0 picks default_thread_count().
ColoringSet enumerate_colorings_oracle(const BraidWord& word, const FiniteQuandle& q,
                                       std::uint64_t cap = kDefaultOracleCap, std::size_t threads = 0,
                                       std::string link_label = {});

/// Same scan as the oracle, returning only the number of colorings.
std::uint64_t count_colorings_oracle(const BraidWord& word, const FiniteQuandle& q,
                                     std::uint64_t cap = kDefaultOracleCap, std::size_t threads = 0);

/// Closure system (M - I) for a braid, factored once and reusable for any
/// modulus.
class LinearColoringSystem {
public:
    explicit LinearColoringSystem(BraidWord word, std::string link_label = {});

    const BraidWord& word() const noexcept { return word_; }
    const IntMatrix& propagation() const noexcept { return propagation_; }
    const IntMatrix& system() const noexcept { return system_; }
    const SnfResult& snf() const noexcept { return snf_; }

    BigInt count(std::uint64_t n) const;
    /// Colorings over R_n. When the count is above `cap` the result is
    /// count-only instead of throwing.
    ColoringSet colorings(std::uint64_t n, std::uint64_t cap = kDefaultEnumerationCap) const;

private:
    BraidWord word_;
    std::string label_;
    IntMatrix propagation_;
    IntMatrix system_;
    SnfResult snf_;
};

ColoringSet enumerate_colorings_linear(const TorusLinkSpec& spec, std::uint64_t n,
                                       std::uint64_t cap = kDefaultEnumerationCap);
ColoringSet enumerate_colorings_linear(const BraidWord& word, std::uint64_t n,
                                       std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace qquiver
