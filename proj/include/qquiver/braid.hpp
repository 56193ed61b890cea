#pragma once

// Braid words, torus braids, and crossing-by-crossing color propagation.
//
// Crossing convention (strand positions are 1-based, letters apply top to
// bottom):
//   positive sigma_i:  (x, y) at positions (i, i+1)  ->  (y, x * y)
//     the strand at i passes under and leaves at i+1 colored under * over.
//   negative sigma_i:  (x, y)  ->  (y *̄ x, x)
//     the exact inverse: the strand at i passes over to i+1 and the under
//     strand leaves at i colored under *̄ over.
// The positive rule is the one that reproduces the published T(5,q) and
// T(7,q) counting tables; the closure identifies bottom position i with top
// position i.

#include "qquiver/modular_linalg.hpp"
#include "qquiver/quandle.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qquiver {

struct Crossing {
    std::uint32_t generator = 1;  // sigma_generator, 1-based
    bool positive = true;

    bool operator==(const Crossing&) const = default;
};

class BraidWord {
public:
    BraidWord() = default;
    BraidWord(std::size_t strands, std::vector<Crossing> letters);

    std::size_t strands() const noexcept { return strands_; }
    const std::vector<Crossing>& letters() const noexcept { return letters_; }
    std::size_t length() const noexcept { return letters_.size(); }

    BraidWord concat(const BraidWord& tail) const;
    // "s1 s2 -s3"; the empty word renders as "".
    std::string to_string() const;

    bool operator==(const BraidWord&) const = default;

private:
    std::size_t strands_ = 1;
    std::vector<Crossing> letters_;
};

struct TorusLinkSpec {
    std::uint32_t p = 2;  // strands
    std::uint32_t q = 0;  // power of the cycle sigma_1 ... sigma_{p-1}

    std::string to_string() const;
    bool operator==(const TorusLinkSpec&) const = default;
};

/// (sigma_1 ... sigma_{p-1})^q; throws std::invalid_argument for p < 2.
BraidWord torus_braid(const TorusLinkSpec& spec);

/// Parsed link argument: either "torus:p,q" or an explicit word.
struct LinkInput {
    BraidWord word;
    std::optional<TorusLinkSpec> torus;
    std::string label;
};

/// Parses "torus:p,q" or a word like "s1 -s2 s1 -s2". For explicit words the
/// strand count is `strands` when given, otherwise one more than the largest
/// generator index. Throws std::invalid_argument on malformed input.
LinkInput parse_link(std::string_view text, std::optional<std::size_t> strands = std::nullopt);
BraidWord parse_braid_word(std::string_view text, std::optional<std::size_t> strands = std::nullopt);

using StrandState = std::vector<Element>;

struct PropagationResult {
    StrandState bottom;
    // Cross-sections: sections[0] is the top, sections[k] the state after
    // letter k. Together they list every arc color of the braid.
    std::vector<StrandState> sections;
};

PropagationResult propagate(const BraidWord& word, const FiniteQuandle& q, const StrandState& top);

/// In-place propagation without the arc log; no validation of colors.
void propagate_in_place(const BraidWord& word, const FiniteQuandle& q, StrandState& state);

/// Integer matrix M with bottom = M * top for the dihedral rule
/// (x, y) -> (y, 2y - x) and its inverse, composed letter by letter.
IntMatrix propagation_matrix(const BraidWord& word);

}  // namespace qquiver
