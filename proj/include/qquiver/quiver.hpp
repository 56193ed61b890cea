#pragma once

// Coloring quivers: vertices are colorings, and each endomorphism phi adds
// one edge f -> phi∘f. Weights are stored as sorted sparse rows because
// these quivers are block-dense but globally sparse.
//
// QuiverForm is the closed-form description used for comparison: a list of
// block families, each m disjoint copies of the complete digraph K_s with
// every ordered pair (loops included) carrying weight w, plus cross edges of
// weight d from every vertex of one family to every vertex of another.

#include "qquiver/coloring.hpp"
#include "qquiver/counting.hpp"
#include "qquiver/quandle.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qquiver {

struct WeightedEdge {
    std::size_t target = 0;
    std::uint64_t weight = 0;

    bool operator==(const WeightedEdge&) const = default;
};

class WeightedQuiver {
public:
    WeightedQuiver() = default;
    explicit WeightedQuiver(std::size_t vertices) : rows_(vertices) {}

    /// Rows may be unsorted and contain repeated targets; they are merged
    /// and zero weights dropped.
    static WeightedQuiver from_rows(std::vector<std::vector<WeightedEdge>> rows);

    std::size_t size() const noexcept { return rows_.size(); }
    const std::vector<WeightedEdge>& row(std::size_t f) const { return rows_.at(f); }
    std::uint64_t weight(std::size_t f, std::size_t g) const;
    std::uint64_t row_sum(std::size_t f) const;
    std::uint64_t total_weight() const;
    std::size_t edge_count() const;  // nonzero ordered pairs

    WeightedQuiver transpose() const;
    /// Vertex v of this quiver becomes vertex perm[v].
    WeightedQuiver relabeled(const std::vector<std::size_t>& perm) const;

    const std::optional<std::vector<StrandState>>& labels() const noexcept { return labels_; }
    void set_labels(std::vector<StrandState> labels);
    std::string vertex_name(std::size_t v) const;

    bool operator==(const WeightedQuiver&) const = default;

private:
    std::vector<std::vector<WeightedEdge>> rows_;
    std::optional<std::vector<StrandState>> labels_;
};

enum class EndoSource { affine, brute };

std::string_view to_string(EndoSource s);
std::optional<EndoSource> parse_endo_source(std::string_view text);

/// End(R_n) from the affine family or from exhaustive search (capped).
std::vector<Endomorphism> dihedral_endomorphisms(std::uint64_t n, EndoSource source,
                                                 std::uint64_t brute_cap = kDefaultEndomorphismCap);

/// W[f][g] = |{phi in endos : phi∘f = g}|. Throws ConsistencyError with a
/// witness if some phi∘f is not in the set, and std::invalid_argument if
/// the set was not enumerated or an endomorphism acts on the wrong quandle.
/// A subset of End(R_n) is accepted as long as it keeps the set closed.
WeightedQuiver build_quiver(const ColoringSet& colorings, const std::vector<Endomorphism>& endos,
                            std::size_t threads = 0);

struct QuiverInvariants {
    bool row_sum = true;                  // every row sums to the endomorphism count
    bool trivial_block = true;            // trivial -> trivial weights all equal n
    bool no_trivial_to_nontrivial = true;
    std::string witness;                  // first violation, if any

    bool all() const noexcept { return row_sum && trivial_block && no_trivial_to_nontrivial; }
};

/// `trivial_weight` is the expected weight between trivial colorings; pass
/// nullopt to skip that check (e.g. for subset quivers).
QuiverInvariants check_quiver_invariants(const WeightedQuiver& q, const ColoringSet& colorings,
                                         std::uint64_t endo_count,
                                         std::optional<std::uint64_t> trivial_weight);

struct BlockFamily {
    std::uint64_t size = 0;
    std::uint64_t weight = 0;
    std::uint64_t multiplicity = 1;

    bool operator==(const BlockFamily&) const = default;
};

struct CrossEdge {
    std::size_t source = 0;  // family index
    std::size_t target = 0;
    std::uint64_t weight = 0;

    bool operator==(const CrossEdge&) const = default;
};

struct QuiverForm {
    std::vector<BlockFamily> families;
    std::vector<CrossEdge> cross;

    bool empty() const noexcept { return families.empty(); }
    std::uint64_t vertex_count() const;
    std::uint64_t block_count() const;
    std::string to_string() const;

    bool operator==(const QuiverForm&) const = default;
};

/// One block (K_s, w). Throws std::invalid_argument for s = 0 or w = 0.
QuiverForm complete_form(std::uint64_t s, std::uint64_t w);
/// g1 and g2 side by side plus weight-d edges from every vertex of g2 to
/// every vertex of g1. Joining with an empty form returns the other one.
QuiverForm join_form(const QuiverForm& g1, const QuiverForm& g2, std::uint64_t d);
/// m disjoint copies of a form without cross edges.
QuiverForm disjoint_union(const QuiverForm& g, std::uint64_t m);

/// Shape for a torus-link quiver over R_n with N colorings, chosen by N:
/// n, pn, 2^(p-1) n or n^p (n prime). nullopt when N fits none of them.
std::optional<QuiverForm> quiver_form_for_count(std::uint32_t p, std::uint64_t n, const BigInt& count);

/// Predicted quiver for T(p,q) over R_n. Throws AmbiguousPrediction for
/// ambiguous count cells and UnsupportedParameters for N = n^p with n
/// composite.
QuiverForm predict_quiver(std::uint32_t p, std::uint32_t q, std::uint64_t n);

/// Block-major vertex order: family by family, copy by copy.
WeightedQuiver realize(const QuiverForm& form);

enum class IsoVerdict { isomorphic, not_isomorphic, undecided };

std::string_view to_string(IsoVerdict v);

struct IsoResult {
    IsoVerdict verdict = IsoVerdict::undecided;
    std::vector<std::size_t> mapping;  // vertex of A -> vertex of B
    std::uint64_t expansions = 0;
    std::string reason;

    explicit operator bool() const noexcept { return verdict == IsoVerdict::isomorphic; }
};

inline constexpr std::uint64_t kDefaultIsoBudget = 10'000'000;

/// Exact weighted-digraph isomorphism: colour refinement on loop weight and
/// out/in weight multisets, then backtracking inside refinement classes.
/// Exceeding `budget` candidate expansions yields IsoVerdict::undecided.
IsoResult isomorphic(const WeightedQuiver& a, const WeightedQuiver& b, std::uint64_t budget = kDefaultIsoBudget);

struct DetectedBlock {
    std::vector<std::size_t> vertices;
    std::optional<std::uint64_t> weight;  // set when every ordered pair inside has the same weight
};

struct BlockEdge {
    std::size_t source = 0;  // block index
    std::size_t target = 0;
    std::optional<std::uint64_t> weight;  // set when uniform over all pairs
    std::uint64_t total = 0;
};

struct BlockSummary {
    std::vector<DetectedBlock> blocks;  // ordered by smallest vertex
    std::vector<BlockEdge> edges;       // sorted by (source, target)
};

/// Blocks are connected components of the "edges both ways" relation.
BlockSummary detect_blocks(const WeightedQuiver& q);

struct QuiverCheckOptions {
    std::uint64_t max_vertices = 2000;
    std::uint64_t iso_budget = kDefaultIsoBudget;
    std::size_t threads = 0;
};

/// For every cell, builds the full quiver and compares it with the predicted
/// shape (for ambiguous cells, the shape of the computed count). Sets
/// SweepCell::quiver; a failed comparison or invariant turns the cell into a
/// mismatch.
void attach_quiver_checks(SweepReport& report, const QuiverCheckOptions& options = {});

}  // namespace qquiver
