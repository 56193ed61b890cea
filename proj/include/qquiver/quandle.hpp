#pragma once

// Finite quandles given by Cayley tables, the dihedral family R_n, axiom
// checking, and endomorphism enumeration.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qquiver {

using Element = std::uint32_t;

/// A finite set {0, ..., m-1} with a binary operation stored as an m x m
/// table, op(x, y) = table[x * m + y]. The table is not required to satisfy
/// the quandle axioms (use verify_quandle_axioms); the inverse operation
/// x *̄ y is available only when every right translation is a permutation.
class FiniteQuandle {
public:
    FiniteQuandle() = default;
    FiniteQuandle(std::size_t size, std::vector<Element> table);

    std::size_t size() const noexcept { return size_; }

    Element op(Element x, Element y) const { return table_[index(x, y)]; }
    // x *̄ y, the unique z with z * y == x.
    Element inv_op(Element x, Element y) const;
    bool has_inverse() const noexcept { return !inverse_.empty(); }

    const std::vector<Element>& table() const noexcept { return table_; }
    // Row-major x *̄ y table; empty when has_inverse() is false.
    const std::vector<Element>& inverse_table() const noexcept { return inverse_; }
    bool contains(Element x) const noexcept { return x < size_; }

    // Returns a copy with op(x, y) replaced; used to build broken tables.
    FiniteQuandle with_entry(Element x, Element y, Element value) const;

private:
    std::size_t index(Element x, Element y) const;
    void build_inverse();

    std::size_t size_ = 0;
    std::vector<Element> table_;
    std::vector<Element> inverse_;
};

/// Dihedral quandle R_n: Z_n with x * y = 2y - x (mod n). It is a kei, so
/// the inverse operation coincides with the operation.
class DihedralQuandle {
public:
    explicit DihedralQuandle(std::uint64_t n);

    std::uint64_t modulus() const noexcept { return n_; }
    Element op(Element x, Element y) const;
    FiniteQuandle table() const;

private:
    std::uint64_t n_;
};

/// (2y - x) mod n; throws std::domain_error if x or y is outside [0, n).
Element dihedral_op(std::uint64_t n, Element x, Element y);

struct AxiomCheck {
    bool passed = true;
    // First counterexample. Distributivity uses (x, y, z); invertibility
    // uses (y, z1, z2) with z1 * y == z2 * y; idempotency uses (x, x, x * x).
    std::optional<std::array<Element, 3>> witness;
};

struct AxiomReport {
    AxiomCheck distributivity;
    AxiomCheck invertibility;
    AxiomCheck idempotency;

    bool all_passed() const noexcept {
        return distributivity.passed && invertibility.passed && idempotency.passed;
    }
    std::string to_string() const;
};

AxiomReport verify_quandle_axioms(const FiniteQuandle& q);

/// (x * y) * y == x for all pairs.
bool is_kei(const FiniteQuandle& q);

struct AffineParams {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    bool operator==(const AffineParams&) const = default;
};

/// A quandle endomorphism stored as its image table. Affine endomorphisms of
/// R_n also remember their (a, b) with phi(x) = a x + b.
class Endomorphism {
public:
    static Endomorphism affine(std::uint64_t n, std::uint64_t a, std::uint64_t b);
    static Endomorphism from_images(std::vector<Element> images);

    Element operator()(Element x) const { return images_[x]; }
    const std::vector<Element>& images() const noexcept { return images_; }
    std::size_t domain_size() const noexcept { return images_.size(); }
    const std::optional<AffineParams>& affine_params() const noexcept { return affine_; }

    bool operator==(const Endomorphism& other) const { return images_ == other.images_; }
    bool operator<(const Endomorphism& other) const { return images_ < other.images_; }

    std::string to_string() const;

private:
    std::vector<Element> images_;
    std::optional<AffineParams> affine_;
};

/// phi(x * y) == phi(x) * phi(y) for every pair.
bool is_homomorphism(const FiniteQuandle& q, const std::vector<Element>& images);

/// outer ∘ inner. Affine parameters compose as (a1 a2, a1 b2 + b1).
Endomorphism compose(const Endomorphism& outer, const Endomorphism& inner);

/// The n^2 maps x -> a x + b of R_n in (a, b) lexicographic order, each
/// checked against the homomorphism equation (ConsistencyError otherwise).
std::vector<Endomorphism> affine_endomorphisms(std::uint64_t n);

inline constexpr std::uint64_t kDefaultEndomorphismCap = 1'000'000;

/// Every homomorphism Q -> Q, by backtracking over image assignments in
/// element order (output is image-table lexicographic). Throws CapExceeded
/// when size^size exceeds `cap`.
std::vector<Endomorphism> brute_force_endomorphisms(const FiniteQuandle& q,
                                                    std::uint64_t cap = kDefaultEndomorphismCap);

/// Comparison of the affine family against exhaustive search on R_n.
struct EndomorphismAudit {
    std::uint64_t n = 0;
    std::size_t affine_count = 0;
    std::size_t brute_force_count = 0;
    bool affine_subset = false;               // every affine map was found
    std::vector<Endomorphism> surplus;        // found by search, not affine

    bool complete() const noexcept { return affine_subset && surplus.empty(); }
    std::string to_string() const;
};

EndomorphismAudit audit_endomorphisms(std::uint64_t n, std::uint64_t cap = kDefaultEndomorphismCap);

}  // namespace qquiver
